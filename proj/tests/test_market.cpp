// Copyright 2026 The qgame Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qgame/market/io.hpp"
#include "qgame/market/strategy.hpp"
#include "qgame/market/transaction.hpp"
#include "qgame/market/wigner.hpp"
#include "qgame/random.hpp"

using namespace qgame;
using namespace qgame::market;

namespace {

constexpr double kPi = std::numbers::pi;

const GridSpec kGrid{-20.0, 20.0, 256};

WaveFunction1D unit_gaussian(const GridSpec &g = kGrid) { return make_gaussian_strategy(0.0, 1.0, g); }

/// Φ(x) from erfc; independent of the grid code.
double normal_cdf(double x, double sigma) { return 0.5 * std::erfc(-x / (sigma * std::numbers::sqrt2)); }

/// Direct O(n) sum for ψ̃ at an arbitrary p.
Complex direct_momentum(const WaveFunction1D &w, double p) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        acc += std::polar(1.0, -p * w.node(j) / w.hbar) * w.samples[static_cast<Eigen::Index>(j)];
    }
    return acc * w.grid.dq() / std::sqrt(2 * kPi * w.hbar);
}

/// Superposition of a few displaced Gaussians with random phases.
WaveFunction1D random_mixture(Rng &rng, const GridSpec &g) {
    WaveFunction1D w{g, Rep::q, 1.0, Vector::Zero(static_cast<Eigen::Index>(g.n_points))};
    const int parts = 1 + static_cast<int>(uniform01(rng) * 3);
    for (int k = 0; k < parts; ++k) {
        const double c = 4.0 * (uniform01(rng) - 0.5);
        const double s = 0.6 + uniform01(rng);
        const Complex a = std::polar(uniform01(rng) + 0.1, 2 * kPi * uniform01(rng));
        for (std::size_t j = 0; j < g.n_points; ++j) {
            const double x = (g.q(j) - c) / s;
            w.samples[static_cast<Eigen::Index>(j)] += a * std::exp(-0.5 * x * x);
        }
    }
    return normalized(w);
}

} // namespace

// ---------------------------------------------------------------------------
// Grid and strategies

TEST(Grid, Validation) {
    EXPECT_NO_THROW(kGrid.validate());
    EXPECT_THROW((GridSpec{1.0, -1.0, 256}.validate()), ValidationError);
    EXPECT_THROW((GridSpec{-1.0, 1.0, 32}.validate()), ValidationError);
    EXPECT_THROW((GridSpec{-1.0, 1.0, 100}.validate()), ValidationError);
    // momentum window spans 2πn/L
    EXPECT_NEAR(kGrid.dp(1.0) * 256, 2 * kPi * 256 / 40.0, 1e-12);
    EXPECT_NEAR(kGrid.p(128, 1.0), 0.0, 0.0);
    const GridSpec sd = GridSpec::self_dual(256);
    EXPECT_NEAR(sd.dq(), sd.dp(1.0), 1e-15);
}

TEST(Gaussian, MomentsAndSymmetry) {
    const WaveFunction1D w = unit_gaussian();
    EXPECT_NEAR(w.norm2(), 1.0, 1e-10);
    EXPECT_NEAR(w.mean(), 0.0, 1e-8);
    EXPECT_NEAR(w.variance(), 0.5, 1e-10);
    const std::size_t c = kGrid.n_points / 2;
    for (std::size_t m = 1; m < c; ++m) {
        EXPECT_NEAR(std::abs(w.samples[static_cast<Eigen::Index>(c + m)] - w.samples[static_cast<Eigen::Index>(c - m)]),
                    0.0, 1e-12);
    }
}

TEST(Gaussian, CenteringAndOffset) {
    EXPECT_NEAR(make_gaussian_strategy(3.0, 1.0, kGrid).mean(), 0.0, 1e-8);
    GaussianOptions raw;
    raw.center = false;
    EXPECT_NEAR(make_gaussian_strategy(3.0, 1.0, kGrid, raw).mean(), 3.0, 1e-8);
    GaussianOptions shifted;
    shifted.offset = -1.5;
    EXPECT_NEAR(make_gaussian_strategy(3.0, 1.0, kGrid, shifted).mean(), -1.5, 1e-8);
}

TEST(Gaussian, TruncationErrors) {
    try {
        make_gaussian_strategy(0.0, 1.0, GridSpec{-3.0, 3.0, 256});
        FAIL() << "expected truncation";
    } catch (const TruncationError &e) {
        EXPECT_GT(e.boundary_mass, 0.0);
    }
    // far too coarse: the momentum window clips the state
    EXPECT_THROW(make_gaussian_strategy(0.0, 1.0, GridSpec{-200.0, 200.0, 64}), TruncationError);
    EXPECT_THROW(make_gaussian_strategy(0.0, -1.0, kGrid), ValidationError);
}

// ---------------------------------------------------------------------------
// Fourier transform

TEST(Fourier, ParsevalAndRoundTrip) {
    Rng rng = make_stream(51, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const WaveFunction1D w = random_mixture(rng, kGrid);
        const WaveFunction1D wp = to_momentum(w);
        EXPECT_NEAR(wp.norm2(), 1.0, 1e-10);
        const WaveFunction1D back = to_position(wp);
        EXPECT_LE(max_abs_diff(back.samples, w.samples), 1e-10);
    }
}

TEST(Fourier, GaussianIsGaussian) {
    for (double s : {0.7, 1.0, 2.0}) {
        const WaveFunction1D wp = to_momentum(make_gaussian_strategy(0.0, s, kGrid));
        for (std::size_t k = 0; k < wp.size(); ++k) {
            const double p = wp.node(k);
            const double expected = std::sqrt(s * s / kPi) * std::exp(-s * s * p * p);
            EXPECT_NEAR(std::norm(wp.samples[static_cast<Eigen::Index>(k)]), expected, 1e-10);
        }
    }
}

TEST(Fourier, MatchesDirectSum) {
    Rng rng = make_stream(52, 0);
    const WaveFunction1D w = random_mixture(rng, kGrid);
    const WaveFunction1D wp = to_momentum(w);
    for (std::size_t k = 0; k < wp.size(); k += 7) {
        EXPECT_LE(std::abs(wp.samples[static_cast<Eigen::Index>(k)] - direct_momentum(w, wp.node(k))), 1e-12);
    }
}

// ---------------------------------------------------------------------------
// Demand and supply

TEST(Cdf, CenteredGaussianAtUnitPrice) {
    const WaveFunction1D w = unit_gaussian();
    EXPECT_NEAR(demand_cdf(w, 1.0), 0.5, 1e-8);
    EXPECT_NEAR(supply_cdf(to_momentum(w), 1.0), 0.5, 1e-8);
}

TEST(Cdf, ErrorFunctionOracle) {
    const WaveFunction1D w = unit_gaussian();
    const double sigma = std::sqrt(0.5);
    EXPECT_NEAR(demand_cdf(w, std::exp(1.0)), 0.921350, 1e-5);
    for (double x : {-2.3, -1.0, -0.31, 0.0, 0.05, 0.7, 1.0, 1.9}) {
        EXPECT_NEAR(demand_cdf(w, std::exp(x)), normal_cdf(x, sigma), 1e-8) << x;
        // |ψ̃|² is N(0, 1/2) as well; selling below ln(1/c) = x
        EXPECT_NEAR(supply_cdf(to_momentum(w), std::exp(-x)), normal_cdf(x, sigma), 1e-8) << x;
    }
}

TEST(Cdf, Limits) {
    const WaveFunction1D w = unit_gaussian();
    EXPECT_NEAR(demand_cdf(w, 1e-300), 0.0, 1e-15);
    EXPECT_NEAR(demand_cdf(w, 1e300), 1.0, 1e-15);
    EXPECT_NEAR(demand_cdf(w, std::exp(-15.0)), 0.0, 1e-12);
    EXPECT_NEAR(demand_cdf(w, std::exp(15.0)), 1.0, 1e-12);
    EXPECT_THROW(demand_cdf(w, 0.0), ValidationError);
    EXPECT_THROW(demand_cdf(to_momentum(w), 1.0), ValidationError);
    EXPECT_THROW(supply_cdf(w, 1.0), ValidationError);
}

TEST(Cdf, MonotoneOnRandomMixtures) {
    Rng rng = make_stream(53, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const WaveFunction1D w = random_mixture(rng, kGrid);
        const WaveFunction1D wp = to_momentum(w);
        double prev_d = 0.0;
        double prev_s = 1.0;
        for (double x = -8.0; x <= 8.0; x += 0.0173) {
            const double d = demand_cdf(w, std::exp(x));
            const double s = supply_cdf(wp, std::exp(x));
            EXPECT_GE(d, 0.0);
            EXPECT_LE(d, 1.0);
            EXPECT_GE(d, prev_d - 1e-12);
            EXPECT_LE(s, prev_s + 1e-12);
            prev_d = d;
            prev_s = s;
        }
    }
}

TEST(Cdf, GridRefinement) {
    for (double s : {0.8, 1.0, 1.7}) {
        const WaveFunction1D coarse = make_gaussian_strategy(0.0, s, GridSpec{-20.0, 20.0, 256});
        const WaveFunction1D fine = make_gaussian_strategy(0.0, s, GridSpec{-20.0, 20.0, 512});
        for (double x = -3.0; x <= 3.0; x += 0.0917) {
            EXPECT_LT(std::abs(demand_cdf(coarse, std::exp(x)) - demand_cdf(fine, std::exp(x))), 1e-6) << s << " " << x;
        }
    }
}

// ---------------------------------------------------------------------------
// Wigner

TEST(Wigner, GaussianMatchesAnalyticForm) {
    for (double s : {1.0, 1.5}) {
        const WignerGrid w = wigner(make_gaussian_strategy(0.0, s, kGrid));
        EXPECT_FALSE(w.aliasing);
        EXPECT_LT(w.max_imag, 1e-10);
        double worst = 0.0;
        for (std::size_t l = 0; l < w.n(); ++l) {
            for (std::size_t j = 0; j < w.n(); ++j) {
                const double v = w.values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
                worst = std::max(worst, std::abs(v - gaussian_wigner(w.p(l), w.q(j), s)));
                EXPECT_GE(v, -1e-10);
            }
        }
        EXPECT_LT(worst, 1e-6) << s;
        EXPECT_NEAR(w.normalization(), 1.0, 1e-8);
    }
}

TEST(Wigner, DisplacedGaussianAndOtherPlanckConstant) {
    GaussianOptions opt;
    opt.offset = 2.0;
    const WignerGrid w = wigner(make_gaussian_strategy(0.0, 1.0, kGrid, opt));
    double worst = 0.0;
    for (std::size_t l = 0; l < w.n(); ++l) {
        for (std::size_t j = 0; j < w.n(); ++j) {
            worst = std::max(worst, std::abs(w.values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) -
                                             gaussian_wigner(w.p(l), w.q(j), 1.0, 1.0, 2.0)));
        }
    }
    EXPECT_LT(worst, 1e-6);

    // h_E = 1 (ħ_E = 1/2π)
    GaussianOptions small;
    small.hbar = 1.0 / (2 * kPi);
    const WignerGrid w1 = wigner(make_gaussian_strategy(0.0, 1.0, kGrid, small), 1.0);
    EXPECT_NEAR(w1.hbar(), small.hbar, 1e-15);
    worst = 0.0;
    for (std::size_t l = 0; l < w1.n(); ++l) {
        for (std::size_t j = 0; j < w1.n(); ++j) {
            worst = std::max(worst, std::abs(w1.values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) -
                                              gaussian_wigner(w1.p(l), w1.q(j), 1.0, small.hbar)));
        }
    }
    EXPECT_LT(worst * small.hbar, 1e-6); // scale-free comparison: W·ħ is O(1)
    EXPECT_NEAR(w1.normalization(), 1.0, 1e-8);
}

TEST(Wigner, Marginals) {
    Rng rng = make_stream(54, 0);
    for (int trial = 0; trial < 3; ++trial) {
        const WaveFunction1D psi = trial == 0 ? unit_gaussian() : random_mixture(rng, kGrid);
        const WignerGrid w = wigner(psi);
        EXPECT_FALSE(w.aliasing);
        const Eigen::VectorXd qm = w.q_marginal();
        for (std::size_t j = 0; j < w.n(); ++j) {
            EXPECT_NEAR(qm[static_cast<Eigen::Index>(j)], std::norm(psi.samples[static_cast<Eigen::Index>(j)]), 1e-6);
        }
        const Eigen::VectorXd pm = w.p_marginal();
        for (std::size_t l = 0; l < w.n(); ++l) {
            EXPECT_NEAR(pm[static_cast<Eigen::Index>(l)], std::norm(direct_momentum(psi, w.p(l))), 1e-6) << "trial " << trial << " p " << w.p(l);
        }
        EXPECT_NEAR(w.normalization(), 1.0, 1e-8);
    }
}

TEST(Wigner, AliasingFlag) {
    // a spread-6 Gaussian on ±20 leaves mass in the outer eighth
    WaveFunction1D w{kGrid, Rep::q, 1.0, Vector(static_cast<Eigen::Index>(kGrid.n_points))};
    for (std::size_t j = 0; j < kGrid.n_points; ++j) {
        w.samples[static_cast<Eigen::Index>(j)] = std::exp(-0.5 * std::pow(kGrid.q(j) / 6.0, 2));
    }
    const WignerGrid g = wigner(normalized(w));
    EXPECT_TRUE(g.aliasing);
    EXPECT_GT(g.boundary_mass, 1e-8);
}

TEST(Wigner, UnnormalizedInputIsGuarded) {
    WaveFunction1D w = unit_gaussian();
    const WignerGrid a = wigner(w);
    w.samples *= 3.0;
    const WignerGrid b = wigner(w);
    EXPECT_LE((a.values - b.values).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Mix, SingleComponentIsIdentity) {
    const WaveFunction1D w = unit_gaussian();
    const WignerGrid a = wigner(w);
    const WignerGrid m = mix_wigner({{1.0, w}});
    EXPECT_EQ((a.values - m.values).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Mix, EqualMixIsPointwiseAverage) {
    GaussianOptions left;
    left.offset = -2.0;
    GaussianOptions right;
    right.offset = 2.5;
    const WaveFunction1D a = make_gaussian_strategy(0.0, 1.0, kGrid, left);
    const WaveFunction1D b = make_gaussian_strategy(0.0, 0.8, kGrid, right);
    const WignerGrid m = mix_wigner({{0.5, a}, {0.5, b}});
    const RealMatrix avg = 0.5 * (wigner(a).values + wigner(b).values);
    EXPECT_LE((m.values - avg).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(m.normalization(), 1.0, 1e-8);
}

TEST(Mix, WeightValidation) {
    const WaveFunction1D w = unit_gaussian();
    EXPECT_THROW(mix_wigner({{0.5, w}}), ValidationError);
    EXPECT_THROW(mix_wigner({{1.5, w}, {-0.5, w}}), ValidationError);
    EXPECT_THROW(mix_wigner({}), ValidationError);
    const WaveFunction1D other = make_gaussian_strategy(0.0, 1.0, GridSpec{-20.0, 20.0, 128});
    EXPECT_THROW(mix_wigner({{0.5, w}, {0.5, other}}), ValidationError);
}

// ---------------------------------------------------------------------------
// Transactions

TEST(Transaction, BuyerAtZero) {
    const WaveFunction1D w = unit_gaussian();
    const auto t = project_trader(w, Buy{0.0});
    EXPECT_NEAR(t.amplitude, w.samples.cwiseAbs2().maxCoeff() * kGrid.dq(), 1e-15);
    EXPECT_NEAR(t.amplitude, kGrid.dq() / std::sqrt(kPi), 1e-12);
    EXPECT_EQ(t.rounding, 0.0);
    EXPECT_NEAR(t.strategy.norm2(), 1.0, 1e-15);
}

TEST(Transaction, ProjectionIsIdempotent) {
    const auto first = project_trader(unit_gaussian(), Buy{0.5});
    const auto second = project_trader(first.strategy, Buy{0.5});
    EXPECT_NEAR(second.amplitude, 1.0, 1e-15);
    EXPECT_EQ(second.node, first.node);
    EXPECT_THROW(project_trader(first.strategy, Buy{1.5}), ImpossibleTransaction);
}

TEST(Transaction, SnapsOffGridPrices) {
    const auto t = project_trader(unit_gaussian(), Buy{0.3});
    EXPECT_NEAR(t.snapped, kGrid.q(t.node), 0.0);
    EXPECT_LE(t.rounding, kGrid.dq() / 2);
    EXPECT_NEAR(t.rounding, std::abs(0.3 - t.snapped), 1e-15);
    EXPECT_THROW(project_trader(unit_gaussian(), Buy{25.0}), ValidationError);
}

TEST(Transaction, SymmetricBuyerAndSeller) {
    const GridSpec sd = GridSpec::self_dual(256);
    const WaveFunction1D w = make_gaussian_strategy(0.0, 1.0, sd);
    const auto out = transaction_project({w, w}, {Buy{0.0}, Sell{0.0}});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NEAR(out[0].amplitude, out[1].amplitude, 1e-12);
    EXPECT_EQ(out[1].strategy.rep, Rep::p);
    EXPECT_THROW(transaction_project({w}, {Buy{0.0}, Sell{0.0}}), ValidationError);
}

// ---------------------------------------------------------------------------
// IO

TEST(Io, JsonRoundTripIsBitExact) {
    Rng rng = make_stream(55, 0);
    const WaveFunction1D w = random_mixture(rng, kGrid);
    const std::string text = to_json(w).dump();
    const WaveFunction1D back = wavefunction_from_json(json::parse(text));
    EXPECT_EQ(back.grid, w.grid);
    for (Eigen::Index j = 0; j < w.samples.size(); ++j) {
        EXPECT_EQ(back.samples[j], w.samples[j]);
    }
    EXPECT_EQ(to_json(back).dump(), text);

    const WignerGrid g = wigner(w);
    const std::string gtext = to_json(g).dump();
    const WignerGrid gback = wigner_from_json(json::parse(gtext));
    EXPECT_EQ((g.values - gback.values).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(gback.max_imag, g.max_imag);
    EXPECT_EQ(to_json(gback).dump(), gtext);
}

TEST(Io, CsvRoundTrip) {
    const WignerGrid g = wigner(unit_gaussian(GridSpec{-12.0, 12.0, 64}));
    const std::string csv = to_csv(g);
    EXPECT_EQ(csv.substr(0, 4), "p\\q,");
    const RealMatrix back = wigner_values_from_csv(csv);
    EXPECT_EQ((back - g.values).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(to_csv(unit_gaussian()).substr(0, 7), "q,re,im");
}

TEST(Io, FormatDouble) {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        EXPECT_EQ(parse_double(format_double(x)), x);
    }
    EXPECT_THROW(parse_double("1.0x"), ValidationError);
}
