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

#include "qgame/games/gvw.hpp"
#include "qgame/games/newcomb.hpp"
#include "qgame/games/qfa.hpp"

using namespace qgame;
using namespace qgame::games;

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Newcomb

TEST(Newcomb, AllianceDetectsTheOpening) {
    const auto r = newcomb_run({1, Breaker::absent});
    EXPECT_NEAR(r.p[1], 1.0, 1e-12);
    // C|1⟩|0⟩ = i|1⟩|1⟩
    EXPECT_NEAR(std::abs(r.final_state[3] - kI), 0.0, 1e-15);
    EXPECT_NEAR(newcomb_run({0, Breaker::absent}).p[0], 1.0, 1e-12);
}

TEST(Newcomb, NotBreakerRestoresZero) {
    const auto r = newcomb_run({1, Breaker::not_gate});
    EXPECT_NEAR(r.p[0], 1.0, 1e-12);
    // (iσx)² = −I on the lower wire
    EXPECT_NEAR(std::abs(r.final_state[2] + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(newcomb_run({1, Breaker::identity}).p[1], 1.0, 1e-12);
    EXPECT_NEAR(newcomb_run({0, Breaker::not_gate}).p[1], 1.0, 1e-12);
}

TEST(Newcomb, QutrojanHidesTheControl) {
    const auto r0 = newcomb_run({0, Breaker::qutrojan});
    const auto r1 = newcomb_run({1, Breaker::qutrojan});
    EXPECT_NEAR(r0.p[0], 1.0, 1e-12);
    EXPECT_NEAR(r1.p[0], 1.0, 1e-12);
    const double tv = 0.5 * (std::abs(r0.p[0] - r1.p[0]) + std::abs(r0.p[1] - r1.p[1]));
    EXPECT_LE(tv, 1e-12);
    // The control still acts: the phase differs between the two runs.
    EXPECT_GT(max_abs_diff(r0.final_state.amplitudes().tail(2), r1.final_state.amplitudes().tail(2)) +
                  max_abs_diff(r0.final_state.amplitudes().head(2), r1.final_state.amplitudes().head(2)),
              0.5);
}

TEST(Newcomb, ConfigValidation) {
    EXPECT_THROW(newcomb_run({2, Breaker::absent}), ValidationError);
    Rng rng = make_stream(1, 0);
    EXPECT_THROW(newcomb_sample({1, Breaker::qutrojan}, 10, rng, 0.5), ValidationError);
    EXPECT_THROW(newcomb_sample({1, Breaker::absent}, 10, rng, 1.5), ValidationError);
    EXPECT_EQ(parse_breaker("NOT"), Breaker::not_gate);
    EXPECT_EQ(parse_breaker("qutrojan"), Breaker::qutrojan);
    EXPECT_FALSE(parse_breaker("hammer").has_value());
}

TEST(Newcomb, SampledSwitch) {
    Rng rng = make_stream(2, 0);
    const auto s = newcomb_sample({1, Breaker::absent}, 100000, rng, 0.3);
    EXPECT_EQ(s.counts[0] + s.counts[1], 100000u);
    // NOT thrown → bit 0, so P(bit 0) = 0.3
    const double f = static_cast<double>(s.counts[0]) / 1e5;
    EXPECT_LE(std::abs(f - 0.3), 4 * std::sqrt(0.3 * 0.7 / 1e5));

    Rng rng2 = make_stream(2, 1);
    const auto q = newcomb_sample({1, Breaker::qutrojan}, 1000, rng2);
    EXPECT_EQ(q.counts[0], 1000u);
}

// ---------------------------------------------------------------------------
// GVW exact engine

TEST(Gvw, WorkedExamples) {
    EXPECT_NEAR(gvw_expected_payoffs({kPi / 4, 0.0, 1.0}).bob, 0.0, 1e-15);
    EXPECT_NEAR(gvw_expected_payoffs({0.0, 1.0, 1.0}).bob, 0.0, 1e-15);
    EXPECT_NEAR(gvw_detection_probability(0.0), 0.5, 1e-15);
    EXPECT_EQ(gvw_detection_probability(kPi / 4), 0.0);
    for (double p : {0.0, 0.1, 0.5, 1.0}) {
        EXPECT_NEAR(gvw_expected_payoffs({kPi / 4, p, 7.0}).bob, -p, 1e-15);
    }
}

TEST(Gvw, ZeroSumIsExact) {
    for (double th = 0.0; th <= kPi / 2; th += 0.05) {
        for (double p = 0.0; p <= 1.0; p += 0.125) {
            const auto e = gvw_expected_payoffs({th, p, 3.5});
            EXPECT_EQ(e.alice + e.bob, 0.0);
        }
    }
}

TEST(Gvw, MatchesClosedForm) {
    for (double th = 0.0; th <= kPi / 2; th += 0.07) {
        for (double p : {0.0, 0.3, 1.0}) {
            for (double r : {1.0, 2.0, 10.0}) {
                const double d = (1 - std::sin(2 * th)) / 2;
                const double expected = (1 - p) * (std::pow(std::sin(th), 2) - std::pow(std::cos(th), 2)) +
                                        p * (d * (r + 1) - 1);
                EXPECT_NEAR(gvw_expected_payoffs({th, p, r}).bob, expected, 1e-14);
            }
        }
    }
}

TEST(Gvw, ContinuousInTheta) {
    for (double th = 0.0; th <= kPi / 2; th += 0.01) {
        for (double r : {1.0, 100.0}) {
            const GambleParams a{th, 0.5, r};
            const GambleParams b{th + 1e-6, 0.5, r};
            EXPECT_LT(std::abs(gvw_expected_payoffs(a).bob - gvw_expected_payoffs(b).bob), 1e-4);
        }
    }
}

TEST(Gvw, Validation) {
    EXPECT_THROW(gvw_expected_payoffs({0.0, -0.1, 1.0}), ValidationError);
    EXPECT_THROW(gvw_expected_payoffs({0.0, 1.1, 1.0}), ValidationError);
    EXPECT_THROW(gvw_expected_payoffs({0.0, 0.5, 0.0}), ValidationError);
    EXPECT_THROW(gvw_expected_payoffs({std::nan(""), 0.5, 1.0}), ValidationError);
    EXPECT_THROW(gvw_simulate({0.0, 0.5, 1.0}, 0, 1), ValidationError);
}

// ---------------------------------------------------------------------------
// GVW Monte Carlo

TEST(GvwSimulate, HonestNoVerification) {
    const auto s = gvw_simulate({kPi / 4, 0.0, 1.0}, 100000, 7);
    EXPECT_LT(std::abs(s.mean_bob), s.half_width);
    EXPECT_EQ(s.counts[2], 0u);
}

TEST(GvwSimulate, SingleTrialSupport) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = gvw_simulate({0.3, 0.5, 2.5}, 1, seed);
        EXPECT_TRUE(s.mean_bob == 1.0 || s.mean_bob == -1.0 || s.mean_bob == 2.5) << s.mean_bob;
        EXPECT_EQ(s.half_width, 0.0);
    }
}

TEST(GvwSimulate, DeterministicPerSeed) {
    const GambleParams g{0.4, 0.3, 5.0};
    const auto a = gvw_simulate(g, 50000, 99);
    const auto b = gvw_simulate(g, 50000, 99);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.mean_bob, b.mean_bob);
    EXPECT_NE(gvw_simulate(g, 50000, 100).counts, a.counts);
    // A longer run extends the shorter one: the first chunks are shared.
    const auto c = gvw_simulate(g, kGambleChunk, 99);
    const auto d = gvw_simulate(g, 2 * kGambleChunk, 99);
    EXPECT_LE(c.counts[0], d.counts[0]);
}

TEST(GvwSimulate, AgreesWithExactEngine) {
    const GambleParams g{kPi / 8, 0.5, 2.0};
    const double exact = gvw_expected_payoffs(g).bob;
    int inside = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const auto s = gvw_simulate(g, 20000, 1000 + rep);
        inside += std::abs(s.mean_bob - exact) <= s.half_width ? 1 : 0;
    }
    EXPECT_GE(inside, 99);
}

// ---------------------------------------------------------------------------
// Best responses

namespace {

// θ* = atan2(b, a)/2 for E = c − a·cos2θ − b·sin2θ
BestResponse closed_form(double p, double r) {
    const double a = 1 - p;
    const double b = p * (r + 1) / 2;
    const double c = b - p;
    return {0.5 * std::atan2(b, a), c - std::hypot(a, b)};
}

} // namespace

TEST(BestResponse, NeverVerifiedMeansFullCheat) {
    const auto br = gvw_best_response(0.0, 1.0);
    EXPECT_EQ(br.theta, 0.0);
    EXPECT_NEAR(br.e_bob, -1.0, 1e-15);
}

TEST(BestResponse, MatchesClosedForm) {
    for (double p : {0.05, 0.25, 0.5, 0.75, 1.0}) {
        for (double r : {0.5, 1.0, 5.0, 1e3}) {
            const auto br = gvw_best_response(p, r);
            const auto cf = closed_form(p, r);
            EXPECT_NEAR(br.theta, cf.theta, 1e-7) << p << " " << r;
            EXPECT_NEAR(br.e_bob, cf.e_bob, 1e-12) << p << " " << r;
        }
    }
}

TEST(BestResponse, LargeRewardForcesHonesty) {
    const auto br = gvw_best_response(1.0, 1e8);
    EXPECT_NEAR(br.theta, kPi / 4, 1e-7);
    EXPECT_GE(br.e_bob, -1.0);
    EXPECT_NEAR(br.e_bob, -1.0, 1e-6);
}

TEST(GvwValue, BothOrdersAgreeWithGridSearch) {
    for (double r : {1.0, 10.0, 1e3}) {
        const auto bf = gvw_value(r, MoveOrder::bob_first);
        const auto af = gvw_value(r, MoveOrder::alice_first);
        double grid_max = -2.0;
        for (int k = 0; k <= 10000; ++k) {
            grid_max = std::max(grid_max, closed_form(k / 10000.0, r).e_bob);
        }
        EXPECT_NEAR(bf.e_bob, grid_max, 1e-7) << r;
        EXPECT_LE(bf.e_bob, 0.0);
        EXPECT_LE(af.e_bob, 0.0);
        // max-min never exceeds min-max
        EXPECT_LE(bf.e_bob, af.e_bob + 1e-12);
    }
    // R = 1: both orders meet at θ = π/8 with value −1/√2
    const auto af = gvw_value(1.0, MoveOrder::alice_first);
    EXPECT_NEAR(af.theta, kPi / 8, 1e-12);
    EXPECT_NEAR(af.e_bob, -1.0 / std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(gvw_value(1.0, MoveOrder::bob_first).e_bob, -1.0 / std::numbers::sqrt2, 1e-12);
}

TEST(GvwValue, FairLimitWitness) {
    const auto f = gvw_fair_limit(1e-3);
    ASSERT_TRUE(f.found);
    EXPECT_LT(std::abs(f.bob_first.e_bob), 1e-3);
    EXPECT_LT(std::abs(f.alice_first.e_bob), 1e-3);
    EXPECT_DOUBLE_EQ(f.reward, 1e7);
    // the certificate is Alice's best response at the reported p_verify
    const auto br = gvw_best_response(f.bob_first.p_verify, f.reward);
    EXPECT_LT(std::abs(br.e_bob), 1e-3);
    EXPECT_NEAR(br.e_bob, closed_form(f.bob_first.p_verify, f.reward).e_bob, 1e-12);
}

// ---------------------------------------------------------------------------
// QFA

namespace {

Matrix projector_one(std::size_t dim = 2) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix p = Matrix::Zero(d, d);
    p(d - 1, d - 1) = 1.0;
    return p;
}

} // namespace

TEST(Qfa, Examples) {
    const GateSet g = GateSet::canonical();
    const Vector s0 = QState::zero(1).amplitudes();
    const QFA with_not(s0, {{"a", g.not_gate}}, projector_one());
    EXPECT_NEAR(qfa_run(with_not, {"a"}), 1.0, 1e-15);
    EXPECT_NEAR(qfa_run(with_not, {"a", "a"}), 0.0, 1e-15);
    EXPECT_NEAR(qfa_run(with_not, {}), 0.0, 1e-15);

    const QFA with_h(s0, {{"h", g.hadamard}}, projector_one());
    EXPECT_NEAR(qfa_run(with_h, {"h", "h"}), 0.0, 1e-15);
    EXPECT_NEAR(qfa_run(with_h, {"h"}), 0.5, 1e-15);
}

TEST(Qfa, ProbabilitiesInUnitInterval) {
    Rng rng = make_stream(3, 0);
    const QFA a(random_state(1, rng).amplitudes(),
                {{"x", Operator(random_unitary(2, rng))}, {"y", Operator(random_unitary(2, rng))}}, projector_one());
    for (int len = 0; len < 30; ++len) {
        std::vector<std::string> w;
        for (int k = 0; k < len; ++k) {
            w.push_back(bernoulli(rng, 0.5) ? "x" : "y");
        }
        const double p = qfa_run(a, w);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0 + 1e-12);
    }
}

TEST(Qfa, ThreeLevelAutomaton) {
    // cyclic shift on a qutrit: accepts words of length ≡ 2 mod 3
    Matrix shift = Matrix::Zero(3, 3);
    shift(1, 0) = shift(2, 1) = shift(0, 2) = 1.0;
    Vector s0 = Vector::Zero(3);
    s0(0) = 1.0;
    const QFA a(s0, {{"s", Operator(shift)}}, projector_one(3));
    EXPECT_NEAR(qfa_run(a, {"s", "s"}), 1.0, 1e-15);
    EXPECT_NEAR(qfa_run(a, {"s", "s", "s"}), 0.0, 1e-15);
}

TEST(Qfa, Validation) {
    const GateSet g = GateSet::canonical();
    const Vector s0 = QState::zero(1).amplitudes();
    const QFA a(s0, {{"a", g.not_gate}}, projector_one());
    EXPECT_THROW(qfa_run(a, {"b"}), ValidationError);
    Matrix m(2, 2);
    m << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(QFA(s0, {{"a", Operator(m)}}, projector_one()), ValidationError);
    EXPECT_THROW(QFA(s0, {{"a", g.not_gate}}, 2.0 * projector_one()), ValidationError);
    EXPECT_THROW(QFA(2.0 * s0, {{"a", g.not_gate}}, projector_one()), ValidationError);
    EXPECT_THROW(QFA(s0, {{"a", Operator::identity(4)}}, projector_one()), ValidationError);
}
