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

/// @file strategy.hpp
/// Trader strategies sampled on a periodic grid in q = ln c − E(ln c), their
/// momentum (supply-side) representation, and the buy/sell probability
/// integrals.
///
/// Grid: q_j = q_min + jΔq, Δq = L/n, L = q_max − q_min. Momentum nodes
/// p_k = (k − n/2)Δp with Δp = 2πħ/L, so nΔqΔp = h exactly.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qgame/core.hpp"

namespace qgame::market {

/// Strategy grid too narrow or too coarse for the requested state.
class TruncationError : public ValidationError {
  public:
    TruncationError(const std::string &what, double mass) : ValidationError(what), boundary_mass(mass) {}
    double boundary_mass;
};

inline constexpr double kDefaultPlanck = 2.0 * std::numbers::pi; ///< h_E, so ħ_E = 1

struct GridSpec {
    double q_min = -20.0;
    double q_max = 20.0;
    std::size_t n_points = 256;

    void validate() const {
        if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_min < q_max)) {
            throw ValidationError("grid: need finite q_min < q_max");
        }
        if (n_points < 64 || !is_power_of_two(n_points)) {
            throw ValidationError("grid: n_points must be a power of two >= 64");
        }
    }

    double length() const { return q_max - q_min; }
    double dq() const { return length() / static_cast<double>(n_points); }
    double q(std::size_t j) const { return q_min + static_cast<double>(j) * dq(); }
    double dp(double hbar) const { return 2.0 * std::numbers::pi * hbar / length(); }
    double p(std::size_t k, double hbar) const {
        return (static_cast<double>(k) - static_cast<double>(n_points / 2)) * dp(hbar);
    }

    /// Centered grid with Δq = Δp (unit-Gaussian self-duality).
    static GridSpec self_dual(std::size_t n, double hbar = 1.0) {
        const double l = std::sqrt(2.0 * std::numbers::pi * hbar * static_cast<double>(n));
        return GridSpec{-l / 2, l / 2, n};
    }

    bool operator==(const GridSpec &) const = default;
};

enum class Rep { q, p };

inline const char *to_string(Rep r) { return r == Rep::q ? "q" : "p"; }

/// Samples of a strategy in the q or p representation.
struct WaveFunction1D {
    GridSpec grid;
    Rep rep = Rep::q;
    double hbar = 1.0;
    Vector samples;

    double step() const { return rep == Rep::q ? grid.dq() : grid.dp(hbar); }
    double origin() const { return rep == Rep::q ? grid.q_min : grid.p(0, hbar); }
    double node(std::size_t j) const { return origin() + static_cast<double>(j) * step(); }
    std::size_t size() const { return static_cast<std::size_t>(samples.size()); }

    /// Σ|ψ|²·step
    double norm2() const { return samples.squaredNorm() * step(); }

    /// E(x) under |ψ|², normalized by norm2.
    double mean() const {
        double m = 0.0;
        for (std::size_t j = 0; j < size(); ++j) {
            m += node(j) * std::norm(samples[static_cast<Eigen::Index>(j)]);
        }
        return m * step() / norm2();
    }

    double variance() const {
        const double mu = mean();
        double v = 0.0;
        for (std::size_t j = 0; j < size(); ++j) {
            v += std::pow(node(j) - mu, 2) * std::norm(samples[static_cast<Eigen::Index>(j)]);
        }
        return v * step() / norm2();
    }

    void validate() const {
        grid.validate();
        if (!(hbar > 0.0) || !std::isfinite(hbar)) {
            throw ValidationError("strategy: hbar must be positive");
        }
        if (size() != grid.n_points) {
            throw ValidationError("strategy: sample count does not match the grid");
        }
        if (!all_finite(samples)) {
            throw ValidationError("strategy: non-finite samples");
        }
        if (!(norm2() > 0.0)) {
            throw ValidationError("strategy: zero norm");
        }
    }
};

inline WaveFunction1D normalized(WaveFunction1D w) {
    w.validate();
    w.samples /= std::sqrt(w.norm2());
    return w;
}

namespace detail {

inline Vector fft_forward(const Vector &in) {
    Eigen::FFT<double> fft;
    std::vector<Complex> src(in.data(), in.data() + in.size());
    std::vector<Complex> dst;
    fft.fwd(dst, src);
    return Eigen::Map<Vector>(dst.data(), static_cast<Eigen::Index>(dst.size()));
}

/// Inverse including the 1/n factor.
inline Vector fft_inverse(const Vector &in) {
    Eigen::FFT<double> fft;
    std::vector<Complex> src(in.data(), in.data() + in.size());
    std::vector<Complex> dst;
    fft.inv(dst, src);
    return Eigen::Map<Vector>(dst.data(), static_cast<Eigen::Index>(dst.size()));
}

inline double alternating(std::size_t j) { return (j % 2 == 0) ? 1.0 : -1.0; }

} // namespace detail

/// ψ̃(p_k) = Δq/√(2πħ) · e^{−ip_k q_min/ħ} · Σ_j (−1)^j ψ_j e^{−2πijk/n}.
inline WaveFunction1D to_momentum(const WaveFunction1D &w) {
    w.validate();
    if (w.rep != Rep::q) {
        throw ValidationError("to_momentum: strategy is already in the p representation");
    }
    const std::size_t n = w.size();
    Vector a(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        a[static_cast<Eigen::Index>(j)] = detail::alternating(j) * w.samples[static_cast<Eigen::Index>(j)];
    }
    const Vector f = detail::fft_forward(a);
    const double scale = w.grid.dq() / std::sqrt(2.0 * std::numbers::pi * w.hbar);
    WaveFunction1D out{w.grid, Rep::p, w.hbar, Vector(static_cast<Eigen::Index>(n))};
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = -w.grid.p(k, w.hbar) * w.grid.q_min / w.hbar;
        out.samples[static_cast<Eigen::Index>(k)] = scale * std::polar(1.0, phase) * f[static_cast<Eigen::Index>(k)];
    }
    return out;
}

inline WaveFunction1D to_position(const WaveFunction1D &w) {
    w.validate();
    if (w.rep != Rep::p) {
        throw ValidationError("to_position: strategy is already in the q representation");
    }
    const std::size_t n = w.size();
    Vector a(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = w.grid.p(k, w.hbar) * w.grid.q_min / w.hbar;
        a[static_cast<Eigen::Index>(k)] = std::polar(1.0, phase) * w.samples[static_cast<Eigen::Index>(k)];
    }
    const Vector f = detail::fft_inverse(a);
    const double scale = std::sqrt(2.0 * std::numbers::pi * w.hbar) / w.grid.dq();
    WaveFunction1D out{w.grid, Rep::q, w.hbar, Vector(static_cast<Eigen::Index>(n))};
    for (std::size_t j = 0; j < n; ++j) {
        out.samples[static_cast<Eigen::Index>(j)] = scale * detail::alternating(j) * f[static_cast<Eigen::Index>(j)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian strategies

struct GaussianOptions {
    bool center = true;   ///< shift to E(q) = 0 before applying the offset
    double offset = 0.0;  ///< market-global shift of every trader
    double hbar = 1.0;
    double boundary_tolerance = 1e-12;
};

/// ψ(q) ∝ exp(−(q − q₀)²/(2s²)) with q₀ = offset (centered) or mean + offset.
inline WaveFunction1D make_gaussian_strategy(double mean, double spread, const GridSpec &grid,
                                             const GaussianOptions &opt = {}) {
    grid.validate();
    if (!(spread > 0.0) || !std::isfinite(spread) || !std::isfinite(mean) || !std::isfinite(opt.offset)) {
        throw ValidationError("gaussian strategy: spread must be positive, mean and offset finite");
    }
    const double q0 = (opt.center ? 0.0 : mean) + opt.offset;
    const std::size_t n = grid.n_points;
    WaveFunction1D w{grid, Rep::q, opt.hbar, Vector(static_cast<Eigen::Index>(n))};
    for (std::size_t j = 0; j < n; ++j) {
        const double x = (grid.q(j) - q0) / spread;
        w.samples[static_cast<Eigen::Index>(j)] = std::exp(-0.5 * x * x);
    }
    w = normalized(w);

    // Amplitude at both ends of the q window (the grid wraps there) and at
    // the edge of the momentum window.
    auto amp = [&](double q) {
        const double x = (q - q0) / spread;
        return std::exp(-0.5 * x * x) / std::pow(std::numbers::pi * spread * spread, 0.25);
    };
    const double edge_q = std::max(amp(grid.q_min), amp(grid.q_max));
    if (edge_q >= opt.boundary_tolerance) {
        throw TruncationError("gaussian strategy: grid too narrow, boundary amplitude " + std::to_string(edge_q),
                              edge_q * edge_q * grid.dq());
    }
    const WaveFunction1D wp = to_momentum(w);
    const double edge_p = std::abs(wp.samples[0]);
    if (edge_p >= opt.boundary_tolerance) {
        throw TruncationError("gaussian strategy: grid too coarse, momentum boundary amplitude " + std::to_string(edge_p),
                              edge_p * edge_p * wp.step());
    }
    return w;
}

// ---------------------------------------------------------------------------
// Buy and sell probabilities

namespace detail {

/// ∫_{x0}^{x} |ψ|² / ∫|ψ|² over one period [x0, x0 + nh), integrating the
/// trigonometric interpolant of the sampled density. Its integral over the
/// full period is the periodic trapezoid sum; unlike node-wise trapezoid
/// partial sums it stays spectrally accurate between the end points.
inline double cumulative(const WaveFunction1D &w, double x) {
    const std::size_t n = w.size();
    const double h = w.step();
    const double x0 = w.origin();
    if (!(x > x0)) {
        return 0.0;
    }
    if (x >= x0 + static_cast<double>(n) * h) {
        return 1.0;
    }
    Vector f(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        f[static_cast<Eigen::Index>(j)] = std::norm(w.samples[static_cast<Eigen::Index>(j)]);
    }
    const Vector c = fft_forward(f) / static_cast<double>(n);
    const double t = (x - x0) / h; // in cells
    double acc = c[0].real() * t;
    for (std::size_t m = 1; m < n / 2; ++m) {
        const double omega = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        const Complex e = std::polar(1.0, omega * t) - 1.0;
        acc += 2.0 * std::real(c[static_cast<Eigen::Index>(m)] * e / Complex(0.0, omega));
    }
    acc += c[static_cast<Eigen::Index>(n / 2)].real() * std::sin(std::numbers::pi * t) / std::numbers::pi;
    return std::clamp(acc / (c[0].real() * static_cast<double>(n)), 0.0, 1.0);
}

} // namespace detail

/// P(buy at or below c) = ∫_{−∞}^{ln c} |ψ(q)|² dq / ⟨ψ|ψ⟩.
inline double demand_cdf(const WaveFunction1D &psi, double c) {
    psi.validate();
    if (psi.rep != Rep::q) {
        throw ValidationError("demand_cdf: expected the q representation");
    }
    if (!(c > 0.0)) {
        throw ValidationError("demand_cdf: price must be positive");
    }
    return detail::cumulative(psi, std::log(c));
}

/// P(sell) = ∫_{−∞}^{ln(1/c)} |ψ̃(p)|² dp / ⟨ψ|ψ⟩.
inline double supply_cdf(const WaveFunction1D &psi_p, double c) {
    psi_p.validate();
    if (psi_p.rep != Rep::p) {
        throw ValidationError("supply_cdf: expected the p representation");
    }
    if (!(c > 0.0)) {
        throw ValidationError("supply_cdf: price must be positive");
    }
    return detail::cumulative(psi_p, -std::log(c));
}

} // namespace qgame::market
