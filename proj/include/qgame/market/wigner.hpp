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

/// @file wigner.hpp
/// Wigner pseudo-probability of a strategy and its mixtures.
///
/// With x = 2kΔq the defining integral becomes a sum over k; choosing the
/// p nodes at half the momentum spacing, p_l = (l − n/2)Δp/2, turns it into
/// one FFT per q node:
///   W(p_l, q_j) = (2Δq/h) Σ_k (−1)^k e^{−2πilk/n} ψ_{j+k} ψ*_{j−k},
/// k ∈ [−n/2, n/2), samples outside the window taken as 0.
///
/// The kernel is e^{−ipx/ħ} ψ(q+x/2) ψ*(q−x/2), so the p marginal is
/// |ψ̃(p)|² with ψ̃ the forward transform used by to_momentum. The
/// opposite sign would give the mirror image |ψ̃(−p)|².

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgame/core.hpp"
#include "qgame/market/strategy.hpp"

namespace qgame::market {

using RealMatrix = Eigen::MatrixXd;

struct WignerGrid {
    GridSpec grid;
    double h = kDefaultPlanck;
    RealMatrix values; ///< rows: p nodes, cols: q nodes
    double max_imag = 0.0;
    double boundary_mass = 0.0;
    bool aliasing = false; ///< boundary_mass above kAliasingThreshold

    double hbar() const { return h / (2.0 * std::numbers::pi); }
    std::size_t n() const { return grid.n_points; }
    double dq() const { return grid.dq(); }
    double dp() const { return grid.dp(hbar()) / 2.0; }
    double q(std::size_t j) const { return grid.q(j); }
    double p(std::size_t l) const { return (static_cast<double>(l) - static_cast<double>(n() / 2)) * dp(); }

    /// Σ W ΔpΔq
    double normalization() const { return values.sum() * dp() * dq(); }

    /// ∫W dp at each q node.
    Eigen::VectorXd q_marginal() const { return values.colwise().sum().transpose() * dp(); }

    /// ∫W dq at each p node.
    Eigen::VectorXd p_marginal() const { return values.rowwise().sum() * dq(); }
};

inline constexpr double kAliasingThreshold = 1e-8;

namespace detail {

/// |ψ|² mass within the outer eighth of the q window on each side plus the
/// momentum mass outside the Wigner p window |p| < nΔp/4.
inline double wigner_boundary_mass(const WaveFunction1D &w) {
    const std::size_t n = w.size();
    const std::size_t band = n / 8;
    double mass = 0.0;
    for (std::size_t j = 0; j < band; ++j) {
        mass += std::norm(w.samples[static_cast<Eigen::Index>(j)]) +
                std::norm(w.samples[static_cast<Eigen::Index>(n - 1 - j)]);
    }
    mass *= w.step();
    const WaveFunction1D wp = to_momentum(w);
    double pmass = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k < n / 4 || k >= 3 * n / 4) {
            pmass += std::norm(wp.samples[static_cast<Eigen::Index>(k)]);
        }
    }
    return mass + pmass * wp.step();
}

} // namespace detail

/// Wigner function of ψ on the (p, q) grid, h_E = `h` (ψ.hbar is ignored in
/// favor of h/2π so that the transform and the grid agree).
inline WignerGrid wigner(const WaveFunction1D &psi, double h = kDefaultPlanck) {
    psi.validate();
    if (psi.rep != Rep::q) {
        throw ValidationError("wigner: expected the q representation");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ValidationError("wigner: h_E must be positive");
    }
    const std::size_t n = psi.size();
    const auto ni = static_cast<std::ptrdiff_t>(n);
    // The displayed formula divides by ⟨ψ|ψ⟩; normalize up front, the guard is the same.
    const Vector s = psi.samples / std::sqrt(psi.norm2());

    WignerGrid w;
    w.grid = psi.grid;
    w.h = h;
    w.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double scale = 2.0 * psi.grid.dq() / h;

    Vector a(static_cast<Eigen::Index>(n));
    for (std::ptrdiff_t j = 0; j < ni; ++j) {
        a.setZero();
        for (std::ptrdiff_t k = -ni / 2; k < ni / 2; ++k) {
            const std::ptrdiff_t plus = j + k;
            const std::ptrdiff_t minus = j - k;
            if (plus < 0 || plus >= ni || minus < 0 || minus >= ni) {
                continue;
            }
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            a[(k + ni) % ni] = sign * s[plus] * std::conj(s[minus]);
        }
        const Vector col = detail::fft_forward(a);
        for (std::size_t l = 0; l < n; ++l) {
            const Complex v = scale * col[static_cast<Eigen::Index>(l)];
            w.values(static_cast<Eigen::Index>(l), j) = v.real();
            w.max_imag = std::max(w.max_imag, std::abs(v.imag()));
        }
    }
    WaveFunction1D normed = psi;
    normed.samples = s;
    normed.hbar = h / (2.0 * std::numbers::pi);
    w.boundary_mass = detail::wigner_boundary_mass(normed);
    w.aliasing = w.boundary_mass > kAliasingThreshold;
    return w;
}

/// (1/πħ) exp(−(q−q₀)²/s² − s²p²/ħ²), Wigner function of ψ ∝ exp(−(q−q₀)²/2s²).
inline double gaussian_wigner(double p, double q, double spread, double hbar = 1.0, double q0 = 0.0) {
    const double x = (q - q0) / spread;
    const double y = spread * p / hbar;
    return std::exp(-x * x - y * y) / (std::numbers::pi * hbar);
}

/// ρ(p, q) = Σ wₙ Wₙ(p, q).
inline WignerGrid mix_wigner(const std::vector<std::pair<double, WaveFunction1D>> &components,
                             double h = kDefaultPlanck) {
    if (components.empty()) {
        throw ValidationError("mix_wigner: no components");
    }
    double total = 0.0;
    for (const auto &[weight, psi] : components) {
        if (!(weight >= 0.0) || !std::isfinite(weight)) {
            throw ValidationError("mix_wigner: weights must be nonnegative");
        }
        if (!(psi.grid == components.front().second.grid)) {
            throw ValidationError("mix_wigner: components live on different grids");
        }
        total += weight;
    }
    if (std::abs(total - 1.0) > tol::algebraic) {
        throw ValidationError("mix_wigner: weights must sum to 1");
    }
    WignerGrid mix;
    bool first = true;
    for (const auto &[weight, psi] : components) {
        WignerGrid g = wigner(psi, h);
        if (first) {
            mix = g;
            mix.values *= weight;
            mix.max_imag *= weight;
            mix.boundary_mass *= weight;
            first = false;
            continue;
        }
        mix.values += weight * g.values;
        mix.max_imag += weight * g.max_imag;
        mix.boundary_mass += weight * g.boundary_mass;
    }
    mix.aliasing = mix.boundary_mass > kAliasingThreshold;
    return mix;
}

} // namespace qgame::market
