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

/// @file interface.hpp
/// Generalized yes/no measurement effected by a single-qubit interface
/// coupled through exp(−G⊗σx t): the system ends in
///   ρ⁺ ∝ cos(γGt) ρ cos(γGt)  with P₊ = tr cos²(γGt) ρ
///   ρ⁻ ∝ sin(γGt) ρ sin(γGt)  with P₋ = tr sin²(γGt) ρ

#pragma once

#include <cmath>
#include <optional>

#include "qgame/core.hpp"

namespace qgame {

struct YesNoResult {
    std::optional<DensityOp> rho_plus; ///< empty when P₊ < 1e-14
    double p_plus = 0.0;
    std::optional<DensityOp> rho_minus; ///< empty when P₋ < 1e-14
    double p_minus = 0.0;
};

namespace detail {

inline std::optional<DensityOp> renormalized(const Matrix &unnormalized, double p) {
    if (p < tol::impossible) {
        return std::nullopt;
    }
    Matrix rho = unnormalized / p;
    rho = 0.5 * (rho + rho.adjoint());
    return DensityOp(std::move(rho));
}

} // namespace detail

/// `gamma_t` is the product γ·t.
inline YesNoResult interface_yes_no(const DensityOp &rho, const Operator &g, double gamma_t) {
    if (!g.is_hermitian()) {
        throw ValidationError("interface_yes_no: G is not Hermitian");
    }
    if (g.dim() != rho.dim()) {
        throw ValidationError("interface_yes_no: G and rho dimensions differ");
    }
    const Matrix c = matfun_hermitian(g, [gamma_t](double l) { return std::cos(gamma_t * l); }).matrix();
    const Matrix s = matfun_hermitian(g, [gamma_t](double l) { return std::sin(gamma_t * l); }).matrix();
    const Matrix plus = c * rho.matrix() * c;
    const Matrix minus = s * rho.matrix() * s;
    YesNoResult out;
    out.p_plus = plus.trace().real();
    out.p_minus = minus.trace().real();
    out.rho_plus = detail::renormalized(plus, out.p_plus);
    out.rho_minus = detail::renormalized(minus, out.p_minus);
    return out;
}

} // namespace qgame
