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

/// @file qfa.hpp
/// Measure-once quantum finite automaton (S, s₀, α, U): the word's unitaries
/// are composed on s₀ and the result is projected onto the accepting subspace.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qgame/core.hpp"

namespace qgame::games {

class QFA {
  public:
    QFA(Vector s0, std::map<std::string, Operator> alphabet, Matrix accept)
        : s0_(std::move(s0)), alphabet_(std::move(alphabet)), accept_(std::move(accept)) {
        const auto d = s0_.size();
        if (d == 0 || !all_finite(s0_)) {
            throw ValidationError("qfa: initial state must be a finite nonempty vector");
        }
        const double norm = s0_.norm();
        if (std::abs(norm - 1.0) > tol::algebraic) {
            throw ValidationError("qfa: initial state is not normalized");
        }
        for (const auto &[sym, u] : alphabet_) {
            if (static_cast<Eigen::Index>(u.dim()) != d) {
                throw ValidationError("qfa: operator for '" + sym + "' has the wrong dimension");
            }
            if (!u.is_unitary()) {
                throw ValidationError("qfa: operator for '" + sym + "' is not unitary");
            }
        }
        if (accept_.rows() != d || accept_.cols() != d) {
            throw ValidationError("qfa: accept projector has the wrong dimension");
        }
        if (max_abs_diff(accept_ * accept_, accept_) > tol::algebraic ||
            max_abs_diff(accept_, Matrix(accept_.adjoint())) > tol::algebraic) {
            throw ValidationError("qfa: accept is not an orthogonal projector");
        }
    }

    std::size_t dim() const { return static_cast<std::size_t>(s0_.size()); }
    const Vector &initial() const { return s0_; }
    const std::map<std::string, Operator> &alphabet() const { return alphabet_; }
    const Matrix &accept() const { return accept_; }

  private:
    Vector s0_;
    std::map<std::string, Operator> alphabet_;
    Matrix accept_;
};

/// State after reading `word` (first symbol applied first).
inline Vector qfa_evolve(const QFA &a, const std::vector<std::string> &word) {
    Vector s = a.initial();
    for (const auto &sym : word) {
        const auto it = a.alphabet().find(sym);
        if (it == a.alphabet().end()) {
            throw ValidationError("qfa: unknown symbol '" + sym + "'");
        }
        s = it->second.matrix() * s;
    }
    return s;
}

/// ‖accept · U_wn ··· U_w1 s₀‖².
inline double qfa_run(const QFA &a, const std::vector<std::string> &word) {
    return (a.accept() * qfa_evolve(a, word)).squaredNorm();
}

} // namespace qgame::games
