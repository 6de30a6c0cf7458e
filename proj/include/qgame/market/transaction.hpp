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

/// @file transaction.hpp
/// The transaction projector T_σ for a caller-supplied division σ of the
/// traders into buyers (projected onto |q⟩) and sellers (onto |p⟩). Grid
/// deltas 1/√step stand in for the improper eigenstates.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qgame/core.hpp"
#include "qgame/market/strategy.hpp"

namespace qgame::market {

class ImpossibleTransaction : public Error {
  public:
    using Error::Error;
};

struct Buy {
    double q = 0.0; ///< log-price at which the trader buys
};

struct Sell {
    double p = 0.0;
};

using Side = std::variant<Buy, Sell>;

struct TransactionOutcome {
    WaveFunction1D strategy; ///< grid delta, q rep for buyers, p rep for sellers
    double amplitude = 0.0;  ///< |⟨x|ψ⟩|²·step
    std::size_t node = 0;
    double snapped = 0.0;  ///< node value actually used
    double rounding = 0.0; ///< |requested − snapped|
};

/// Probabilities below this are treated as an impossible transaction.
inline constexpr double kImpossibleTransaction = 1e-300;

namespace detail {

inline std::size_t nearest_node(const WaveFunction1D &w, double x) {
    const double t = std::round((x - w.origin()) / w.step());
    if (t < 0.0 || t > static_cast<double>(w.size() - 1)) {
        throw ValidationError("transaction: price " + std::to_string(x) + " lies outside the grid");
    }
    return static_cast<std::size_t>(t);
}

inline TransactionOutcome project_onto_node(const WaveFunction1D &w, double x) {
    const std::size_t k = nearest_node(w, x);
    const double amp = std::norm(w.samples[static_cast<Eigen::Index>(k)]) * w.step() / w.norm2();
    if (!(amp > kImpossibleTransaction)) {
        throw ImpossibleTransaction("transaction: zero amplitude at " + std::string(to_string(w.rep)) + " = " +
                                    std::to_string(w.node(k)));
    }
    WaveFunction1D delta{w.grid, w.rep, w.hbar, Vector::Zero(static_cast<Eigen::Index>(w.size()))};
    delta.samples[static_cast<Eigen::Index>(k)] = 1.0 / std::sqrt(w.step());
    return {std::move(delta), amp, k, w.node(k), std::abs(x - w.node(k))};
}

} // namespace detail

/// Projects one trader. Buyers must be given in the q representation; sellers
/// may be given in either (q strategies are transformed first).
inline TransactionOutcome project_trader(const WaveFunction1D &psi, const Side &side) {
    psi.validate();
    if (const auto *b = std::get_if<Buy>(&side)) {
        if (psi.rep != Rep::q) {
            throw ValidationError("transaction: buyer strategies must be in the q representation");
        }
        return detail::project_onto_node(psi, b->q);
    }
    const auto &s = std::get<Sell>(side);
    return detail::project_onto_node(psi.rep == Rep::p ? psi : to_momentum(psi), s.p);
}

/// T_σ applied trader by trader.
inline std::vector<TransactionOutcome> transaction_project(const std::vector<WaveFunction1D> &traders,
                                                           const std::vector<Side> &division) {
    if (traders.size() != division.size()) {
        throw ValidationError("transaction: one side per trader required");
    }
    std::vector<TransactionOutcome> out;
    out.reserve(traders.size());
    for (std::size_t i = 0; i < traders.size(); ++i) {
        out.push_back(project_trader(traders[i], division[i]));
    }
    return out;
}

} // namespace qgame::market
