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

/// @file measure.hpp
/// Gate application and projective measurement of involutive observables,
/// either sampled (Born rule) or with every possible branch enumerated.

#pragma once

#include <string>
#include <vector>

#include "qgame/core.hpp"
#include "qgame/gates.hpp"
#include "qgame/random.hpp"

namespace qgame {

/// One recorded measurement result. Outcome +1 reports as bit 0, −1 as bit 1.
struct Outcome {
    std::string label;
    int sign = 1;

    int bit() const { return sign > 0 ? 0 : 1; }
    bool operator==(const Outcome &) const = default;
};

/// One outcome trajectory.
struct Branch {
    std::vector<Outcome> outcomes;
    double probability = 1.0;
    QState post_state;
};

inline QState apply_gate(const QState &state, const Operator &gate, const std::vector<std::size_t> &targets) {
    if (gate.dim() != (std::size_t{1} << targets.size())) {
        throw ValidationError("apply_gate: gate dimension " + std::to_string(gate.dim()) + " does not match " +
                              std::to_string(targets.size()) + " target qubit(s)");
    }
    return QState(detail::apply_local(state.amplitudes(), gate.matrix(), targets));
}

namespace detail {

inline void check_observable_targets(const QState &state, const Observable &obs,
                                     const std::vector<std::size_t> &targets) {
    check_targets(state.n_qubits(), targets);
    if (obs.n_qubits() != targets.size()) {
        throw ValidationError("observable " + obs.label() + " acts on " + std::to_string(obs.n_qubits()) +
                              " qubit(s) but " + std::to_string(targets.size()) + " target(s) given");
    }
}

} // namespace detail

/// Branch with the given outcome sign; throws ImpossibleBranch when its
/// probability is below 1e-14.
inline Branch measure_outcome(const QState &state, const Observable &obs, const std::vector<std::size_t> &targets,
                              int sign) {
    detail::check_observable_targets(state, obs, targets);
    const int s = sign > 0 ? 1 : -1;
    Vector projected = detail::apply_local(state.amplitudes(), obs.projector(s), targets);
    const double p = projected.squaredNorm();
    if (p < tol::impossible) {
        throw ImpossibleBranch("outcome " + std::to_string(s) + " of " + obs.label() + " has probability " +
                               std::to_string(p));
    }
    return Branch{{Outcome{obs.label(), s}}, p, QState(std::move(projected))};
}

/// Every outcome of nonzero probability, +1 first.
inline std::vector<Branch> measure_enumerate(const QState &state, const Observable &obs,
                                             const std::vector<std::size_t> &targets) {
    detail::check_observable_targets(state, obs, targets);
    std::vector<Branch> out;
    for (int s : {1, -1}) {
        Vector projected = detail::apply_local(state.amplitudes(), obs.projector(s), targets);
        const double p = projected.squaredNorm();
        if (p >= tol::impossible) {
            out.push_back(Branch{{Outcome{obs.label(), s}}, p, QState(std::move(projected))});
        }
    }
    return out;
}

/// One outcome drawn with its Born probability.
inline Branch measure_sample(const QState &state, const Observable &obs, const std::vector<std::size_t> &targets,
                             Rng &rng) {
    detail::check_observable_targets(state, obs, targets);
    const Vector plus = detail::apply_local(state.amplitudes(), obs.projector(1), targets);
    const double p_plus = plus.squaredNorm();
    int s = uniform01(rng) < p_plus ? 1 : -1;
    // Rounding can land a draw on a branch of probability < 1e-14.
    if (s < 0 && 1.0 - p_plus < tol::impossible) {
        s = 1;
    } else if (s > 0 && p_plus < tol::impossible) {
        s = -1;
    }
    return measure_outcome(state, obs, targets, s);
}

} // namespace qgame
