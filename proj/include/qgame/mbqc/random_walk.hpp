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

/// @file random_walk.hpp
/// Pauli tactics from pairs of σH transfers. Each pair contributes a random
/// Pauli, so the accumulated byproduct walks over {I, X, X', X''} until it
/// lands on the requested vertex.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qgame/core.hpp"
#include "qgame/mbqc/constructions.hpp"
#include "qgame/mbqc/pauli.hpp"
#include "qgame/random.hpp"

namespace qgame::mbqc {

/// Step cap exceeded before the walk reached its target.
class CapExceeded : public Error {
  public:
    using Error::Error;
};

inline constexpr std::size_t kDefaultStepCap = 10'000;

/// Probabilities of I, X, X', X'' (kAllPaulis order) for one step.
using StepLaw = std::array<double, 4>;

inline constexpr StepLaw kUniformStepLaw{0.25, 0.25, 0.25, 0.25};

struct WalkResult {
    std::size_t steps = 0;
    std::vector<PauliTag> trace; ///< accumulated tag after each step, mod phase
};

namespace detail {

inline Pauli draw_pauli(Rng &rng, const StepLaw &law) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        acc += law[k];
        if (u < acc) {
            return kAllPaulis[k];
        }
    }
    return kAllPaulis[3];
}

inline void check_law(const StepLaw &law) {
    double total = 0.0;
    for (double p : law) {
        if (!(p >= 0.0)) {
            throw ValidationError("step law has a negative weight");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > tol::algebraic) {
        throw ValidationError("step law does not sum to 1");
    }
}

} // namespace detail

/// Composes random single-qubit Pauli steps until the accumulated tag equals
/// `target` up to phase. A target of I is reached after 0 steps.
inline WalkResult implement_pauli_randomwalk(const PauliTag &target, Rng &rng, const StepLaw &law = kUniformStepLaw,
                                             std::size_t cap = kDefaultStepCap) {
    if (target.n_qubits() != 1) {
        throw ValidationError("random walk target must be a single-qubit tag");
    }
    detail::check_law(law);
    WalkResult r;
    PauliTag acc = PauliTag::identity(1);
    while (!acc.equal_mod_phase(target)) {
        if (r.steps == cap) {
            throw CapExceeded("random walk exceeded " + std::to_string(cap) + " steps");
        }
        acc = (PauliTag::single(detail::draw_pauli(rng, law)) * acc).mod_phase();
        r.trace.push_back(acc);
        ++r.steps;
    }
    return r;
}

/// (3/4)^n: probability that the uniform walk towards a non-identity vertex
/// is still running after n steps.
inline double survival_model(std::size_t n) { return std::pow(0.75, static_cast<double>(n)); }

/// Law of the byproduct of a pair of σH transfers, from exhaustive branch
/// enumeration on a fixed input (branch probabilities are input-independent).
inline StepLaw empirical_pair_byproduct_law(TransferVariant v = TransferVariant::standard) {
    const QState input = adjoin_zero(QState::zero(1));
    StepLaw law{0.0, 0.0, 0.0, 0.0};
    for (const auto &first : state_transfer_sigma_h(input, 0, 1, v)) {
        const QState mid = adjoin_zero(first.branch.post_state);
        for (const auto &second : state_transfer_sigma_h(mid, 0, 1, v)) {
            const PauliTag pair = compose_transfer_byproducts(first.byproduct, second.byproduct);
            const double p = first.branch.probability * second.branch.probability;
            law[static_cast<std::size_t>(pair.op(0))] += p;
        }
    }
    return law;
}

struct CorrectionResult {
    QState state;
    std::size_t steps = 0; ///< transfer pairs performed
    PauliTag applied;      ///< accumulated Pauli, mod phase
};

/// Applies the Pauli `target` to qubit `q` using only σH transfer pairs:
/// repeats sampled pairs until the tracked byproduct equals `target`.
inline CorrectionResult correct_by_transfers(const QState &state, std::size_t q, const PauliTag &target, Rng &rng,
                                             std::size_t cap = kDefaultStepCap) {
    if (target.n_qubits() != 1) {
        throw ValidationError("correction target must be a single-qubit tag");
    }
    CorrectionResult r{state, 0, PauliTag::identity(1)};
    while (!r.applied.equal_mod_phase(target)) {
        if (r.steps == cap) {
            throw CapExceeded("transfer correction exceeded " + std::to_string(cap) + " pairs");
        }
        const TransferOutcome a = transfer_sigma_h_inplace(r.state, q, rng);
        const TransferOutcome b = transfer_sigma_h_inplace(a.branch.post_state, q, rng);
        r.applied = (compose_transfer_byproducts(a.byproduct, b.byproduct) * r.applied).mod_phase();
        r.state = b.branch.post_state;
        ++r.steps;
    }
    return r;
}

} // namespace qgame::mbqc
