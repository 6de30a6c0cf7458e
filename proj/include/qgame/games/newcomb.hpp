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

/// @file newcomb.hpp
/// Newcomb circuits. Upper wire: the human's tactics (control). Lower wire:
/// Omega's measuring qubit, prepared |0⟩, passed through an optional breaker
/// and the alliance, then read out in the computational basis.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qgame/core.hpp"
#include "qgame/gates.hpp"
#include "qgame/measure.hpp"
#include "qgame/random.hpp"

namespace qgame::games {

enum class Breaker {
    absent,
    identity, ///< I box of the I/NOT switch
    not_gate, ///< NOT box of the I/NOT switch
    qutrojan, ///< H before and after the alliance on the lower wire
};

inline const char *to_string(Breaker b) {
    switch (b) {
    case Breaker::absent:
        return "absent";
    case Breaker::identity:
        return "I";
    case Breaker::not_gate:
        return "NOT";
    case Breaker::qutrojan:
        return "qutrojan";
    }
    return "?";
}

inline std::optional<Breaker> parse_breaker(std::string_view s) {
    for (auto b : {Breaker::absent, Breaker::identity, Breaker::not_gate, Breaker::qutrojan}) {
        if (s == to_string(b)) {
            return b;
        }
    }
    if (s == "none") {
        return Breaker::absent;
    }
    if (s == "not") {
        return Breaker::not_gate;
    }
    return std::nullopt;
}

struct NewcombConfig {
    int control = 1; ///< 1 = male tactics, 0 = female tactics
    Breaker breaker = Breaker::absent;
};

/// Law of the lower-wire bit.
struct NewcombResult {
    std::array<double, 2> p{0.0, 0.0};
    QState final_state = QState::zero(2); ///< before the readout
};

namespace detail {

inline void check_config(const NewcombConfig &cfg) {
    if (cfg.control != 0 && cfg.control != 1) {
        throw ValidationError("newcomb: control must be 0 or 1");
    }
}

} // namespace detail

/// Exact run of Fig. 2 (breaker absent, I or NOT) or Fig. 3 (qutrojan).
inline NewcombResult newcomb_run(const NewcombConfig &cfg, const GateSet &g = GateSet::canonical()) {
    detail::check_config(cfg);
    QState s = tensor(QState::basis(1, static_cast<std::size_t>(cfg.control)), QState::zero(1));
    switch (cfg.breaker) {
    case Breaker::absent:
    case Breaker::identity:
        break;
    case Breaker::not_gate:
        s = apply_gate(s, g.not_gate, {1});
        break;
    case Breaker::qutrojan:
        s = apply_gate(s, g.hadamard, {1});
        break;
    }
    s = apply_gate(s, g.cnot_alliance, {0, 1});
    if (cfg.breaker == Breaker::qutrojan) {
        s = apply_gate(s, g.hadamard, {1});
    }
    NewcombResult r;
    r.final_state = s;
    for (const auto &b : measure_enumerate(s, observable(ObservableLabel::Xp), {1})) {
        r.p[static_cast<std::size_t>(b.outcomes[0].bit())] += b.probability;
    }
    return r;
}

/// Shot counts of the lower bit.
struct NewcombSample {
    std::array<std::uint64_t, 2> counts{0, 0};
    std::uint64_t shots = 0;
};

/// Repeated readouts. With `p_not` set, the human throws the I/NOT switch at
/// random each shot (NOT with probability p_not); otherwise cfg.breaker is
/// used as given.
inline NewcombSample newcomb_sample(const NewcombConfig &cfg, std::uint64_t shots, Rng &rng,
                                    std::optional<double> p_not = std::nullopt) {
    detail::check_config(cfg);
    if (p_not && (!(*p_not >= 0.0) || *p_not > 1.0)) {
        throw ValidationError("newcomb: NOT probability outside [0,1]");
    }
    if (p_not && cfg.breaker == Breaker::qutrojan) {
        throw ValidationError("newcomb: the qutrojan excludes the I/NOT switch");
    }
    NewcombConfig with_i = cfg;
    NewcombConfig with_not = cfg;
    if (p_not) {
        with_i.breaker = Breaker::identity;
        with_not.breaker = Breaker::not_gate;
    }
    const auto law_i = newcomb_run(with_i).p;
    const auto law_not = newcomb_run(with_not).p;
    NewcombSample out;
    out.shots = shots;
    for (std::uint64_t k = 0; k < shots; ++k) {
        const bool use_not = p_not && bernoulli(rng, *p_not);
        const auto &law = use_not ? law_not : law_i;
        out.counts[uniform01(rng) < law[0] ? 0 : 1] += 1;
    }
    return out;
}

} // namespace qgame::games
