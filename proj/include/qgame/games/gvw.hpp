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

/// @file gvw.hpp
/// Two-box quantum gambling. Alice prepares cosθ|a⟩ + sinθ|b⟩ and hands the
/// boxes to Bob. Bob either opens box B (found: Alice pays 1, empty: Bob
/// pays 1) or, with probability p_verify, demands box A as well and tests
/// the pair against |ψ₀⟩ = (|a⟩+|b⟩)/√2 (cheat detected: Alice pays R,
/// otherwise Bob pays 1). Payoffs are reported from Bob's side.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "qgame/core.hpp"
#include "qgame/random.hpp"

namespace qgame::games {

struct GambleParams {
    double theta = std::numbers::pi / 4;
    double p_verify = 0.0;
    double reward = 1.0; ///< R
};

inline void validate(const GambleParams &g) {
    if (!std::isfinite(g.theta)) {
        throw ValidationError("gamble: theta must be finite");
    }
    if (!(g.p_verify >= 0.0 && g.p_verify <= 1.0)) {
        throw ValidationError("gamble: p_verify outside [0,1]");
    }
    if (!(g.reward > 0.0) || !std::isfinite(g.reward)) {
        throw ValidationError("gamble: reward R must be positive and finite");
    }
}

/// P(particle found in B) = sin²θ.
inline double gvw_found_probability(double theta) { return std::pow(std::sin(theta), 2); }

/// 1 − |⟨ψ₀|ψθ⟩|² = (1 − sin2θ)/2.
/// Written via sin2θ so that honest Alice gives exactly 0.
inline double gvw_detection_probability(double theta) { return 0.5 * (1.0 - std::sin(2.0 * theta)); }

struct Payoffs {
    double bob = 0.0;
    double alice = 0.0;
};

/// Exact expectation over the four events.
inline Payoffs gvw_expected_payoffs(const GambleParams &g) {
    validate(g);
    const double found = gvw_found_probability(g.theta);
    const double detected = gvw_detection_probability(g.theta);
    const double open_b = found * 1.0 + (1.0 - found) * -1.0;
    const double verify = detected * g.reward + (1.0 - detected) * -1.0;
    const double bob = (1.0 - g.p_verify) * open_b + g.p_verify * verify;
    return {bob, -bob};
}

// ---------------------------------------------------------------------------
// Monte Carlo

/// Rounds per RNG stream. Stream k serves rounds [k·kChunk, (k+1)·kChunk),
/// so the result depends only on (seed, trials), never on scheduling.
inline constexpr std::uint64_t kGambleChunk = 1U << 14;

struct GambleSample {
    std::uint64_t trials = 0;
    /// Counts of Bob's payoff: +1 (found), −1 (empty or undetected), +R.
    std::array<std::uint64_t, 3> counts{0, 0, 0};
    double mean_bob = 0.0;
    double half_width = 0.0; ///< 4 · standard error
};

inline GambleSample gvw_simulate(const GambleParams &g, std::uint64_t trials, std::uint64_t seed) {
    validate(g);
    if (trials == 0) {
        throw ValidationError("gamble: trials must be at least 1");
    }
    const double found = gvw_found_probability(g.theta);
    const double detected = gvw_detection_probability(g.theta);
    GambleSample s;
    s.trials = trials;
    for (std::uint64_t start = 0, k = 0; start < trials; start += kGambleChunk, ++k) {
        Rng rng = make_stream(seed, k);
        const std::uint64_t end = std::min(trials, start + kGambleChunk);
        for (std::uint64_t i = start; i < end; ++i) {
            if (uniform01(rng) < g.p_verify) {
                s.counts[uniform01(rng) < detected ? 2 : 1] += 1;
            } else {
                s.counts[uniform01(rng) < found ? 0 : 1] += 1;
            }
        }
    }
    const double n = static_cast<double>(trials);
    const std::array<double, 3> value{1.0, -1.0, g.reward};
    double sum = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        sum += value[j] * static_cast<double>(s.counts[j]);
    }
    s.mean_bob = sum / n;
    if (trials > 1) {
        double ss = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            ss += static_cast<double>(s.counts[j]) * std::pow(value[j] - s.mean_bob, 2);
        }
        s.half_width = 4.0 * std::sqrt(ss / (n - 1.0) / n);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Best responses

/// Relative bracket of the Brent searches, 2^(1−28) ≈ 7.5e-9.
inline constexpr int kBrentBits = 28;

struct BestResponse {
    double theta = 0.0;
    double e_bob = 0.0;
};

/// Alice's cheat minimizing E_bob for a known p_verify.
inline BestResponse gvw_best_response(double p_verify, double reward) {
    validate({0.0, p_verify, reward});
    auto e = [&](double th) { return gvw_expected_payoffs({th, p_verify, reward}).bob; };
    std::uintmax_t iters = 200;
    auto [th, val] = boost::math::tools::brent_find_minima(e, 0.0, std::numbers::pi / 2, kBrentBits, iters);
    // Brent never evaluates the end points; the minimum sits on one when p_verify = 0.
    for (double edge : {0.0, std::numbers::pi / 2}) {
        if (e(edge) < val) {
            th = edge;
            val = e(edge);
        }
    }
    return {th, val};
}

enum class MoveOrder {
    bob_first,   ///< Bob commits to p_verify, Alice answers: max_p min_θ
    alice_first, ///< Alice commits to θ, Bob answers: min_θ max_p
};

inline const char *to_string(MoveOrder o) { return o == MoveOrder::bob_first ? "bob_first" : "alice_first"; }

struct GambleValue {
    MoveOrder order = MoveOrder::bob_first;
    double p_verify = 0.0;
    double theta = 0.0;
    double e_bob = 0.0;
};

inline GambleValue gvw_value(double reward, MoveOrder order) {
    validate({0.0, 0.0, reward});
    if (order == MoveOrder::bob_first) {
        auto neg = [&](double p) { return -gvw_best_response(p, reward).e_bob; };
        std::uintmax_t iters = 200;
        const auto [p, v] = boost::math::tools::brent_find_minima(neg, 0.0, 1.0, kBrentBits, iters);
        const auto br = gvw_best_response(p, reward);
        return {order, p, br.theta, -v};
    }
    // E is affine in p_verify, so Bob's answer is p ∈ {0, 1}. On [0, π/4]
    // E(θ,0) = −cos2θ rises and E(θ,1) falls; the max is smallest where they
    // cross.
    auto gap = [&](double th) {
        return gvw_expected_payoffs({th, 0.0, reward}).bob - gvw_expected_payoffs({th, 1.0, reward}).bob;
    };
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto [lo, hi] = boost::math::tools::toms748_solve(gap, 0.0, std::numbers::pi / 4, tol, iters);
    const double th = 0.5 * (lo + hi);
    const double e0 = gvw_expected_payoffs({th, 0.0, reward}).bob;
    const double e1 = gvw_expected_payoffs({th, 1.0, reward}).bob;
    return {order, e0 >= e1 ? 0.0 : 1.0, th, std::max(e0, e1)};
}

struct FairLimit {
    double reward = 0.0;
    GambleValue bob_first;
    GambleValue alice_first;
    bool found = false;
};

/// Walks R over decades 1, 10, …, 10^max_decade and returns the first R whose
/// value has |E_bob| < tolerance under both move orders.
inline FairLimit gvw_fair_limit(double tolerance = 1e-3, int max_decade = 12) {
    FairLimit f;
    for (int k = 0; k <= max_decade; ++k) {
        const double r = std::pow(10.0, k);
        f.reward = r;
        f.bob_first = gvw_value(r, MoveOrder::bob_first);
        f.alice_first = gvw_value(r, MoveOrder::alice_first);
        if (std::abs(f.bob_first.e_bob) < tolerance && std::abs(f.alice_first.e_bob) < tolerance) {
            f.found = true;
            return f;
        }
    }
    return f;
}

} // namespace qgame::games
