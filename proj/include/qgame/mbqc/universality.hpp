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

/// @file universality.hpp
/// Named checks over the gate identities and every measurement-only
/// construction. Failures are recorded with their measured deviation, never
/// thrown.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgame/core.hpp"
#include "qgame/gates.hpp"
#include "qgame/measure.hpp"
#include "qgame/mbqc/constructions.hpp"
#include "qgame/mbqc/pauli.hpp"
#include "qgame/random.hpp"

namespace qgame {

struct CheckRecord {
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

inline CheckRecord make_check(std::string name, double deviation, double tolerance, std::string detail = {}) {
    const bool ok = std::isfinite(deviation) && deviation <= tolerance;
    return CheckRecord{std::move(name), ok, deviation, tolerance, std::move(detail)};
}

} // namespace qgame

namespace qgame::mbqc {

struct UniversalityOptions {
    GateSet gates = GateSet::canonical();
    std::uint64_t seed = 20070319;
    std::size_t random_inputs = 100;
    std::size_t random_cnot_inputs = 20;
    std::vector<std::string> only; ///< empty = every check
};

struct UniversalityReport {
    std::vector<CheckRecord> checks;

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckRecord &c) { return c.passed; });
    }
};

namespace detail {

inline double one_minus_fidelity(const QState &a, const QState &b) { return 1.0 - fidelity(a, b); }

/// Worst 1 − F between each branch output and byproduct·gate·input, plus the
/// deviation of the branch probabilities from summing to 1.
template <class Run>
std::pair<double, std::size_t> transfer_deviation(const Matrix &gate, const std::vector<QState> &inputs, Run &&run) {
    double worst = 0.0;
    std::size_t branches = 0;
    for (const auto &in : inputs) {
        const auto outcomes = run(adjoin_zero(in));
        branches = std::max(branches, outcomes.size());
        double total = 0.0;
        for (const auto &o : outcomes) {
            total += o.branch.probability;
            const QState expected(o.byproduct.matrix() * gate * in.amplitudes());
            worst = std::max(worst, one_minus_fidelity(o.branch.post_state, expected));
        }
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return {worst, branches};
}

inline std::vector<QState> random_inputs(std::size_t n_qubits, std::size_t count, Rng &rng) {
    std::vector<QState> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(random_state(n_qubits, rng));
    }
    return out;
}

} // namespace detail

/// Names of every check, in execution order.
inline std::vector<std::string> universality_check_names() {
    return {"xpp_convention",   "hnh",          "xprime_hxh",       "h_squared",        "g_from_t",
            "g_involution",     "alliance_copy", "transfer_sigma_h", "transfer_sigma_h_swapped",
            "sigma_t",          "sigma_t_conjugated", "cnot_mbqc",  "implicit_xprime",  "composite_demand",
            "composite_supply", "byproduct_algebra"};
}

inline UniversalityReport verify_universality(const UniversalityOptions &opt = {}) {
    using L = ObservableLabel;
    const GateSet &g = opt.gates;
    const Matrix x = pauli::x();
    const Matrix y = pauli::y();
    const Matrix z = pauli::z();
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix &h = g.hadamard.matrix();
    const Matrix &t = g.t_gate.matrix();
    const Matrix gm = observable(L::G).matrix();

    std::vector<std::pair<std::string, std::function<CheckRecord()>>> registry;
    auto add = [&](std::string name, std::function<CheckRecord()> f) { registry.emplace_back(std::move(name), std::move(f)); };

    add("xpp_convention", [&] {
        return make_check("xpp_convention", xpp_convention_deviation(g), tol::exact, "T^-1 X T = (X - X'')/sqrt2 with X'' = sigma_y");
    });
    add("hnh", [&] {
        Matrix expected = Matrix::Zero(2, 2);
        expected(0, 0) = -kI;
        expected(1, 1) = kI;
        return make_check("hnh", max_abs_diff(h * g.not_gate.matrix() * h, expected), tol::exact, "H NOT H = diag(-i, i)");
    });
    add("xprime_hxh", [&] {
        return make_check("xprime_hxh", max_abs_diff(h * x * h.adjoint(), z), tol::exact, "X' = H X H^dagger = sigma_z");
    });
    add("h_squared", [&] { return make_check("h_squared", max_abs_diff(h * h, -id), tol::exact, "H^2 = -I"); });
    add("g_from_t", [&] {
        const Matrix lhs = h * ((x - y) / std::sqrt(2.0)) * h.adjoint();
        return make_check("g_from_t", max_abs_diff(lhs, gm), tol::exact, "H (X - X'')/sqrt2 H^dagger = G");
    });
    add("g_involution", [&] { return make_check("g_involution", max_abs_diff(gm * gm, id), tol::exact, "G^2 = I"); });
    add("alliance_copy", [&] {
        double worst = 0.0;
        for (std::size_t m = 0; m < 2; ++m) {
            const QState in = tensor(QState::basis(1, m), QState::basis(1, 0));
            const QState out = apply_gate(in, g.cnot_alliance, {0, 1});
            const QState copy = tensor(QState::basis(1, m), QState::basis(1, m));
            worst = std::max(worst, detail::one_minus_fidelity(out, copy));
        }
        return make_check("alliance_copy", worst, tol::algebraic, "C|m>|0> = |m>|m> up to phase");
    });
    add("transfer_sigma_h", [&] {
        Rng rng = make_stream(opt.seed, 1);
        const auto inputs = detail::random_inputs(1, opt.random_inputs, rng);
        auto [dev, n] = detail::transfer_deviation(h, inputs, [](const QState &s) { return state_transfer_sigma_h(s, 0, 1); });
        return make_check("transfer_sigma_h", n == 8 ? dev : 1.0, tol::circuit, std::to_string(n) + " branches per input");
    });
    add("transfer_sigma_h_swapped", [&] {
        Rng rng = make_stream(opt.seed, 2);
        const auto inputs = detail::random_inputs(1, opt.random_inputs, rng);
        auto [dev, n] = detail::transfer_deviation(
            h, inputs, [](const QState &s) { return state_transfer_sigma_h(s, 0, 1, TransferVariant::swapped); });
        return make_check("transfer_sigma_h_swapped", n == 4 ? dev : 1.0, tol::circuit,
                          std::to_string(n) + " possible branches per input");
    });
    add("sigma_t", [&] {
        Rng rng = make_stream(opt.seed, 3);
        const auto inputs = detail::random_inputs(1, opt.random_inputs, rng);
        auto [dev, n] = detail::transfer_deviation(t, inputs, [](const QState &s) { return implement_sigma_t(s, 0, 1); });
        return make_check("sigma_t", n == 8 ? dev : 1.0, tol::circuit, std::to_string(n) + " branches per input");
    });
    add("sigma_t_conjugated", [&] {
        Rng rng = make_stream(opt.seed, 4);
        const auto inputs = detail::random_inputs(1, opt.random_inputs, rng);
        auto [dev, n] = detail::transfer_deviation(
            t, inputs, [](const QState &s) { return implement_sigma_t(s, 0, 1, SigmaTRoute::conjugated_t); });
        return make_check("sigma_t_conjugated", n == 8 ? dev : 1.0, tol::circuit, std::to_string(n) + " branches per input");
    });
    add("cnot_mbqc", [&] {
        Rng rng = make_stream(opt.seed, 5);
        std::vector<QState> inputs;
        for (std::size_t b = 0; b < 4; ++b) {
            inputs.push_back(QState::basis(2, b));
        }
        for (auto &s : detail::random_inputs(2, opt.random_cnot_inputs, rng)) {
            inputs.push_back(std::move(s));
        }
        double worst = 0.0;
        std::size_t branches = 16;
        for (const auto &in : inputs) {
            // register (ctrl, anc, tgt)
            const QState reg = mbqc::move_qubit(adjoin_zero(in), 2, 1);
            const auto outcomes = mbqc_cnot(reg, 0, 1, 2);
            branches = std::min(branches, outcomes.size());
            double total = 0.0;
            for (const auto &o : outcomes) {
                total += o.branch.probability;
                const QState expected(o.byproduct.matrix() * cnot_standard() * in.amplitudes());
                worst = std::max(worst, detail::one_minus_fidelity(o.branch.post_state, expected));
            }
            worst = std::max(worst, std::abs(total - 1.0));
        }
        return make_check("cnot_mbqc", branches == 16 ? worst : 1.0, tol::circuit,
                          std::to_string(inputs.size()) + " inputs, all 16 branches");
    });
    add("implicit_xprime", [&] {
        Rng rng = make_stream(opt.seed, 6);
        double worst = 0.0;
        for (const auto &in : detail::random_inputs(1, opt.random_inputs, rng)) {
            // register (q, anc)
            double p_plus = 0.0;
            for (const auto &o : implicit_xprime(adjoin_zero(in), 0, 1)) {
                p_plus += o.inferred_sign > 0 ? o.branch.probability : 0.0;
            }
            const double direct = std::norm(in[0]);
            worst = std::max(worst, std::abs(p_plus - direct));
        }
        return make_check("implicit_xprime", worst, tol::algebraic, "total-variation distance to direct X'");
    });
    for (auto side : {MarketSide::demand, MarketSide::supply}) {
        const std::string name = side == MarketSide::demand ? "composite_demand" : "composite_supply";
        add(name, [&, side, name] {
            Rng rng = make_stream(opt.seed, side == MarketSide::demand ? 7 : 8);
            const Observable direct = composite_observable(side);
            double worst = 0.0;
            for (const auto &in : detail::random_inputs(2, opt.random_inputs, rng)) {
                const auto conj = composite_same_side(in, 0, 1, side);
                const auto ref = measure_enumerate(in, direct, {0, 1});
                if (conj.size() != ref.size()) {
                    worst = 1.0;
                    continue;
                }
                for (std::size_t k = 0; k < conj.size(); ++k) {
                    worst = std::max(worst, std::abs(conj[k].probability - ref[k].probability));
                    worst = std::max(worst, detail::one_minus_fidelity(conj[k].post_state, ref[k].post_state));
                }
            }
            return make_check(name, worst, tol::algebraic, std::string("conjugated vs direct ") + composite_label(side));
        });
    }
    add("byproduct_algebra", [&] {
        const Program local = transfer_program(0, 1);
        const Matrix hc = GateSet::canonical().hadamard.matrix();
        std::size_t mismatches = 0;
        std::size_t pairs = 0;
        for (const auto &s1 : all_sign_patterns(3)) {
            const Matrix k1 = branch_kraus(local, 2, {0}, s1);
            const auto t1 = identify_pauli(k1 * hc.adjoint());
            for (const auto &s2 : all_sign_patterns(3)) {
                const Matrix k2 = branch_kraus(local, 2, {0}, s2);
                const auto t2 = identify_pauli(k2 * hc.adjoint());
                const auto composite = identify_pauli(k2 * k1);
                ++pairs;
                if (!t1 || !t2 || !composite ||
                    !composite->tag.equal_mod_phase(compose_transfer_byproducts(t1->tag, t2->tag))) {
                    ++mismatches;
                }
            }
        }
        return make_check("byproduct_algebra", static_cast<double>(mismatches), 0.0,
                          std::to_string(pairs) + " branch pairs composed");
    });

    UniversalityReport report;
    for (auto &[name, f] : registry) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), name) == opt.only.end()) {
            continue;
        }
        report.checks.push_back(f());
    }
    return report;
}

} // namespace qgame::mbqc
