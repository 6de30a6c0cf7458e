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

/// @file constructions.hpp
/// Measurement-only tactics built from X, X', G and X⊗X' measurements
/// (state transfer model):
///
///   σH  : (X on anc) (X⊗X' on src,anc) (X' on src), output on anc
///   σT  : (H on src) (X on anc) (X⊗X' on src,anc) (G on src), output on anc
///   CNOT: (X on anc) (X'⊗X on anc,tgt) (X'⊗X on ctrl,anc) (X' on anc)
///
/// Each branch realizes byproduct·gate up to a global phase. The byproduct
/// is read off the branch's Kraus map, computed on a minimal local register
/// and matched against every Pauli string.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qgame/core.hpp"
#include "qgame/gates.hpp"
#include "qgame/mbqc/pauli.hpp"
#include "qgame/mbqc/program.hpp"
#include "qgame/random.hpp"

namespace qgame::mbqc {

/// A measurement branch together with the tactic it realized.
struct TransferOutcome {
    Branch branch;
    PauliTag byproduct;         ///< phase quotiented out
    Operator realized_tactic;   ///< byproduct·gate on the output qubit(s)
    std::vector<std::size_t> output_qubits; ///< positions in branch.post_state
};

enum class TransferVariant {
    standard, ///< X on anc, X⊗X', X' on src
    swapped,  ///< X' on anc, X'⊗X, X on src
};

enum class SigmaTRoute {
    hadamard_g,   ///< H on src, X⊗X', then G
    conjugated_t, ///< X'⊗X', then T⁻¹XT
};

enum class MarketSide {
    demand, ///< X⊗X
    supply, ///< X'⊗X'
};

/// |0⟩⟨0|⊗I + |1⟩⟨1|⊗σx, the textbook CNOT realized by the measurement
/// construction (the alliance differs from it by a controlled phase).
inline Matrix cnot_standard() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

namespace detail {

inline Observable obs(ObservableLabel l) { return observable(l); }

inline Observable obs2(ObservableLabel a, ObservableLabel b) { return tensor(observable(a), observable(b)); }

inline void require_fresh(const QState &state, std::size_t anc) {
    qgame::detail::check_targets(state.n_qubits(), {anc});
    const auto split = split_qubit(state.amplitudes(), anc);
    if (split.residual > tol::algebraic || std::norm(split.qubit(0)) < 1.0 - tol::algebraic) {
        throw ValidationError("ancilla qubit " + std::to_string(anc) + " is not a fresh |0>");
    }
}

inline void require_distinct(std::initializer_list<std::size_t> wires) {
    std::vector<std::size_t> w(wires);
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (w[i] == w[j]) {
                throw ValidationError("wire collision: qubit " + std::to_string(w[i]) + " used twice");
            }
        }
    }
}

/// Position of `q` after removing `removed` from the register.
inline std::size_t after_removal(std::size_t q, std::size_t removed) { return q > removed ? q - 1 : q; }

/// Kraus map of `local` for `signs`, compared with `gate`.
inline std::pair<PauliTag, Operator> identify_branch(const Program &local, std::size_t n_local,
                                                     const std::vector<std::size_t> &data, const std::vector<int> &signs,
                                                     const Matrix &gate) {
    const Matrix k = branch_kraus(local, n_local, data, signs);
    const auto match = identify_pauli(k * gate.adjoint());
    if (!match) {
        throw Error("branch Kraus map is not a Pauli multiple of the target gate");
    }
    PauliTag tag = match->tag.mod_phase();
    Operator realized(tag.matrix() * gate);
    return {std::move(tag), std::move(realized)};
}

inline TransferOutcome annotate(Branch b, const Program &local, std::size_t n_local, const std::vector<std::size_t> &data,
                                const Matrix &gate, std::vector<std::size_t> outputs) {
    auto [tag, realized] = identify_branch(local, n_local, data, signs_of(b), gate);
    return TransferOutcome{std::move(b), std::move(tag), std::move(realized), std::move(outputs)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Programs

inline Program transfer_program(std::size_t src, std::size_t anc, TransferVariant v = TransferVariant::standard) {
    using L = ObservableLabel;
    const L a = v == TransferVariant::standard ? L::X : L::Xp;
    const L b = v == TransferVariant::standard ? L::Xp : L::X;
    Program p;
    p.steps.emplace_back(MeasureStep{detail::obs(a), {anc}});
    p.steps.emplace_back(MeasureStep{detail::obs2(a, b), {src, anc}});
    p.steps.emplace_back(MeasureStep{detail::obs(b), {src}});
    p.discard = {src};
    return p;
}

inline Program sigma_t_program(std::size_t src, std::size_t anc, SigmaTRoute route = SigmaTRoute::hadamard_g) {
    using L = ObservableLabel;
    Program p;
    if (route == SigmaTRoute::hadamard_g) {
        p.steps.emplace_back(GateStep{GateSet::canonical().hadamard, {src}});
        p.steps.emplace_back(MeasureStep{detail::obs(L::X), {anc}});
        p.steps.emplace_back(MeasureStep{detail::obs2(L::X, L::Xp), {src, anc}});
        p.steps.emplace_back(MeasureStep{detail::obs(L::G), {src}});
    } else {
        const Matrix t = GateSet::canonical().t_gate.matrix();
        p.steps.emplace_back(MeasureStep{detail::obs(L::X), {anc}});
        p.steps.emplace_back(MeasureStep{detail::obs2(L::Xp, L::Xp), {src, anc}});
        p.steps.emplace_back(MeasureStep{Observable("T⁻¹XT", t.adjoint() * pauli::x() * t), {src}});
    }
    p.discard = {src};
    return p;
}

inline Program cnot_program(std::size_t ctrl, std::size_t anc, std::size_t tgt) {
    using L = ObservableLabel;
    Program p;
    p.steps.emplace_back(MeasureStep{detail::obs(L::X), {anc}});
    p.steps.emplace_back(MeasureStep{detail::obs2(L::Xp, L::X), {anc, tgt}});
    p.steps.emplace_back(MeasureStep{detail::obs2(L::Xp, L::X), {ctrl, anc}});
    p.steps.emplace_back(MeasureStep{detail::obs(L::Xp), {anc}});
    p.discard = {anc};
    return p;
}

/// X⊗X as (I⊗H)(X⊗X')(I⊗H), X'⊗X' as (H⊗I)(X⊗X')(H⊗I).
inline Program composite_program(std::size_t q1, std::size_t q2, MarketSide side) {
    using L = ObservableLabel;
    const Operator h = GateSet::canonical().hadamard;
    const std::size_t rotated = side == MarketSide::demand ? q2 : q1;
    Program p;
    p.steps.emplace_back(GateStep{h, {rotated}});
    p.steps.emplace_back(MeasureStep{detail::obs2(L::X, L::Xp), {q1, q2}});
    p.steps.emplace_back(GateStep{h, {rotated}});
    return p;
}

inline Program implicit_xprime_program(std::size_t q, std::size_t anc) {
    using L = ObservableLabel;
    Program p;
    p.steps.emplace_back(MeasureStep{detail::obs(L::X), {anc}});
    p.steps.emplace_back(MeasureStep{detail::obs2(L::X, L::Xp), {anc, q}});
    return p;
}

// ---------------------------------------------------------------------------
// σH state transfer

namespace detail {

inline void check_transfer_wires(const QState &state, std::size_t src, std::size_t anc) {
    if (src == anc) {
        throw ValidationError("state transfer: source and ancilla must differ");
    }
    qgame::detail::check_targets(state.n_qubits(), {src, anc});
    require_fresh(state, anc);
}

} // namespace detail

/// Every branch of the σH transfer from `src` to the fresh ancilla `anc`.
/// `src` is removed; the output sits at `output_qubits[0]`.
inline std::vector<TransferOutcome> state_transfer_sigma_h(const QState &state, std::size_t src, std::size_t anc,
                                                           TransferVariant v = TransferVariant::standard) {
    detail::check_transfer_wires(state, src, anc);
    const Program local = transfer_program(0, 1, v);
    const Matrix h = GateSet::canonical().hadamard.matrix();
    std::vector<TransferOutcome> out;
    for (auto &b : run_enumerate(transfer_program(src, anc, v), state)) {
        out.push_back(detail::annotate(std::move(b), local, 2, {0}, h, {detail::after_removal(anc, src)}));
    }
    return out;
}

inline TransferOutcome state_transfer_sigma_h(const QState &state, std::size_t src, std::size_t anc, Rng &rng,
                                              TransferVariant v = TransferVariant::standard) {
    detail::check_transfer_wires(state, src, anc);
    const Matrix h = GateSet::canonical().hadamard.matrix();
    return detail::annotate(run_sample(transfer_program(src, anc, v), state, rng), transfer_program(0, 1, v), 2, {0}, h,
                            {detail::after_removal(anc, src)});
}

/// σH on qubit `q` in place: adjoins an ancilla, transfers, and moves the
/// output back to position `q`.
inline TransferOutcome transfer_sigma_h_inplace(const QState &state, std::size_t q, Rng &rng,
                                                TransferVariant v = TransferVariant::standard) {
    const QState work = adjoin_zero(state);
    TransferOutcome t = state_transfer_sigma_h(work, q, work.n_qubits() - 1, rng, v);
    t.branch.post_state = move_qubit(t.branch.post_state, t.output_qubits[0], q);
    t.output_qubits = {q};
    return t;
}

/// Byproduct of two successive σH transfers: σ₂H·σ₁H ∝ σ₂·(Hσ₁H†).
inline PauliTag compose_transfer_byproducts(const PauliTag &first, const PauliTag &second) {
    return (second * first.conjugated_by_h()).mod_phase();
}

// ---------------------------------------------------------------------------
// σT

inline std::vector<TransferOutcome> implement_sigma_t(const QState &state, std::size_t src, std::size_t anc,
                                                      SigmaTRoute route = SigmaTRoute::hadamard_g) {
    detail::check_transfer_wires(state, src, anc);
    const Program local = sigma_t_program(0, 1, route);
    const Matrix t = GateSet::canonical().t_gate.matrix();
    std::vector<TransferOutcome> out;
    for (auto &b : run_enumerate(sigma_t_program(src, anc, route), state)) {
        out.push_back(detail::annotate(std::move(b), local, 2, {0}, t, {detail::after_removal(anc, src)}));
    }
    return out;
}

inline TransferOutcome implement_sigma_t(const QState &state, std::size_t src, std::size_t anc, Rng &rng,
                                         SigmaTRoute route = SigmaTRoute::hadamard_g) {
    detail::check_transfer_wires(state, src, anc);
    const Matrix t = GateSet::canonical().t_gate.matrix();
    return detail::annotate(run_sample(sigma_t_program(src, anc, route), state, rng), sigma_t_program(0, 1, route), 2, {0},
                            t, {detail::after_removal(anc, src)});
}

// ---------------------------------------------------------------------------
// CNOT

namespace detail {

inline void check_cnot_wires(const QState &state, std::size_t ctrl, std::size_t anc, std::size_t tgt) {
    require_distinct({ctrl, anc, tgt});
    qgame::detail::check_targets(state.n_qubits(), {ctrl, anc, tgt});
    require_fresh(state, anc);
}

/// The local Kraus map is ordered (ctrl, tgt); swap it when the register
/// holds tgt above ctrl.
inline Matrix cnot_gate_in_register_order(std::size_t ctrl, std::size_t tgt) {
    if (ctrl < tgt) {
        return cnot_standard();
    }
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    return swap * cnot_standard() * swap;
}

inline TransferOutcome annotate_cnot(Branch b, std::size_t ctrl, std::size_t anc, std::size_t tgt) {
    const Program local = cnot_program(0, 1, 2);
    auto [tag, realized] = identify_branch(local, 3, {0, 2}, signs_of(b), cnot_standard());
    const std::size_t c = after_removal(ctrl, anc);
    const std::size_t t = after_removal(tgt, anc);
    // Realized tactic expressed in register order of the surviving wires.
    Operator in_register = ctrl < tgt ? realized
                                      : Operator(kron(pauli_matrix(tag.op(1)), pauli_matrix(tag.op(0))) *
                                                 cnot_gate_in_register_order(ctrl, tgt));
    return TransferOutcome{std::move(b), std::move(tag), std::move(in_register), {c, t}};
}

} // namespace detail

/// Every branch of the measurement-based CNOT. The byproduct is ordered
/// (σa on ctrl, σb on tgt); `realized_tactic` acts on the two surviving
/// wires in register order.
inline std::vector<TransferOutcome> mbqc_cnot(const QState &state, std::size_t ctrl, std::size_t anc, std::size_t tgt) {
    detail::check_cnot_wires(state, ctrl, anc, tgt);
    std::vector<TransferOutcome> out;
    for (auto &b : run_enumerate(cnot_program(ctrl, anc, tgt), state)) {
        out.push_back(detail::annotate_cnot(std::move(b), ctrl, anc, tgt));
    }
    return out;
}

inline TransferOutcome mbqc_cnot(const QState &state, std::size_t ctrl, std::size_t anc, std::size_t tgt, Rng &rng) {
    detail::check_cnot_wires(state, ctrl, anc, tgt);
    return detail::annotate_cnot(run_sample(cnot_program(ctrl, anc, tgt), state, rng), ctrl, anc, tgt);
}

// ---------------------------------------------------------------------------
// Same-side composites

inline const char *composite_label(MarketSide side) { return side == MarketSide::demand ? "X⊗X" : "X'⊗X'"; }

/// Directly measured composite observable, for comparison.
inline Observable composite_observable(MarketSide side) {
    using L = ObservableLabel;
    return side == MarketSide::demand ? tensor(observable(L::X), observable(L::X))
                                      : tensor(observable(L::Xp), observable(L::Xp));
}

namespace detail {

inline void check_pair(const QState &state, std::size_t q1, std::size_t q2) {
    if (q1 == q2) {
        throw ValidationError("composite measurement: qubits overlap");
    }
    qgame::detail::check_targets(state.n_qubits(), {q1, q2});
}

inline Branch relabel(Branch b, MarketSide side) {
    for (auto &o : b.outcomes) {
        o.label = composite_label(side);
    }
    return b;
}

} // namespace detail

/// Both outcomes of X⊗X (demand) or X'⊗X' (supply) realized by conjugating
/// the X⊗X' measurement with H.
inline std::vector<Branch> composite_same_side(const QState &state, std::size_t q1, std::size_t q2, MarketSide side) {
    detail::check_pair(state, q1, q2);
    std::vector<Branch> out;
    for (auto &b : run_enumerate(composite_program(q1, q2, side), state)) {
        out.push_back(detail::relabel(std::move(b), side));
    }
    return out;
}

inline Branch composite_same_side(const QState &state, std::size_t q1, std::size_t q2, MarketSide side, Rng &rng) {
    detail::check_pair(state, q1, q2);
    return detail::relabel(run_sample(composite_program(q1, q2, side), state, rng), side);
}

// ---------------------------------------------------------------------------
// Implicit X'

/// X' on q inferred from an X-prepared ancilla and an X⊗X' measurement:
/// the X' sign is the product of the two recorded signs.
struct ImplicitOutcome {
    Branch branch;
    int inferred_sign = 1;
};

namespace detail {

inline ImplicitOutcome infer(Branch b) {
    const int s = b.outcomes.at(0).sign * b.outcomes.at(1).sign;
    return ImplicitOutcome{std::move(b), s};
}

inline void check_implicit(const QState &state, std::size_t q, std::size_t anc) {
    if (q == anc) {
        throw ValidationError("implicit X': qubit and ancilla must differ");
    }
    qgame::detail::check_targets(state.n_qubits(), {q, anc});
    require_fresh(state, anc);
}

} // namespace detail

inline std::vector<ImplicitOutcome> implicit_xprime(const QState &state, std::size_t q, std::size_t anc) {
    detail::check_implicit(state, q, anc);
    std::vector<ImplicitOutcome> out;
    for (auto &b : run_enumerate(implicit_xprime_program(q, anc), state)) {
        out.push_back(detail::infer(std::move(b)));
    }
    return out;
}

inline ImplicitOutcome implicit_xprime(const QState &state, std::size_t q, std::size_t anc, Rng &rng) {
    detail::check_implicit(state, q, anc);
    return detail::infer(run_sample(implicit_xprime_program(q, anc), state, rng));
}

} // namespace qgame::mbqc
