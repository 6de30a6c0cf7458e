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

/// @file program.hpp
/// Straight-line sequences of gates and projective measurements over a
/// register, run either branch by branch (enumeration), by sampling, or as
/// linear Kraus maps for one fixed sign pattern.
///
/// Branches are produced in lexicographic order of their outcome signs with
/// +1 before −1, so enumeration output does not depend on evaluation order.

#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qgame/core.hpp"
#include "qgame/gates.hpp"
#include "qgame/measure.hpp"
#include "qgame/random.hpp"

namespace qgame::mbqc {

struct GateStep {
    Operator gate;
    std::vector<std::size_t> targets;
};

struct MeasureStep {
    Observable observable;
    std::vector<std::size_t> targets;
};

using Step = std::variant<GateStep, MeasureStep>;

struct Program {
    std::vector<Step> steps;
    /// Qubits traced out at the end, after a factorization check.
    std::vector<std::size_t> discard;

    std::size_t n_measurements() const {
        std::size_t n = 0;
        for (const auto &s : steps) {
            n += std::holds_alternative<MeasureStep>(s) ? 1 : 0;
        }
        return n;
    }
};

/// A discarded qubit was still entangled with the rest of the register.
class FactorizationError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

namespace detail {

/// Splits `v` into (state of qubit q) ⊗ (rest). Returns the rest,
/// unnormalized so that ‖rest‖ = ‖v‖, and the Schmidt residual.
struct Split {
    Vector qubit;
    Vector rest;
    double residual = 0.0;
};

inline Split split_qubit(const Vector &v, std::size_t q) {
    const auto dim = static_cast<std::size_t>(v.size());
    const std::size_t n = log2_exact(dim);
    const std::size_t mask = qgame::detail::qubit_mask(n, q);
    const auto half = static_cast<Eigen::Index>(dim / 2);
    // rows: value of qubit q; columns: remaining index in register order
    Matrix m(2, half);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const std::size_t high = (idx >> (n - q)) << (n - 1 - q);
        const std::size_t low = idx & (mask - 1);
        const auto col = static_cast<Eigen::Index>(high | low);
        m((idx & mask) ? 1 : 0, col) = v(static_cast<Eigen::Index>(idx));
    }
    const Matrix gram = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()));
    const double total = gram.trace().real();
    Split out;
    out.residual = total > 0.0 ? std::max(0.0, es.eigenvalues()(0)) / total : 0.0;
    out.qubit = es.eigenvectors().col(1);
    out.rest = m.transpose() * out.qubit.conjugate();
    return out;
}

} // namespace detail

/// Removes `qubits` from a register whose state factorizes across each of
/// them (smallest Schmidt weight ≤ 1e-12); throws FactorizationError
/// otherwise. Remaining qubits keep their relative order.
inline QState discard_qubits(const QState &state, std::vector<std::size_t> qubits) {
    qgame::detail::check_targets(state.n_qubits(), qubits);
    std::sort(qubits.begin(), qubits.end(), std::greater<>());
    Vector v = state.amplitudes();
    for (auto q : qubits) {
        auto split = detail::split_qubit(v, q);
        if (split.residual > tol::algebraic) {
            throw FactorizationError("qubit " + std::to_string(q) + " is entangled (Schmidt weight " +
                                     std::to_string(split.residual) + ")");
        }
        v = std::move(split.rest);
    }
    return QState(std::move(v));
}

/// Moves qubit `from` to position `to`, shifting the others.
inline QState move_qubit(const QState &state, std::size_t from, std::size_t to) {
    const std::size_t n = state.n_qubits();
    if (from >= n || to >= n) {
        throw ValidationError("move_qubit: index out of range");
    }
    std::vector<std::size_t> order; // order[new position] = old qubit
    for (std::size_t q = 0; q < n; ++q) {
        if (q != from) {
            order.push_back(q);
        }
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(to), from);
    Vector out(state.amplitudes().size());
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        std::size_t src = 0;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (idx & qgame::detail::qubit_mask(n, pos)) {
                src |= qgame::detail::qubit_mask(n, order[pos]);
            }
        }
        out(static_cast<Eigen::Index>(idx)) = state[src];
    }
    return QState(std::move(out));
}

/// Adjoins a fresh qubit in |0⟩ as the new last qubit.
inline QState adjoin_zero(const QState &state) { return tensor(state, QState::zero(1)); }

namespace detail {

inline void apply_step_gate(Vector &v, const GateStep &g) { v = qgame::detail::apply_local(v, g.gate.matrix(), g.targets); }

inline void apply_step_projector(Vector &v, const MeasureStep &m, int sign) {
    v = qgame::detail::apply_local(v, m.observable.projector(sign), m.targets);
}

inline void validate(const Program &prog, std::size_t n) {
    for (const auto &s : prog.steps) {
        std::visit(
            [n](const auto &st) {
                qgame::detail::check_targets(n, st.targets);
                if constexpr (std::is_same_v<std::decay_t<decltype(st)>, MeasureStep>) {
                    if (st.observable.n_qubits() != st.targets.size()) {
                        throw ValidationError("program step " + st.observable.label() + ": target count mismatch");
                    }
                } else {
                    if (st.gate.dim() != (std::size_t{1} << st.targets.size())) {
                        throw ValidationError("program gate: target count mismatch");
                    }
                }
            },
            s);
    }
    qgame::detail::check_targets(n, prog.discard);
}

inline void enumerate_from(const Program &prog, std::size_t step, Vector v, std::vector<Outcome> &trail,
                           std::vector<Branch> &out) {
    while (step < prog.steps.size() && std::holds_alternative<GateStep>(prog.steps[step])) {
        apply_step_gate(v, std::get<GateStep>(prog.steps[step]));
        ++step;
    }
    if (step == prog.steps.size()) {
        const double p = v.squaredNorm();
        QState post = discard_qubits(QState(v), prog.discard);
        out.push_back(Branch{trail, p, std::move(post)});
        return;
    }
    const auto &m = std::get<MeasureStep>(prog.steps[step]);
    for (int s : {1, -1}) {
        Vector w = v;
        apply_step_projector(w, m, s);
        if (w.squaredNorm() < tol::impossible) {
            continue;
        }
        trail.push_back(Outcome{m.observable.label(), s});
        enumerate_from(prog, step + 1, std::move(w), trail, out);
        trail.pop_back();
    }
}

} // namespace detail

/// All branches of nonzero probability (≥ 1e-14).
inline std::vector<Branch> run_enumerate(const Program &prog, const QState &state) {
    detail::validate(prog, state.n_qubits());
    std::vector<Branch> out;
    std::vector<Outcome> trail;
    detail::enumerate_from(prog, 0, state.amplitudes(), trail, out);
    return out;
}

/// One branch, each outcome drawn with its conditional Born probability.
inline Branch run_sample(const Program &prog, const QState &state, Rng &rng) {
    detail::validate(prog, state.n_qubits());
    Vector v = state.amplitudes();
    std::vector<Outcome> trail;
    for (const auto &s : prog.steps) {
        if (const auto *g = std::get_if<GateStep>(&s)) {
            detail::apply_step_gate(v, *g);
            continue;
        }
        const auto &m = std::get<MeasureStep>(s);
        Vector plus = v;
        detail::apply_step_projector(plus, m, 1);
        const double total = v.squaredNorm();
        const double p_plus = plus.squaredNorm() / total;
        int sign = uniform01(rng) < p_plus ? 1 : -1;
        if (sign < 0 && 1.0 - p_plus < tol::impossible) {
            sign = 1;
        }
        if (sign > 0) {
            v = std::move(plus);
        } else {
            detail::apply_step_projector(v, m, -1);
        }
        trail.push_back(Outcome{m.observable.label(), sign});
    }
    const double p = v.squaredNorm();
    return Branch{std::move(trail), p, discard_qubits(QState(v), prog.discard)};
}

/// Branch with prescribed signs (one per measurement); throws
/// ImpossibleBranch when its probability is below 1e-14.
inline Branch run_branch(const Program &prog, const QState &state, const std::vector<int> &signs) {
    detail::validate(prog, state.n_qubits());
    if (signs.size() != prog.n_measurements()) {
        throw ValidationError("run_branch: expected " + std::to_string(prog.n_measurements()) + " signs");
    }
    Vector v = state.amplitudes();
    std::vector<Outcome> trail;
    std::size_t k = 0;
    for (const auto &s : prog.steps) {
        if (const auto *g = std::get_if<GateStep>(&s)) {
            detail::apply_step_gate(v, *g);
            continue;
        }
        const auto &m = std::get<MeasureStep>(s);
        const int sign = signs[k++] > 0 ? 1 : -1;
        detail::apply_step_projector(v, m, sign);
        trail.push_back(Outcome{m.observable.label(), sign});
    }
    const double p = v.squaredNorm();
    if (p < tol::impossible) {
        throw ImpossibleBranch("requested branch has probability " + std::to_string(p));
    }
    return Branch{std::move(trail), p, discard_qubits(QState(v), prog.discard)};
}

/// Linear map realized by one sign pattern on the `data` qubits of a
/// register whose other qubits start in |0⟩. Columns are indexed by the
/// data-qubit basis (first listed qubit = high bit); rows by the qubits left
/// after `prog.discard`, in register order. Defined up to a global phase.
inline Matrix branch_kraus(const Program &prog, std::size_t n_qubits, const std::vector<std::size_t> &data,
                           const std::vector<int> &signs) {
    detail::validate(prog, n_qubits);
    qgame::detail::check_targets(n_qubits, data);
    const std::size_t in_dim = std::size_t{1} << data.size();
    std::vector<Vector> columns;
    for (std::size_t b = 0; b < in_dim; ++b) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < data.size(); ++j) {
            if ((b >> (data.size() - 1 - j)) & 1U) {
                idx |= qgame::detail::qubit_mask(n_qubits, data[j]);
            }
        }
        Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_qubits));
        v(static_cast<Eigen::Index>(idx)) = 1.0;
        std::size_t k = 0;
        for (const auto &s : prog.steps) {
            if (const auto *g = std::get_if<GateStep>(&s)) {
                detail::apply_step_gate(v, *g);
            } else {
                detail::apply_step_projector(v, std::get<MeasureStep>(s), signs.at(k++) > 0 ? 1 : -1);
            }
        }
        columns.push_back(std::move(v));
    }
    // Discarded qubits end in an input-independent state; read it off the
    // column of largest norm and contract every column with it.
    std::vector<std::size_t> discard = prog.discard;
    std::sort(discard.begin(), discard.end(), std::greater<>());
    for (auto q : discard) {
        std::size_t best = 0;
        for (std::size_t b = 1; b < columns.size(); ++b) {
            if (columns[b].squaredNorm() > columns[best].squaredNorm()) {
                best = b;
            }
        }
        const Vector e = columns[best].squaredNorm() > 0.0 ? detail::split_qubit(columns[best], q).qubit : Vector();
        for (auto &col : columns) {
            if (e.size() == 0) {
                col = Vector::Zero(col.size() / 2);
                continue;
            }
            const auto dim = static_cast<std::size_t>(col.size());
            const std::size_t n = log2_exact(dim);
            const std::size_t mask = qgame::detail::qubit_mask(n, q);
            Vector rest = Vector::Zero(static_cast<Eigen::Index>(dim / 2));
            for (std::size_t idx = 0; idx < dim; ++idx) {
                const std::size_t high = (idx >> (n - q)) << (n - 1 - q);
                const std::size_t low = idx & (mask - 1);
                rest(static_cast<Eigen::Index>(high | low)) +=
                    std::conj(e((idx & mask) ? 1 : 0)) * col(static_cast<Eigen::Index>(idx));
            }
            col = std::move(rest);
        }
    }
    Matrix k(columns.front().size(), static_cast<Eigen::Index>(in_dim));
    for (std::size_t b = 0; b < in_dim; ++b) {
        k.col(static_cast<Eigen::Index>(b)) = columns[b];
    }
    return k;
}

/// Every sign pattern of a program with `n` measurements, lexicographic with
/// +1 first.
inline std::vector<std::vector<int>> all_sign_patterns(std::size_t n) {
    std::vector<std::vector<int>> out;
    for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
        std::vector<int> s(n);
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = ((code >> (n - 1 - j)) & 1U) ? -1 : 1;
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<int> signs_of(const Branch &b) {
    std::vector<int> s;
    for (const auto &o : b.outcomes) {
        s.push_back(o.sign);
    }
    return s;
}

} // namespace qgame::mbqc
