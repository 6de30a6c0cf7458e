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

/// @file gates.hpp
/// Gate constants in the SU(2) phase convention (NOT = iσx, H = iH_std),
/// the involutive observables X, X', X'', G and their tensor products.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qgame/core.hpp"

namespace qgame {

namespace pauli {

inline Matrix identity() { return Matrix::Identity(2, 2); }

inline Matrix x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline Matrix y() {
    Matrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

inline Matrix z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

} // namespace pauli

/// The game tactics. NOT and H have unit determinant.
struct GateSet {
    Operator not_gate;
    Operator hadamard;
    Operator t_gate;
    Operator cnot_alliance; ///< |0⟩⟨0|⊗I + |1⟩⟨1|⊗NOT, control on qubit 0

    static GateSet canonical() {
        Matrix n(2, 2);
        n << 0.0, kI, kI, 0.0;
        Matrix h(2, 2);
        h << 1.0, 1.0, 1.0, -1.0;
        h *= kI / std::sqrt(2.0);
        Matrix t = Matrix::Zero(2, 2);
        t(0, 0) = 1.0;
        t(1, 1) = Complex(1.0, 1.0) / std::sqrt(2.0);
        return from_single(Operator(n), Operator(h), Operator(t));
    }

    /// Builds the alliance from the given NOT; used to corrupt gates in
    /// negative controls.
    static GateSet from_single(Operator not_gate, Operator hadamard, Operator t_gate) {
        Matrix p0 = Matrix::Zero(2, 2);
        p0(0, 0) = 1.0;
        Matrix p1 = Matrix::Zero(2, 2);
        p1(1, 1) = 1.0;
        Matrix c = kron(p0, pauli::identity()) + kron(p1, not_gate.matrix());
        return GateSet{std::move(not_gate), std::move(hadamard), std::move(t_gate), Operator(std::move(c))};
    }
};

/// Hermitian involution with its ±1 eigenprojectors.
class Observable {
  public:
    Observable(std::string label, const Matrix &m) : label_(std::move(label)), op_(m) {
        if (!op_.is_hermitian()) {
            throw ValidationError("observable " + label_ + " is not Hermitian");
        }
        const auto d = static_cast<Eigen::Index>(op_.dim());
        const Matrix id = Matrix::Identity(d, d);
        if ((m * m - id).cwiseAbs().maxCoeff() > tol::algebraic) {
            throw ValidationError("observable " + label_ + " is not an involution");
        }
        if (!is_power_of_two(op_.dim())) {
            throw ValidationError("observable " + label_ + " must act on whole qubits");
        }
        plus_ = 0.5 * (id + m);
        minus_ = 0.5 * (id - m);
    }

    const std::string &label() const { return label_; }
    const Operator &op() const { return op_; }
    const Matrix &matrix() const { return op_.matrix(); }
    std::size_t n_qubits() const { return log2_exact(op_.dim()); }

    /// Projector onto the eigenspace of `sign` (+1 or −1).
    const Matrix &projector(int sign) const { return sign > 0 ? plus_ : minus_; }

  private:
    std::string label_;
    Operator op_;
    Matrix plus_;
    Matrix minus_;
};

enum class ObservableLabel { X, Xp, Xpp, G };

inline const char *to_string(ObservableLabel l) {
    switch (l) {
    case ObservableLabel::X:
        return "X";
    case ObservableLabel::Xp:
        return "X'";
    case ObservableLabel::Xpp:
        return "X''";
    case ObservableLabel::G:
        return "G";
    }
    return "?";
}

/// X = σx, X' = σz, X'' = σy, G = (X' + X'')/√2.
inline Observable observable(ObservableLabel l) {
    switch (l) {
    case ObservableLabel::X:
        return {"X", pauli::x()};
    case ObservableLabel::Xp:
        return {"X'", pauli::z()};
    case ObservableLabel::Xpp:
        return {"X''", pauli::y()};
    case ObservableLabel::G:
        return {"G", (pauli::z() + pauli::y()) / std::sqrt(2.0)};
    }
    throw ValidationError("unknown observable label");
}

inline Observable tensor(const Observable &a, const Observable &b) {
    return {a.label() + "⊗" + b.label(), kron(a.matrix(), b.matrix())};
}

/// U†·O·U: the observable measured by "apply U, measure O, undo U".
inline Observable conjugated(const Observable &o, const Operator &u, std::string label) {
    if (u.dim() != o.op().dim()) {
        throw ValidationError("conjugated: dimension mismatch");
    }
    return {std::move(label), u.matrix().adjoint() * o.matrix() * u.matrix()};
}

/// Entrywise deviation of T⁻¹·X·T from (X − X'')/√2. X'' is not fixed
/// independently anywhere else, so this pins the σy convention.
inline double xpp_convention_deviation(const GateSet &g = GateSet::canonical()) {
    const Matrix &t = g.t_gate.matrix();
    const Matrix lhs = t.inverse() * pauli::x() * t;
    const Matrix rhs = (pauli::x() - observable(ObservableLabel::Xpp).matrix()) / std::sqrt(2.0);
    return max_abs_diff(lhs, rhs);
}

class ConventionError : public Error {
  public:
    using Error::Error;
};

/// Startup self-check; throws when the X'' convention does not satisfy the
/// phase-gate identity to 1e-15.
inline void ensure_conventions() {
    const double dev = xpp_convention_deviation();
    if (dev > tol::exact) {
        throw ConventionError("X'' convention violated: T^-1 X T deviates from (X - X'')/sqrt2 by " +
                              std::to_string(dev));
    }
}

} // namespace qgame
