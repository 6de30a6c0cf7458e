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

/// @file pauli.hpp
/// Pauli byproduct tags: one of {I, X, X', X''} per qubit and a global phase
/// i^k. Products stay closed with phases tracked mod 4.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgame/core.hpp"
#include "qgame/gates.hpp"

namespace qgame::mbqc {

/// X = σx, Xp = X' = σz, Xpp = X'' = σy.
enum class Pauli : unsigned char { I = 0, X = 1, Xp = 2, Xpp = 3 };

inline constexpr std::array<Pauli, 4> kAllPaulis{Pauli::I, Pauli::X, Pauli::Xp, Pauli::Xpp};

inline const char *to_string(Pauli p) {
    switch (p) {
    case Pauli::I:
        return "I";
    case Pauli::X:
        return "X";
    case Pauli::Xp:
        return "X'";
    case Pauli::Xpp:
        return "X''";
    }
    return "?";
}

inline Matrix pauli_matrix(Pauli p) {
    switch (p) {
    case Pauli::I:
        return pauli::identity();
    case Pauli::X:
        return pauli::x();
    case Pauli::Xp:
        return pauli::z();
    case Pauli::Xpp:
        return pauli::y();
    }
    throw ValidationError("unknown Pauli");
}

namespace detail {

// Position in the cyclic order (σx, σy, σz).
inline int cyclic_index(Pauli p) {
    switch (p) {
    case Pauli::X:
        return 0;
    case Pauli::Xpp:
        return 1;
    case Pauli::Xp:
        return 2;
    default:
        return -1;
    }
}

inline constexpr std::array<Pauli, 3> kCyclic{Pauli::X, Pauli::Xpp, Pauli::Xp};

} // namespace detail

/// a·b = i^phase · c
inline std::pair<Pauli, int> multiply(Pauli a, Pauli b) {
    if (a == Pauli::I) {
        return {b, 0};
    }
    if (b == Pauli::I) {
        return {a, 0};
    }
    if (a == b) {
        return {Pauli::I, 0};
    }
    const int ia = detail::cyclic_index(a);
    const int ib = detail::cyclic_index(b);
    const Pauli c = detail::kCyclic[static_cast<std::size_t>(3 - ia - ib)];
    const bool cyclic = (ib - ia + 3) % 3 == 1;
    return {c, cyclic ? 1 : 3};
}

class PauliTag {
  public:
    PauliTag() = default;
    explicit PauliTag(std::vector<Pauli> ops, int phase = 0) : ops_(std::move(ops)), phase_(((phase % 4) + 4) % 4) {}

    static PauliTag identity(std::size_t n_qubits) { return PauliTag(std::vector<Pauli>(n_qubits, Pauli::I)); }
    static PauliTag single(Pauli p, int phase = 0) { return PauliTag({p}, phase); }

    std::size_t n_qubits() const { return ops_.size(); }
    const std::vector<Pauli> &ops() const { return ops_; }
    Pauli op(std::size_t q) const { return ops_.at(q); }
    int phase() const { return phase_; }

    /// Same tag with the phase dropped.
    PauliTag mod_phase() const { return PauliTag(ops_); }
    bool equal_mod_phase(const PauliTag &o) const { return ops_ == o.ops_; }
    bool is_identity_mod_phase() const {
        for (auto p : ops_) {
            if (p != Pauli::I) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const PauliTag &) const = default;

    /// Operator product (this applied after `rhs`).
    friend PauliTag operator*(const PauliTag &lhs, const PauliTag &rhs) {
        if (lhs.n_qubits() != rhs.n_qubits()) {
            throw ValidationError("PauliTag product: qubit count mismatch");
        }
        std::vector<Pauli> ops(lhs.n_qubits());
        int phase = lhs.phase_ + rhs.phase_;
        for (std::size_t q = 0; q < ops.size(); ++q) {
            auto [p, ph] = multiply(lhs.ops_[q], rhs.ops_[q]);
            ops[q] = p;
            phase += ph;
        }
        return PauliTag(std::move(ops), phase);
    }

    /// H·P·H† qubit-wise: X ↔ X', X'' → −X''. Holds for either phase
    /// convention of H since the phase cancels.
    PauliTag conjugated_by_h() const {
        std::vector<Pauli> ops(ops_.size());
        int phase = phase_;
        for (std::size_t q = 0; q < ops.size(); ++q) {
            switch (ops_[q]) {
            case Pauli::I:
                ops[q] = Pauli::I;
                break;
            case Pauli::X:
                ops[q] = Pauli::Xp;
                break;
            case Pauli::Xp:
                ops[q] = Pauli::X;
                break;
            case Pauli::Xpp:
                ops[q] = Pauli::Xpp;
                phase += 2;
                break;
            }
        }
        return PauliTag(std::move(ops), phase);
    }

    Matrix matrix() const {
        Matrix m = Matrix::Identity(1, 1);
        for (auto p : ops_) {
            m = kron(m, pauli_matrix(p));
        }
        static constexpr std::array<Complex, 4> kPhases{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
        return kPhases[static_cast<std::size_t>(phase_)] * m;
    }

    /// Phase-free label such as "X'⊗I".
    std::string label() const {
        std::string s;
        for (std::size_t q = 0; q < ops_.size(); ++q) {
            if (q != 0) {
                s += "⊗";
            }
            s += to_string(ops_[q]);
        }
        return s;
    }

  private:
    std::vector<Pauli> ops_;
    int phase_ = 0;
};

/// A = coefficient · tag (tag phase 0).
struct PauliMatch {
    PauliTag tag;
    Complex coefficient;
};

/// Finds the Pauli string proportional to `a` (square, 2^n), relative
/// tolerance `tolerance`.
inline std::optional<PauliMatch> identify_pauli(const Matrix &a, double tolerance = tol::circuit) {
    const auto dim = static_cast<std::size_t>(a.rows());
    if (a.rows() != a.cols() || !is_power_of_two(dim)) {
        throw ValidationError("identify_pauli: expected a 2^n square matrix");
    }
    const std::size_t n = log2_exact(dim);
    const double scale = a.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) {
        return std::nullopt;
    }
    std::vector<Pauli> ops(n, Pauli::I);
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; ++code) {
        for (std::size_t q = 0; q < n; ++q) {
            ops[q] = kAllPaulis[(code >> (2 * (n - 1 - q))) & 3U];
        }
        PauliTag tag(ops);
        const Matrix p = tag.matrix();
        const Complex c = (p.adjoint() * a).trace() / static_cast<double>(dim);
        if ((a - c * p).cwiseAbs().maxCoeff() <= tolerance * scale) {
            return PauliMatch{std::move(tag), c};
        }
    }
    return std::nullopt;
}

} // namespace qgame::mbqc
