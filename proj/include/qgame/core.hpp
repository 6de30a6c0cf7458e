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

/// @file core.hpp
/// Dense complex linear algebra for small registers: pure states, operators,
/// density operators, Kronecker products and Hermitian matrix functions.
///
/// Qubit 0 is the most significant bit of a basis index (the top wire of a
/// circuit diagram). Every value is immutable after construction.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qgame {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

namespace tol {
inline constexpr double exact = 1e-15;     ///< entrywise gate identities
inline constexpr double algebraic = 1e-12; ///< normalization, projector algebra
inline constexpr double circuit = 1e-10;   ///< multi-step circuit equivalence
inline constexpr double quadrature = 1e-6;
inline constexpr double impossible = 1e-14; ///< branch probability treated as zero
} // namespace tol

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register or operator exceeds the configured qubit cap.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Input violates a documented precondition (shape, Hermiticity, range...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A measurement branch of probability zero was requested explicitly.
class ImpossibleBranch : public Error {
  public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Configuration

inline constexpr std::size_t kDefaultMaxQubits = 8;

/// Qubit cap; QGAME_MAX_QUBITS overrides the default of 8 (clamped to 1..24).
inline std::size_t max_qubits() {
    if (const char *env = std::getenv("QGAME_MAX_QUBITS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<std::size_t>(std::min<long>(v, 24));
        }
    }
    return kDefaultMaxQubits;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

inline void check_capacity(std::size_t dim) {
    const std::size_t cap = std::size_t{1} << max_qubits();
    if (dim > cap) {
        throw CapacityError("dimension " + std::to_string(dim) + " exceeds the " +
                            std::to_string(max_qubits()) + "-qubit cap");
    }
}

template <class Derived> bool all_finite(const Eigen::MatrixBase<Derived> &m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const Complex z = m(r, c);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                return false;
            }
        }
    }
    return true;
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("max_abs_diff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// QState

/// Normalized pure state of n qubits (2^n amplitudes).
class QState {
  public:
    /// Normalizes `amps`; rejects non-finite entries, zero vectors and
    /// lengths that are not a power of two.
    explicit QState(Vector amps) : amps_(std::move(amps)) {
        const auto dim = static_cast<std::size_t>(amps_.size());
        if (!is_power_of_two(dim)) {
            throw ValidationError("state length must be a power of two, got " +
                                  std::to_string(dim));
        }
        check_capacity(dim);
        if (!all_finite(amps_)) {
            throw ValidationError("state has non-finite amplitudes");
        }
        const double norm = amps_.norm();
        if (!(norm > 0.0)) {
            throw ValidationError("state has zero norm");
        }
        amps_ /= norm;
        n_qubits_ = log2_exact(dim);
    }

    static QState basis(std::size_t n_qubits, std::size_t index) {
        if (n_qubits > max_qubits()) {
            throw CapacityError(std::to_string(n_qubits) + " qubits exceed the cap");
        }
        const std::size_t dim = std::size_t{1} << n_qubits;
        if (index >= dim) {
            throw ValidationError("basis index out of range");
        }
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return QState(std::move(v));
    }

    static QState zero(std::size_t n_qubits) { return basis(n_qubits, 0); }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector &amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    /// Probability of the computational basis state `i`.
    double probability(std::size_t i) const { return std::norm((*this)[i]); }

  private:
    Vector amps_;
    std::size_t n_qubits_ = 0;
};

// ---------------------------------------------------------------------------
// Operator

/// Square complex matrix with Hermitian/unitary flags measured at 1e-12.
class Operator {
  public:
    explicit Operator(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() == 0) {
            throw ValidationError("operator must be a non-empty square matrix");
        }
        check_capacity(dim());
        if (!all_finite(m_)) {
            throw ValidationError("operator has non-finite entries");
        }
        hermitian_ = (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol::algebraic;
        const Matrix id = Matrix::Identity(m_.rows(), m_.cols());
        unitary_ = (m_.adjoint() * m_ - id).cwiseAbs().maxCoeff() <= tol::algebraic;
    }

    static Operator identity(std::size_t dim) {
        const auto d = static_cast<Eigen::Index>(dim);
        return Operator(Matrix::Identity(d, d));
    }

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix &matrix() const { return m_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    bool is_hermitian() const { return hermitian_; }
    bool is_unitary() const { return unitary_; }

    Operator adjoint() const { return Operator(m_.adjoint()); }

    friend Operator operator*(const Operator &a, const Operator &b) {
        if (a.dim() != b.dim()) {
            throw ValidationError("operator product: dimension mismatch");
        }
        return Operator(a.m_ * b.m_);
    }

  private:
    Matrix m_;
    bool hermitian_ = false;
    bool unitary_ = false;
};

// ---------------------------------------------------------------------------
// DensityOp

/// Hermitian, positive semidefinite, unit-trace matrix (any dimension).
class DensityOp {
  public:
    explicit DensityOp(Matrix rho) : rho_(std::move(rho)) {
        if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
            throw ValidationError("density operator must be square");
        }
        check_capacity(dim());
        if (!all_finite(rho_)) {
            throw ValidationError("density operator has non-finite entries");
        }
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol::algebraic) {
            throw ValidationError("density operator is not Hermitian");
        }
        const Complex tr = rho_.trace();
        if (std::abs(tr - 1.0) > tol::algebraic) {
            throw ValidationError("density operator trace is " + std::to_string(tr.real()));
        }
        const Matrix herm = 0.5 * (rho_ + rho_.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol::algebraic) {
            throw ValidationError("density operator has a negative eigenvalue");
        }
    }

    static DensityOp pure(const Vector &psi) {
        const double n = psi.norm();
        if (!(n > 0.0)) {
            throw ValidationError("cannot form a density operator from a zero vector");
        }
        const Vector u = psi / n;
        return DensityOp(u * u.adjoint());
    }

    static DensityOp pure(const QState &s) { return pure(s.amplitudes()); }

    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const Matrix &matrix() const { return rho_; }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

  private:
    Matrix rho_;
};

// ---------------------------------------------------------------------------
// Kronecker products. The left operand owns the high-order index bits.

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline QState tensor(const QState &a, const QState &b) {
    check_capacity(a.dim() * b.dim());
    Matrix out = kron(a.amplitudes(), b.amplitudes());
    return QState(Vector(out.col(0)));
}

inline Operator tensor(const Operator &a, const Operator &b) {
    check_capacity(a.dim() * b.dim());
    return Operator(kron(a.matrix(), b.matrix()));
}

template <class T, class... Rest> T tensor(const T &a, const T &b, const Rest &...rest) {
    return tensor(tensor(a, b), rest...);
}

// ---------------------------------------------------------------------------
// Hermitian matrix functions

/// f(G) through the eigendecomposition of Hermitian G. `f` maps a real
/// eigenvalue to a real or complex scalar.
template <class F> Operator matfun_hermitian(const Operator &g, F &&f) {
    if (!g.is_hermitian()) {
        throw ValidationError("matfun_hermitian: operator is not Hermitian");
    }
    const Matrix herm = 0.5 * (g.matrix() + g.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const Eigen::VectorXd &lambda = es.eigenvalues();
    Vector fl(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        fl(k) = Complex(f(lambda(k)));
    }
    const Matrix &v = es.eigenvectors();
    return Operator(v * fl.asDiagonal() * v.adjoint());
}

// ---------------------------------------------------------------------------
// Comparisons

/// Unit scalar λ with ‖a − λb‖ ≤ tol, if one exists. The optimal λ is the
/// phase of ⟨b|a⟩.
inline std::optional<Complex> equal_up_to_global_phase(const QState &a, const QState &b,
                                                       double tolerance = tol::circuit) {
    if (a.dim() != b.dim()) {
        throw ValidationError("equal_up_to_global_phase: dimension mismatch");
    }
    const Complex overlap = b.amplitudes().dot(a.amplitudes());
    const Complex lambda = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    if ((a.amplitudes() - lambda * b.amplitudes()).norm() <= tolerance) {
        return lambda;
    }
    return std::nullopt;
}

/// |⟨a|b⟩|², clamped to [0, 1].
inline double fidelity(const QState &a, const QState &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("fidelity: dimension mismatch");
    }
    const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
    return std::clamp(f, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Local operator application

namespace detail {

/// Bit mask for qubit `q` in an n-qubit register (qubit 0 = MSB).
inline std::size_t qubit_mask(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

inline void check_targets(std::size_t n, const std::vector<std::size_t> &targets) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n) {
            throw ValidationError("target qubit " + std::to_string(targets[i]) +
                                  " outside a " + std::to_string(n) + "-qubit register");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw ValidationError("target qubits must be distinct");
            }
        }
    }
}

/// Applies a 2^k × 2^k matrix to `targets` (first target = high-order bit of
/// the local index) of an unnormalized n-qubit vector.
inline Vector apply_local(const Vector &in, const Matrix &op, const std::vector<std::size_t> &targets) {
    const std::size_t dim = static_cast<std::size_t>(in.size());
    const std::size_t n = log2_exact(dim);
    const std::size_t k = targets.size();
    check_targets(n, targets);
    if (static_cast<std::size_t>(op.rows()) != (std::size_t{1} << k) || op.rows() != op.cols()) {
        throw ValidationError("operator dimension does not match the number of targets");
    }
    std::size_t target_mask = 0;
    for (auto t : targets) {
        target_mask |= qubit_mask(n, t);
    }
    const std::size_t local = std::size_t{1} << k;
    std::vector<std::size_t> offset(local, 0);
    for (std::size_t r = 0; r < local; ++r) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((r >> (k - 1 - j)) & 1U) {
                offset[r] |= qubit_mask(n, targets[j]);
            }
        }
    }
    Vector out = Vector::Zero(in.size());
    Vector sub(static_cast<Eigen::Index>(local));
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t c = 0; c < local; ++c) {
            sub(static_cast<Eigen::Index>(c)) = in(static_cast<Eigen::Index>(base | offset[c]));
        }
        const Vector res = op * sub;
        for (std::size_t r = 0; r < local; ++r) {
            out(static_cast<Eigen::Index>(base | offset[r])) = res(static_cast<Eigen::Index>(r));
        }
    }
    return out;
}

} // namespace detail

/// Full-register matrix of `op` acting on `targets` of an n-qubit register.
inline Matrix embed(const Matrix &op, const std::vector<std::size_t> &targets, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Matrix full(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Vector e = Vector::Zero(dim);
        e(c) = 1.0;
        full.col(c) = detail::apply_local(e, op, targets);
    }
    return full;
}

} // namespace qgame
