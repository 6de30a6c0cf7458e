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

/// @file random.hpp
/// Seeded random streams and random test objects (states, unitaries,
/// Hermitian matrices, density operators).
///
/// One 64-bit seed feeds any number of independent streams: stream k is an
/// mt19937_64 seeded with splitmix64(seed + k * golden). Uniform and normal
/// variates are derived from raw 64-bit words here rather than through the
/// standard distributions, so outputs are identical across standard
/// libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qgame/core.hpp"

namespace qgame {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream `index` derived from `seed`.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed + index * 0x9E3779B97F4A7C15ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Standard normal variate (Box-Muller, one value per call).
inline double standard_normal(Rng &rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) {
        u1 = uniform01(rng);
    }
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline bool bernoulli(Rng &rng, double p) { return uniform01(rng) < p; }

/// Haar-random pure state of n qubits.
inline QState random_state(std::size_t n_qubits, Rng &rng) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = Complex(standard_normal(rng), standard_normal(rng));
    }
    return QState(std::move(v));
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase
/// correction on R's diagonal.
inline Matrix random_unitary(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix z(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            z(r, c) = Complex(standard_normal(rng), standard_normal(rng)) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex rk = r(k, k);
        if (std::abs(rk) > 0.0) {
            q.col(k) *= rk / std::abs(rk);
        }
    }
    return q;
}

/// Random Hermitian matrix (GUE-like, unit-scale entries).
inline Matrix random_hermitian(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix a(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            a(r, c) = Complex(standard_normal(rng), standard_normal(rng));
        }
    }
    return 0.5 * (a + a.adjoint());
}

/// Random full-rank density operator (Wishart, normalized to unit trace).
inline DensityOp random_density(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix a(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            a(r, c) = Complex(standard_normal(rng), standard_normal(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityOp(rho);
}

} // namespace qgame
