// Copyright 2026 The qbochner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic test and demonstration states.
//
// Random states come from SeededGaussian: std::mt19937_64 seeded with the
// given 64-bit seed, uniforms u = (x >> 11) * 2^-53, and Box-Muller pairs
// (r cos t, r sin t) with r = sqrt(-2 ln(1 - u1)), t = 2 pi u2. One pair
// gives one standard complex Gaussian (re, im). Entries are drawn row-major.
// mt19937_64 is fully specified by the C++ standard, so identical seeds give
// identical states everywhere the libm transcendental calls agree.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qbochner/error.hpp"
#include "qbochner/group.hpp"
#include "qbochner/numerics.hpp"
#include "qbochner/quasiprob.hpp"

namespace qbochner {

class SeededGaussian {
public:
    explicit SeededGaussian(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    cplx complex_gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    std::mt19937_64 engine_;
};

inline void require_dimension(int d) {
    if (d < 2) throw Error(ErrorKind::InvalidDimension, "state dimension must be >= 2, got " + std::to_string(d));
}

/// |psi><psi| for an arbitrary (not necessarily normalized) vector.
inline ComplexMatrix projector(std::span<const cplx> psi) {
    const std::size_t d = psi.size();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return m;
}

inline ComplexMatrix basis_state(int d, int k) {
    require_dimension(d);
    if (k < 0 || k >= d) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
    ComplexMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    m(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = 1.0;
    return m;
}

/// |phi_m> = d^{-1/2} sum_k exp(-2 pi i k m / d) |k>.
inline std::vector<cplx> conjugate_basis_vector(int d, int m) {
    require_dimension(d);
    if (m < 0 || m >= d) throw Error(ErrorKind::IndexOutOfRange, "conjugate basis index out of range");
    std::vector<cplx> v(static_cast<std::size_t>(d));
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) v[static_cast<std::size_t>(k)] = root_of_unity(static_cast<long long>(k) * m, d) * norm;
    return v;
}

inline ComplexMatrix conjugate_basis_state(int d, int m) { return projector(conjugate_basis_vector(d, m)); }

/// Amplitudes omega^{a k^2 + b k} / sqrt(d).
inline std::vector<cplx> quadratic_vector(int d, int a, int b) {
    require_dimension(d);
    std::vector<cplx> v(static_cast<std::size_t>(d));
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (long long k = 0; k < d; ++k) v[static_cast<std::size_t>(k)] = root_of_unity(a * k * k + b * k, d) * norm;
    return v;
}

inline ComplexMatrix maximally_mixed(int d) {
    require_dimension(d);
    return ComplexMatrix::identity(static_cast<std::size_t>(d)) * cplx{1.0 / d, 0.0};
}

inline bool is_odd_prime(int d) {
    if (d < 3 || d % 2 == 0) return false;
    for (int p = 3; p * p <= d; p += 2)
        if (d % p == 0) return false;
    return true;
}

/// The d computational basis states followed by the d^2 quadratic-phase
/// states (a major, b minor). Each one is checked to have a nonnegative
/// discrete Wigner function.
inline std::vector<ComplexMatrix> stabilizer_states(int d) {
    if (!is_odd_prime(d)) throw Error(ErrorKind::NotOddPrime, std::to_string(d) + " is not an odd prime");
    std::vector<std::vector<cplx>> vectors;
    for (int k = 0; k < d; ++k) {
        std::vector<cplx> v(static_cast<std::size_t>(d));
        v[static_cast<std::size_t>(k)] = 1.0;
        vectors.push_back(std::move(v));
    }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) vectors.push_back(quadratic_vector(d, a, b));

    std::vector<ComplexMatrix> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
        const auto w = gross_wigner_pure(v, d);
        if (*std::min_element(w.begin(), w.end()) < -1e-10) {
            throw Error(ErrorKind::InternalInconsistency, "stabilizer candidate has negative Wigner function");
        }
        out.push_back(projector(v));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (max_abs_diff(out[i], out[j]) < 1e-9) {
                throw Error(ErrorKind::InternalInconsistency, "duplicate stabilizer state");
            }
    return out;
}

/// Normalized vector of standard complex Gaussian entries.
inline std::vector<cplx> random_pure_vector(int d, std::uint64_t seed) {
    require_dimension(d);
    SeededGaussian rng(seed);
    std::vector<cplx> v(static_cast<std::size_t>(d));
    double norm = 0.0;
    for (auto& z : v) {
        z = rng.complex_gaussian();
        norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (auto& z : v) z /= norm;
    return v;
}

inline ComplexMatrix random_pure(int d, std::uint64_t seed) { return projector(random_pure_vector(d, seed)); }

namespace detail {

inline ComplexMatrix gaussian_matrix(int d, SeededGaussian& rng) {
    const auto n = static_cast<std::size_t>(d);
    ComplexMatrix g(n, n);
    for (auto& z : g.entries()) z = rng.complex_gaussian();
    return g;
}

}  // namespace detail

/// G G^dagger / Tr(G G^dagger) for a Gaussian G.
inline ComplexMatrix random_density(int d, std::uint64_t seed) {
    require_dimension(d);
    SeededGaussian rng(seed);
    const ComplexMatrix g = detail::gaussian_matrix(d, rng);
    ComplexMatrix rho = g * dagger(g);
    rho *= cplx{1.0 / rho.trace().real(), 0.0};
    return rho;
}

/// (G + G^dagger)/2 scaled to unit trace. Usually not PSD. A draw with
/// |trace| < 1e-6 is discarded and the next one from the same stream used.
inline ComplexMatrix random_hermitian_trace1(int d, std::uint64_t seed) {
    require_dimension(d);
    SeededGaussian rng(seed);
    for (;;) {
        const ComplexMatrix g = detail::gaussian_matrix(d, rng);
        ComplexMatrix h = (g + dagger(g)) * cplx{0.5, 0.0};
        const double tr = h.trace().real();
        if (std::abs(tr) < 1e-6) continue;
        h *= cplx{1.0 / tr, 0.0};
        return h;
    }
}

}  // namespace qbochner
