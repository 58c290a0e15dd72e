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

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qbochner/error.hpp"
#include "qbochner/numerics.hpp"

using namespace qbochner;

namespace {

bool throws_kind(const auto& fn, ErrorKind kind) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace

TEST_CASE("tolerance band and validation") {
    Tolerance tol{1e-9, 1e-6};
    CHECK(tol.band(2.0) == Catch::Approx(1e-9 + 2e-6));
    CHECK_NOTHROW(tol.validate());
    CHECK(throws_kind([] { Tolerance{-1.0, 0.0}.validate(); }, ErrorKind::InvalidTolerance));
    CHECK(throws_kind([] { Tolerance{0.0, std::nan("")}.validate(); }, ErrorKind::InvalidTolerance));
}

TEST_CASE("matrix construction and arithmetic") {
    const ComplexMatrix a{{1.0, cplx{0.0, 2.0}}, {3.0, 4.0}};
    CHECK(a.trace() == cplx{5.0, 0.0});
    CHECK(a.frobenius_norm() == Catch::Approx(std::sqrt(30.0)));
    CHECK(dagger(dagger(a)) == a);
    CHECK(dagger(a)(0, 1) == cplx{3.0, 0.0});
    CHECK(dagger(a)(1, 0) == cplx{0.0, -2.0});
    CHECK(max_abs_diff(matrix_power(a, 3), a * a * a) < 1e-12);
    CHECK(matrix_power(a, 0) == ComplexMatrix::identity(2));
    CHECK(throws_kind([] { ComplexMatrix(0, 3); }, ErrorKind::InvalidDimension));
    CHECK(throws_kind([] { ComplexMatrix(2, 2, std::vector<cplx>(3)); }, ErrorKind::ShapeMismatch));
    CHECK(throws_kind([] { return ComplexMatrix{{1.0, 2.0}, {3.0}}; }, ErrorKind::ShapeMismatch));
    CHECK(throws_kind([&] { return a + ComplexMatrix(3, 3); }, ErrorKind::DimensionMismatch));
    CHECK(throws_kind([] { return matrix_power(ComplexMatrix(2, 3), 2); }, ErrorKind::NonSquare));
}

TEST_CASE("hermiticity checks") {
    const ComplexMatrix h{{1.0, cplx{0.0, 1.0}}, {cplx{0.0, -1.0}, 2.0}};
    CHECK(is_hermitian(h, {}));
    const ComplexMatrix n{{1.0, 1.0}, {0.0, 1.0}};
    CHECK_FALSE(is_hermitian(n, {}));
    CHECK(throws_kind([&] { herm_eigenvalues(n); }, ErrorKind::NotHermitian));
    CHECK(throws_kind([] { herm_eigenvalues(ComplexMatrix(2, 3)); }, ErrorKind::NonSquare));
}

TEST_CASE("eigenvalues: closed forms") {
    // [[a, b], [conj b, c]] has eigenvalues (a+c)/2 +- sqrt(((a-c)/2)^2 + |b|^2).
    const cplx b{0.3, -0.4};
    const ComplexMatrix h{{2.0, b}, {std::conj(b), -1.0}};
    const auto ev = herm_eigenvalues(h);
    const double r = std::sqrt(1.5 * 1.5 + 0.25);
    CHECK(ev[0] == Catch::Approx(0.5 - r).epsilon(1e-14));
    CHECK(ev[1] == Catch::Approx(0.5 + r).epsilon(1e-14));

    // Pauli Y has eigenvalues -1, +1.
    const ComplexMatrix y{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}};
    const auto ey = herm_eigenvalues(y);
    CHECK(std::abs(ey[0] + 1.0) < 1e-14);
    CHECK(std::abs(ey[1] - 1.0) < 1e-14);
}

TEST_CASE("eigenvalues agree with an independent Jacobi solver") {
    oracle::Rng rng(7);
    for (std::size_t n = 1; n <= 9; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const ComplexMatrix h = rng.hermitian(n);
            const auto ours = herm_eigenvalues(h);
            const auto ref = oracle::jacobi_eigenvalues(h);
            REQUIRE(ours.size() == n);
            CHECK(std::is_sorted(ours.begin(), ours.end()));
            for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(ours[k] - ref[k]) < 1e-10);
        }
    }
}

TEST_CASE("eigen-decomposition reconstructs the matrix") {
    oracle::Rng rng(11);
    const ComplexMatrix h = rng.hermitian(6);
    const auto eig = herm_eigen(h);
    std::vector<cplx> diag(eig.values.begin(), eig.values.end());
    const ComplexMatrix back = eig.vectors * ComplexMatrix::diagonal(diag) * dagger(eig.vectors);
    CHECK(max_abs_diff(back, h) < 1e-12);
    CHECK(is_unitary(eig.vectors, {}));
}

TEST_CASE("pseudo-inverse satisfies the Moore-Penrose conditions") {
    oracle::Rng rng(3);
    // Rank-2 Hermitian 5x5.
    ComplexMatrix g(5, 2);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 2; ++j) g(i, j) = rng.complex_normal();
    const ComplexMatrix a = g * ComplexMatrix::diagonal({1.0, -2.5}) * dagger(g);
    const ComplexMatrix p = herm_pseudo_inverse(a);
    CHECK(max_abs_diff(a * p * a, a) < 1e-10);
    CHECK(max_abs_diff(p * a * p, p) < 1e-10);
    CHECK(hermiticity_defect(a * p) < 1e-10);
    CHECK(hermiticity_defect(p * a) < 1e-10);

    const ComplexMatrix full = rng.hermitian(4);
    CHECK(max_abs_diff(herm_pseudo_inverse(full) * full, ComplexMatrix::identity(4)) < 1e-9);
}

TEST_CASE("psd verdict uses the scaled band") {
    const Tolerance tol{};
    CHECK(is_psd(ComplexMatrix::diagonal({1.0, 0.0})).psd);
    CHECK(is_psd(ComplexMatrix::diagonal({1.0, -1.5e-9})).psd);  // band = 1e-9 + 1e-9 * 1
    CHECK_FALSE(is_psd(ComplexMatrix::diagonal({1.0, -3e-9})).psd);
    const auto r = is_psd(ComplexMatrix::diagonal({4.0, -1.0}), tol);
    CHECK_FALSE(r.psd);
    CHECK(r.min_eigenvalue == Catch::Approx(-1.0));
    CHECK(r.band == Catch::Approx(5e-9));
    // Scaling a PSD matrix keeps it PSD, and the band scales with it.
    // At scale 1e6 the band is about 1e-3.
    CHECK(is_psd(ComplexMatrix::diagonal({1e6, -5e-4})).psd);
    CHECK_FALSE(is_psd(ComplexMatrix::diagonal({1e6, -2e-3})).psd);
    CHECK_FALSE(is_psd(ComplexMatrix::diagonal({1e6, -5e-4}), Tolerance{1e-9, 0.0}).psd);
}

TEST_CASE("Kronecker product identities") {
    oracle::Rng rng(5);
    const ComplexMatrix a = rng.hermitian(2), b = rng.hermitian(3), c = rng.hermitian(2), d = rng.hermitian(3);
    CHECK(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-12);
    CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    CHECK(tensor(a, b)(0 * 3 + 2, 1 * 3 + 0) == a(0, 1) * b(2, 0));
}

TEST_CASE("hermitian basis is orthonormal and coordinates round-trip") {
    for (std::size_t d = 1; d <= 4; ++d) {
        const auto basis = hermitian_basis(d);
        REQUIRE(basis.size() == d * d);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(is_hermitian(basis[i], {}));
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const cplx ip = trace_inner(basis[i], basis[j]);
                CHECK(std::abs(ip - cplx{i == j ? 1.0 : 0.0, 0.0}) < 1e-14);
            }
        }
        oracle::Rng rng(static_cast<unsigned>(d));
        const ComplexMatrix h = rng.hermitian(d);
        const auto coords = hermitian_coordinates(h);
        CHECK(max_abs_diff(from_hermitian_coordinates(coords, d), h) < 1e-13);
        for (std::size_t k = 0; k < coords.size(); ++k) {
            CHECK(std::abs(coords[k] - trace_inner(basis[k], h).real()) < 1e-13);
        }
    }
}
