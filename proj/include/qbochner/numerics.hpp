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

// Dense complex matrices and the Hermitian spectral routines the rest of the
// library is built on. Sizes here never exceed 64x64, so everything is a
// plain row-major std::vector and the eigen-solves go through Eigen.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qbochner/error.hpp"

namespace qbochner {

using cplx = std::complex<double>;

/// Absolute plus relative slack used by every "within tolerance" check.
struct Tolerance {
    double atol = 1e-9;
    double rtol = 1e-9;

    /// Scaled band: atol + rtol * scale.
    double band(double scale) const { return atol + rtol * scale; }

    void validate() const {
        if (!std::isfinite(atol) || !std::isfinite(rtol) || atol < 0.0 || rtol < 0.0) {
            throw Error(ErrorKind::InvalidTolerance, "atol and rtol must be finite and >= 0");
        }
    }
};

class ComplexMatrix {
public:
    ComplexMatrix() : ComplexMatrix(1, 1) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {
        if (rows == 0 || cols == 0) {
            throw Error(ErrorKind::InvalidDimension, "matrix dimensions must be >= 1");
        }
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0) {
            throw Error(ErrorKind::InvalidDimension, "matrix dimensions must be >= 1");
        }
        if (entries_.size() != rows * cols) {
            throw Error(ErrorKind::ShapeMismatch, "entry count does not equal rows*cols");
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        if (rows_ == 0 || cols_ == 0) {
            throw Error(ErrorKind::InvalidDimension, "matrix dimensions must be >= 1");
        }
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged initializer");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const cplx> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<cplx> values) {
        return diagonal(std::span<const cplx>(values.begin(), values.size()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const cplx> entries() const noexcept { return entries_; }
    std::span<cplx> entries() noexcept { return entries_; }

    cplx trace() const {
        require_square("trace");
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : entries_) m = std::max(m, std::abs(z));
        return m;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) {
        for (auto& z : entries_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorKind::DimensionMismatch, "matrix product shapes do not agree");
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        }
        return out;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

    void require_square(const char* what) const {
        if (!is_square()) throw Error(ErrorKind::NonSquare, std::string(what) + " needs a square matrix");
    }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

inline ComplexMatrix dagger(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

/// Integer power of a square matrix, exponent >= 0.
inline ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned exponent) {
    m.require_square("matrix_power");
    ComplexMatrix result = ComplexMatrix::identity(m.rows());
    ComplexMatrix base = m;
    while (exponent > 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

/// Largest entrywise deviation |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
    }
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
    return m;
}

inline double hermiticity_defect(const ComplexMatrix& m) {
    m.require_square("hermiticity check");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

inline bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
    return m.is_square() && hermiticity_defect(m) <= tol.band(m.frobenius_norm());
}

inline void require_hermitian(const ComplexMatrix& m, const Tolerance& tol, const char* what) {
    m.require_square(what);
    const double defect = hermiticity_defect(m);
    if (defect > tol.band(m.frobenius_norm())) {
        throw Error(ErrorKind::NotHermitian,
                    std::string(what) + ": max |m - m^dagger| = " + std::to_string(defect));
    }
}

inline bool is_unitary(const ComplexMatrix& m, const Tolerance& tol) {
    if (!m.is_square()) return false;
    return max_abs_diff(m * dagger(m), ComplexMatrix::identity(m.rows())) <= tol.band(1.0);
}

namespace detail {

inline Eigen::MatrixXcd to_eigen_hermitian(const ComplexMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            out(i, j) = 0.5 * (m(ui, uj) + std::conj(m(uj, ui)));
        }
    return out;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> herm_eigenvalues(const ComplexMatrix& m, const Tolerance& tol = {}) {
    tol.validate();
    require_hermitian(m, tol, "herm_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen_hermitian(m),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::InternalInconsistency, "Hermitian eigen-solve did not converge");
    }
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

struct HermEigen {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // column k is the unit eigenvector of values[k]
};

inline HermEigen herm_eigen(const ComplexMatrix& m, const Tolerance& tol = {}) {
    tol.validate();
    require_hermitian(m, tol, "herm_eigen");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen_hermitian(m));
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::InternalInconsistency, "Hermitian eigen-solve did not converge");
    }
    const auto n = m.rows();
    HermEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, k) = solver.eigenvectors()(static_cast<Eigen::Index>(i),
                                                      static_cast<Eigen::Index>(k));
    }
    return out;
}

/// Moore-Penrose pseudo-inverse of a Hermitian matrix. Eigenvalues with
/// |lambda| <= rcond * max|lambda| are treated as zero.
inline ComplexMatrix herm_pseudo_inverse(const ComplexMatrix& m, double rcond = 1e-10,
                                         const Tolerance& tol = {}) {
    const HermEigen eig = herm_eigen(m, tol);
    double scale = 0.0;
    for (double v : eig.values) scale = std::max(scale, std::abs(v));
    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = eig.values[k];
        if (std::abs(v) <= rcond * scale) continue;
        const double inv = 1.0 / v;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = eig.vectors(i, k) * inv;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
        }
    }
    return out;
}

/// PSD verdict together with the numbers that produced it.
struct PsdResult {
    bool psd = false;
    double min_eigenvalue = 0.0;
    double band = 0.0;  // accepted slack below zero
};

/// PSD iff min eigenvalue >= -(atol + rtol * max|eigenvalue|).
inline PsdResult psd_from_eigenvalues(std::span<const double> eigenvalues, const Tolerance& tol) {
    double scale = 0.0;
    for (double v : eigenvalues) scale = std::max(scale, std::abs(v));
    PsdResult r;
    r.min_eigenvalue = eigenvalues.empty() ? 0.0 : *std::min_element(eigenvalues.begin(), eigenvalues.end());
    r.band = tol.band(scale);
    r.psd = r.min_eigenvalue >= -r.band;
    return r;
}

inline PsdResult is_psd(const ComplexMatrix& m, const Tolerance& tol = {}) {
    const auto eig = herm_eigenvalues(m, tol);
    return psd_from_eigenvalues(eig, tol);
}

/// Tr(a b).
inline cplx trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "trace_inner needs equal square dimensions");
    }
    const std::size_t n = a.rows();
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
    return t;
}

/// Kronecker product; the row/column index of `a` varies slower.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

/// Orthonormal basis of the d x d Hermitian matrices under Tr(AB): diagonal
/// matrix units, then (E_kl + E_lk)/sqrt2 and i(E_kl - E_lk)/sqrt2 for k < l.
inline std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(d * d);
    for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix e(d, d);
        e(k, k) = 1.0;
        basis.push_back(std::move(e));
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l) {
            ComplexMatrix s(d, d);
            s(k, l) = r;
            s(l, k) = r;
            basis.push_back(std::move(s));
            ComplexMatrix a(d, d);
            a(k, l) = cplx{0.0, r};
            a(l, k) = cplx{0.0, -r};
            basis.push_back(std::move(a));
        }
    return basis;
}

/// Real coordinates Tr(B_k A) of a Hermitian matrix in hermitian_basis(d).
inline std::vector<double> hermitian_coordinates(const ComplexMatrix& a) {
    a.require_square("hermitian_coordinates");
    const std::size_t d = a.rows();
    std::vector<double> out;
    out.reserve(d * d);
    for (std::size_t k = 0; k < d; ++k) out.push_back(a(k, k).real());
    const double s = std::sqrt(2.0);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l) {
            // Tr(S A) = (A_lk + A_kl)/sqrt2 ; Tr(Asym A) = i(A_lk - A_kl)/sqrt2
            out.push_back(((a(l, k) + a(k, l)) / s).real());
            out.push_back((cplx{0.0, 1.0} * (a(l, k) - a(k, l)) / s).real());
        }
    return out;
}

inline ComplexMatrix from_hermitian_coordinates(std::span<const double> coords, std::size_t d) {
    if (coords.size() != d * d) throw Error(ErrorKind::ShapeMismatch, "need d*d coordinates");
    const auto basis = hermitian_basis(d);
    ComplexMatrix out(d, d);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (coords[k] != 0.0) out += basis[k] * cplx{coords[k], 0.0};
    }
    return out;
}

}  // namespace qbochner
