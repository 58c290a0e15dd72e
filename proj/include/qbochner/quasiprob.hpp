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

// Quasi-probability representations generated by a projective frame.
//
//   F_j    = (1/|G|) sum_g chi_j(g) P_g        (Hermitian, sum_j F_j = I)
//   mu_j   = Tr(rho F_j)                       (represent)
//   phi(g) = Tr(rho P_g)                       (characteristic)
//   rho    = sum_j mu_j D_j                    (reconstruct, D = S^+ F)
//
// mu is the forward group transform of phi, so the two maps commute with
// fourier_forward.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "qbochner/error.hpp"
#include "qbochner/group.hpp"
#include "qbochner/numerics.hpp"
#include "qbochner/projective.hpp"

namespace qbochner {

using CharacteristicFunction = GroupFunction;

/// Real quasi-probabilities indexed by the dual group in lexicographic order.
struct QuasiProbDistribution {
    FiniteAbelianGroup group;
    std::vector<double> values;
    double max_imag_residue = 0.0;  // largest |Im Tr(rho F_j)| that was dropped

    double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
    double min() const { return *std::min_element(values.begin(), values.end()); }
};

class QuasiProbRepresentation {
public:
    const ProjectiveFrame& frame() const noexcept { return frame_; }
    const FiniteAbelianGroup& group() const noexcept { return frame_.group(); }
    std::size_t dim() const noexcept { return frame_.dim(); }
    const std::vector<ComplexMatrix>& fourier_ops() const noexcept { return fourier_ops_; }
    const std::vector<ComplexMatrix>& dual_ops() const noexcept { return dual_ops_; }
    FrameBounds bounds() const noexcept { return bounds_; }
    const CocycleTable& cocycle() const noexcept { return cocycle_; }

private:
    friend QuasiProbRepresentation build_representation(const ProjectiveFrame&, const Tolerance&);
    QuasiProbRepresentation(ProjectiveFrame frame, CocycleTable cocycle)
        : frame_(std::move(frame)), cocycle_(std::move(cocycle)) {}

    ProjectiveFrame frame_;
    CocycleTable cocycle_;
    std::vector<ComplexMatrix> fourier_ops_;
    std::vector<ComplexMatrix> dual_ops_;
    FrameBounds bounds_;
};

/// F_j = (1/|G|) sum_g chi_j(g) P_g, without symmetrization.
inline std::vector<ComplexMatrix> fourier_transform_operators(const ProjectiveFrame& frame) {
    const auto& G = frame.group();
    const std::size_t n = G.size();
    const auto table = character_table(G);
    std::vector<ComplexMatrix> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        ComplexMatrix f(frame.dim(), frame.dim());
        for (std::size_t g = 0; g < n; ++g) f += frame.op(g) * table(j, g);
        f *= cplx{1.0 / static_cast<double>(n), 0.0};
        out.push_back(std::move(f));
    }
    return out;
}

inline QuasiProbRepresentation build_representation(const ProjectiveFrame& frame, const Tolerance& tol = {}) {
    tol.validate();
    QuasiProbRepresentation rep(frame, cocycle_table(frame, tol));
    const std::size_t d = frame.dim();
    const std::size_t n = frame.size();

    auto raw = fourier_transform_operators(frame);
    rep.fourier_ops_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix& f = raw[j];
        const ComplexMatrix fd = dagger(f);
        const double defect = (f - fd).frobenius_norm();
        if (defect > 1e-8 * f.frobenius_norm() + tol.atol) {
            throw Error(ErrorKind::NotHermitian,
                        "Fourier operator " + format_residues(frame.group().dual(j).residues) +
                            " is not Hermitian (defect " + std::to_string(defect) +
                            "); the frame violates P_g^{-1} = P_{g^{-1}}");
        }
        rep.fourier_ops_.push_back((f + fd) * cplx{0.5, 0.0});
    }

    ComplexMatrix total(d, d);
    for (const auto& f : rep.fourier_ops_) total += f;
    if (max_abs_diff(total, ComplexMatrix::identity(d)) > tol.band(1.0) * static_cast<double>(d)) {
        throw Error(ErrorKind::InternalInconsistency, "Fourier operators do not sum to the identity");
    }

    // Frame operator on the real space of Hermitian matrices.
    const std::size_t dim = d * d;
    std::vector<std::vector<double>> coords;
    coords.reserve(n);
    ComplexMatrix s(dim, dim);
    for (const auto& f : rep.fourier_ops_) {
        coords.push_back(hermitian_coordinates(f));
        const auto& v = coords.back();
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) s(a, b) += v[a] * v[b];
    }
    const auto eig = herm_eigenvalues(s, tol);
    rep.bounds_ = {eig.front(), eig.back()};
    if (rep.bounds_.lower <= tol.band(rep.bounds_.upper)) {
        throw Error(ErrorKind::NotAFrame, "Fourier operators do not span the Hermitian matrices (lower bound " +
                                              std::to_string(rep.bounds_.lower) + ")");
    }

    const ComplexMatrix s_pinv = herm_pseudo_inverse(s, 1e-10, tol);
    rep.dual_ops_.reserve(n);
    for (const auto& v : coords) {
        std::vector<double> w(dim, 0.0);
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) w[a] += s_pinv(a, b).real() * v[b];
        rep.dual_ops_.push_back(from_hermitian_coordinates(w, d));
    }

    // Reconstruction identity on an orthonormal Hermitian basis.
    for (const auto& basis_op : hermitian_basis(d)) {
        ComplexMatrix back(d, d);
        for (std::size_t j = 0; j < n; ++j) back += rep.dual_ops_[j] * trace_inner(basis_op, rep.fourier_ops_[j]);
        if (max_abs_diff(back, basis_op) > 1e-8) {
            throw Error(ErrorKind::InternalInconsistency, "dual frame does not reconstruct the Hermitian basis");
        }
    }
    return rep;
}

namespace detail {

inline void require_state_shape(const QuasiProbRepresentation& rep, const ComplexMatrix& rho, const Tolerance& tol) {
    if (!rho.is_square() || rho.rows() != rep.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "operator is " + std::to_string(rho.rows()) + "x" +
                                                      std::to_string(rho.cols()) + ", representation has d = " +
                                                      std::to_string(rep.dim()));
    }
    require_hermitian(rho, tol, "state");
}

}  // namespace detail

/// mu_j = Tr(rho F_j).
inline QuasiProbDistribution represent(const QuasiProbRepresentation& rep, const ComplexMatrix& rho,
                                       const Tolerance& tol = {}) {
    detail::require_state_shape(rep, rho, tol);
    QuasiProbDistribution mu{rep.group(), {}, 0.0};
    mu.values.reserve(rep.fourier_ops().size());
    for (const auto& f : rep.fourier_ops()) {
        const cplx v = trace_inner(rho, f);
        mu.max_imag_residue = std::max(mu.max_imag_residue, std::abs(v.imag()));
        mu.values.push_back(v.real());
    }
    const double trace = rho.trace().real();
    if (std::abs(mu.sum() - trace) > 10.0 * tol.band(rho.frobenius_norm() * static_cast<double>(rep.dim()))) {
        throw Error(ErrorKind::InternalInconsistency, "quasi-probabilities do not sum to Tr rho");
    }
    return mu;
}

/// phi(g) = Tr(rho P_g).
inline CharacteristicFunction characteristic(const QuasiProbRepresentation& rep, const ComplexMatrix& rho,
                                             const Tolerance& tol = {}) {
    detail::require_state_shape(rep, rho, tol);
    std::vector<cplx> values;
    values.reserve(rep.frame().size());
    for (const auto& p : rep.frame().operators()) values.push_back(trace_inner(rho, p));
    return CharacteristicFunction(rep.group(), std::move(values));
}

/// sum_j mu_j D_j. For frames with a singular frame operator this is the
/// minimum-norm consistent reconstruction.
inline ComplexMatrix reconstruct(const QuasiProbRepresentation& rep, std::span<const double> mu) {
    if (mu.size() != rep.dual_ops().size()) {
        throw Error(ErrorKind::ShapeMismatch, "distribution has " + std::to_string(mu.size()) + " entries, need " +
                                                  std::to_string(rep.dual_ops().size()));
    }
    ComplexMatrix rho(rep.dim(), rep.dim());
    for (std::size_t j = 0; j < mu.size(); ++j) {
        if (mu[j] != 0.0) rho += rep.dual_ops()[j] * cplx{mu[j], 0.0};
    }
    return rho;
}

inline ComplexMatrix reconstruct(const QuasiProbRepresentation& rep, const QuasiProbDistribution& mu) {
    rep.group().require_same(mu.group);
    return reconstruct(rep, mu.values);
}

/// Discrete Wigner function of a pure state in odd dimension d, row q, column p:
///   W(q,p) = (1/d) sum_s omega^{-p s} a_{q - s/2} conj(a_{q + s/2}),
/// with s/2 = s (d+1)/2 mod d. Returned row-major, d*d entries.
inline std::vector<double> gross_wigner_pure(std::span<const cplx> amplitudes, int d, const Tolerance& tol = {}) {
    if (d % 2 == 0) throw Error(ErrorKind::EvenDimension, "Gross Wigner function needs odd d");
    if (d < 3) throw Error(ErrorKind::InvalidDimension, "Gross Wigner function needs d >= 3");
    if (amplitudes.size() != static_cast<std::size_t>(d)) {
        throw Error(ErrorKind::DimensionMismatch, "amplitude vector length differs from d");
    }
    double norm = 0.0;
    for (const auto& a : amplitudes) norm += std::norm(a);
    if (std::abs(norm - 1.0) > tol.band(1.0) * 10.0) {
        throw Error(ErrorKind::NotNormalized, "state vector has squared norm " + std::to_string(norm));
    }
    const long long half = (d + 1) / 2;
    const auto wrap = [d](long long k) { return static_cast<std::size_t>(((k % d) + d) % d); };
    std::vector<double> out(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
            cplx acc{0.0, 0.0};
            for (int s = 0; s < d; ++s) {
                const long long t = half * s;
                acc += root_of_unity(-static_cast<long long>(p) * s, d) * amplitudes[wrap(q - t)] *
                       std::conj(amplitudes[wrap(q + t)]);
            }
            out[static_cast<std::size_t>(q) * static_cast<std::size_t>(d) + static_cast<std::size_t>(p)] =
                acc.real() / d;
        }
    return out;
}

/// Fixed relabeling between Gross's (q, p) and the Weyl representation's
/// dual index: W_Gross(q, p) = mu_(a, b) with a = -p, b = -q (mod d).
inline DualIndex gross_to_dual(int d, int q, int p) {
    const auto wrap = [d](int k) { return ((k % d) + d) % d; };
    return DualIndex{{wrap(-p), wrap(-q)}};
}

}  // namespace qbochner
