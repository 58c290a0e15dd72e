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

// Projective frames: unitary-valued maps g -> P_g on a finite abelian group
// with P_g P_h = alpha(g,h) P_{gh}, |alpha| = 1 and P_g^{-1} = P_{g^{-1}}.
//
// Built-in constructions:
//   weyl_frame(d)       Z_d^2, omega^{s j l} X^j Z^l, s = (d+1)/2, odd d
//   qubit_frame(signs)  Z_2^2, {I, s_X X, s_Z Z, s_Y Y}
//   leonhardt_frame(d)  Z_{2d}^2, tau^{j l} X^j Z^l, tau = exp(-i pi/d)
//   z2cubed_frame()     Z_2^3, unfaithful qubit frame with kernel {e, (1,0,0)}
//   tensor_frame(a, b)  G_a x G_b, P^a_g (x) P^b_h

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbochner/error.hpp"
#include "qbochner/group.hpp"
#include "qbochner/numerics.hpp"

namespace qbochner {

struct PauliPair {
    ComplexMatrix x;
    ComplexMatrix z;
};

/// Generalized Pauli matrices: Z|k> = omega^k |k>, X|k> = |k+1 mod d>,
/// omega = exp(-2 pi i / d). They satisfy Z X = omega X Z.
inline PauliPair gen_pauli(int d) {
    if (d < 2) throw Error(ErrorKind::InvalidDimension, "generalized Paulis need d >= 2");
    const auto n = static_cast<std::size_t>(d);
    ComplexMatrix x(n, n);
    ComplexMatrix z(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        x((k + 1) % n, k) = 1.0;
        z(k, k) = root_of_unity(static_cast<long long>(k), d);
    }
    return {std::move(x), std::move(z)};
}

inline ComplexMatrix pauli_y() { return ComplexMatrix{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }

/// Where a frame came from; serialized into frame files.
struct FrameInfo {
    std::string kind = "custom";
    std::map<std::string, int> parameters;
};

/// A group together with one d x d operator per element, not yet validated.
struct RawRepresentation {
    FiniteAbelianGroup group;
    std::vector<ComplexMatrix> operators;
};

class ProjectiveFrame;
inline ProjectiveFrame make_frame(FiniteAbelianGroup group, std::vector<ComplexMatrix> operators, FrameInfo info,
                           const Tolerance& tol);

class ProjectiveFrame {
public:
    const FiniteAbelianGroup& group() const noexcept { return group_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return operators_.size(); }
    const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
    const ComplexMatrix& op(std::size_t index) const { return operators_.at(index); }
    const ComplexMatrix& op(const GroupElement& g) const { return operators_.at(group_.index_of(g)); }
    const FrameInfo& info() const noexcept { return info_; }

private:
    friend ProjectiveFrame make_frame(FiniteAbelianGroup, std::vector<ComplexMatrix>, FrameInfo, const Tolerance&);
    ProjectiveFrame(FiniteAbelianGroup g, std::vector<ComplexMatrix> ops, FrameInfo info)
        : group_(std::move(g)), operators_(std::move(ops)), info_(std::move(info)) {
        dim_ = operators_.front().rows();
    }

    FiniteAbelianGroup group_;
    std::vector<ComplexMatrix> operators_;
    FrameInfo info_;
    std::size_t dim_ = 0;
};

namespace detail {

/// alpha with P_a P_b = alpha P_{ab}, together with the residual of that fit.
struct ScalarFit {
    cplx alpha;
    double residual;
};

inline ScalarFit fit_product(const ComplexMatrix& pa, const ComplexMatrix& pb, const ComplexMatrix& pab) {
    const ComplexMatrix prod = pa * pb;
    const double d = static_cast<double>(pa.rows());
    const cplx alpha = trace_inner(prod, dagger(pab)) / d;
    return {alpha, max_abs_diff(prod, pab * alpha)};
}

/// First violated core invariant, or nullopt.
inline std::optional<std::string> check_core_invariants(const FiniteAbelianGroup& group,
                                                        const std::vector<ComplexMatrix>& ops,
                                                        const Tolerance& tol) {
    if (ops.size() != group.size()) {
        return "operator count " + std::to_string(ops.size()) + " != |G| = " + std::to_string(group.size());
    }
    const std::size_t d = ops.front().rows();
    for (const auto& op : ops) {
        if (op.rows() != d || op.cols() != d) return std::string("operators must all be square of the same size");
    }
    const double eps = tol.band(1.0);
    if (max_abs_diff(ops[0], ComplexMatrix::identity(d)) > eps) return std::string("operator at identity is not I");
    for (std::size_t g = 0; g < ops.size(); ++g) {
        if (!is_unitary(ops[g], tol)) return "operator at " + format_residues(group.element(g).residues) + " is not unitary";
    }
    for (std::size_t g = 0; g < ops.size(); ++g) {
        const std::size_t ginv = group.inverse_index(g);
        if (max_abs_diff(dagger(ops[g]), ops[ginv]) > eps * static_cast<double>(d)) {
            return "inverse convention P_g^{-1} = P_{g^{-1}} fails at " + format_residues(group.element(g).residues);
        }
    }
    for (std::size_t a = 0; a < ops.size(); ++a) {
        for (std::size_t b = 0; b < ops.size(); ++b) {
            const auto fit = fit_product(ops[a], ops[b], ops[group.compose_index(a, b)]);
            if (fit.residual > eps * static_cast<double>(d)) {
                return "not projective at (" + format_residues(group.element(a).residues) + "), (" +
                       format_residues(group.element(b).residues) + ")";
            }
            if (std::abs(std::abs(fit.alpha) - 1.0) > eps) return std::string("cocycle value with |alpha| != 1");
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Validates and wraps a set of operators. Throws InvalidFrame naming the
/// first violated invariant.
inline ProjectiveFrame make_frame(FiniteAbelianGroup group, std::vector<ComplexMatrix> operators, FrameInfo info,
                                  const Tolerance& tol = {}) {
    tol.validate();
    if (operators.empty()) throw Error(ErrorKind::InvalidFrame, "no operators");
    if (auto violation = detail::check_core_invariants(group, operators, tol)) {
        throw Error(ErrorKind::InvalidFrame, *violation);
    }
    return ProjectiveFrame(std::move(group), std::move(operators), std::move(info));
}

/// alpha(g, g') indexed by lexicographic element positions.
struct CocycleTable {
    FiniteAbelianGroup group;
    std::vector<cplx> values;  // row-major |G| x |G|

    cplx at(std::size_t g, std::size_t h) const { return values[g * group.size() + h]; }
    cplx at(const GroupElement& g, const GroupElement& h) const { return at(group.index_of(g), group.index_of(h)); }

    /// alpha == 1 everywhere.
    static CocycleTable trivial(const FiniteAbelianGroup& group) {
        return CocycleTable{group, std::vector<cplx>(group.size() * group.size(), cplx{1.0, 0.0})};
    }
};

/// alpha(g,g') = Tr(P_g P_g' P_{gg'}^dagger) / d, with the fit residual checked.
inline CocycleTable cocycle_table(const ProjectiveFrame& frame, const Tolerance& tol = {}) {
    const auto& G = frame.group();
    const std::size_t n = G.size();
    const double eps = tol.band(1.0) * static_cast<double>(frame.dim());
    CocycleTable table{G, std::vector<cplx>(n * n)};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto fit = detail::fit_product(frame.op(a), frame.op(b), frame.op(G.compose_index(a, b)));
            if (fit.residual > eps) {
                throw Error(ErrorKind::NotProjective, "product residual " + std::to_string(fit.residual) + " at (" +
                                                          format_residues(G.element(a).residues) + "), (" +
                                                          format_residues(G.element(b).residues) + ")");
            }
            table.values[a * n + b] = fit.alpha;
        }
    }
    return table;
}

/// Largest |alpha(g,g')alpha(gg',g'') - alpha(g',g'')alpha(g,g'g'')| over all triples.
inline double cocycle_identity_defect(const CocycleTable& alpha) {
    const auto& G = alpha.group;
    const std::size_t n = G.size();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t ab = G.compose_index(a, b);
            for (std::size_t c = 0; c < n; ++c) {
                const cplx lhs = alpha.at(a, b) * alpha.at(ab, c);
                const cplx rhs = alpha.at(b, c) * alpha.at(a, G.compose_index(b, c));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    return worst;
}

/// Elements mapped to a unit multiple of the identity.
inline std::vector<GroupElement> kernel(const ProjectiveFrame& frame, const Tolerance& tol = {}) {
    std::vector<GroupElement> out;
    const std::size_t d = frame.dim();
    const auto eye = ComplexMatrix::identity(d);
    for (std::size_t g = 0; g < frame.size(); ++g) {
        const cplx c = frame.op(g).trace() / static_cast<double>(d);
        if (std::abs(std::abs(c) - 1.0) > tol.band(1.0) * static_cast<double>(d)) continue;
        if (max_abs_diff(frame.op(g), eye * c) <= tol.band(1.0) * static_cast<double>(d)) {
            out.push_back(frame.group().element(g));
        }
    }
    // A kernel that is not closed under the group law means the frame is broken.
    const auto& G = frame.group();
    for (const auto& a : out)
        for (const auto& b : out) {
            if (std::find(out.begin(), out.end(), G.compose(a, b)) == out.end()) {
                throw Error(ErrorKind::InternalInconsistency, "kernel is not a subgroup");
            }
        }
    return out;
}

inline bool is_faithful(const ProjectiveFrame& frame, const Tolerance& tol = {}) {
    return kernel(frame, tol).size() == 1;
}

/// Rephases a projective unitary representation so that P_g^{-1} = P_{g^{-1}}.
/// For each pair {g, g^{-1}} with g != g^{-1} the lexicographically smaller
/// element keeps its phase and the partner absorbs the correction; a
/// self-inverse g gets the principal square root of the correction.
inline ProjectiveFrame phase_fix(const RawRepresentation& raw, FrameInfo info = {}, const Tolerance& tol = {}) {
    tol.validate();
    const auto& G = raw.group;
    const auto& ops = raw.operators;
    if (ops.size() != G.size() || ops.empty()) {
        throw Error(ErrorKind::ShapeMismatch, "need exactly one operator per group element");
    }
    const std::size_t d = ops.front().rows();
    const double eps = tol.band(1.0) * static_cast<double>(d);
    if (max_abs_diff(ops[0], ComplexMatrix::identity(d)) > eps) {
        throw Error(ErrorKind::NotProjective, "representation must send the identity to I");
    }
    for (std::size_t a = 0; a < ops.size(); ++a) {
        if (!is_unitary(ops[a], tol)) throw Error(ErrorKind::NotProjective, "operator is not unitary");
        for (std::size_t b = 0; b < ops.size(); ++b) {
            const auto fit = detail::fit_product(ops[a], ops[b], ops[G.compose_index(a, b)]);
            if (fit.residual > eps) {
                throw Error(ErrorKind::NotProjective, "P_g P_h is not a scalar multiple of P_gh at (" +
                                                          format_residues(G.element(a).residues) + "), (" +
                                                          format_residues(G.element(b).residues) + ")");
            }
        }
    }

    std::vector<cplx> mu(ops.size(), cplx{1.0, 0.0});
    for (std::size_t g = 1; g < ops.size(); ++g) {
        const std::size_t ginv = G.inverse_index(g);
        // beta = alpha(g, g^{-1}) with P_e = I.
        cplx beta = trace_inner(ops[g], ops[ginv]) / static_cast<double>(d);
        beta /= std::abs(beta);
        if (ginv == g) {
            double angle = std::arg(std::conj(beta));
            if (angle <= -std::numbers::pi + 1e-12) angle = std::numbers::pi;
            mu[g] = std::polar(1.0, angle / 2.0);
        } else if (ginv > g) {
            // g is the representative; its partner is corrected when visited.
            mu[g] = 1.0;
        } else {
            const cplx beta_rep = trace_inner(ops[ginv], ops[g]) / static_cast<double>(d);
            mu[g] = std::conj(beta_rep / std::abs(beta_rep));
        }
    }
    std::vector<ComplexMatrix> fixed;
    fixed.reserve(ops.size());
    for (std::size_t g = 0; g < ops.size(); ++g) fixed.push_back(ops[g] * mu[g]);
    return make_frame(G, std::move(fixed), std::move(info), tol);
}

/// Odd-d discrete Weyl frame over Z_d x Z_d.
inline ProjectiveFrame weyl_frame(int d, const Tolerance& tol = {}) {
    if (d % 2 == 0) {
        throw Error(ErrorKind::EvenDimension, "weyl_frame needs odd d (2 has no inverse mod " + std::to_string(d) +
                                                  "); use leonhardt_frame or a tensor construction");
    }
    if (d < 3) throw Error(ErrorKind::InvalidDimension, "weyl_frame needs odd d >= 3");
    const auto [x, z] = gen_pauli(d);
    const long long half = (d + 1) / 2;  // 2^{-1} mod d
    FiniteAbelianGroup G({d, d});
    std::vector<ComplexMatrix> xp, zp;
    for (int k = 0; k < d; ++k) {
        xp.push_back(matrix_power(x, static_cast<unsigned>(k)));
        zp.push_back(matrix_power(z, static_cast<unsigned>(k)));
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(G.size());
    for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
            const cplx phase = root_of_unity(half * j * l, d);
            ops.push_back(xp[static_cast<std::size_t>(j)] * zp[static_cast<std::size_t>(l)] * phase);
        }
    return make_frame(std::move(G), std::move(ops), FrameInfo{"weyl", {{"d", d}}}, tol);
}

struct QubitSigns {
    int x = 1;
    int z = 1;
    int y = 1;
    int parity() const { return x * z * y; }
};

/// Pauli frame over Z_2 x Z_2: (0,0)->I, (1,0)->s_X X, (0,1)->s_Z Z, (1,1)->s_Y Y.
inline ProjectiveFrame qubit_frame(QubitSigns signs = {}, const Tolerance& tol = {}) {
    for (int s : {signs.x, signs.z, signs.y}) {
        if (s != 1 && s != -1) throw Error(ErrorKind::InvalidDimension, "qubit signs must be +1 or -1");
    }
    const auto [x, z] = gen_pauli(2);
    std::vector<ComplexMatrix> ops{ComplexMatrix::identity(2), z * cplx(signs.z), x * cplx(signs.x),
                                   pauli_y() * cplx(signs.y)};
    // Lexicographic order on Z_2^2 is (0,0), (0,1), (1,0), (1,1).
    FrameInfo info{"qubit", {{"sx", signs.x}, {"sz", signs.z}, {"sy", signs.y}, {"parity", signs.parity()}}};
    return make_frame(FiniteAbelianGroup({2, 2}), std::move(ops), std::move(info), tol);
}

/// Tr(P_(1,0) P_(0,1) P_(1,1)) = -2i * parity for a qubit frame.
inline cplx qubit_triple_product(const ProjectiveFrame& frame) {
    const auto& G = frame.group();
    if (G.orders() != std::vector<int>{2, 2} || frame.dim() != 2) {
        throw Error(ErrorKind::GroupMismatch, "triple product invariant is defined for qubit frames over Z_2^2");
    }
    return (frame.op(G.make_element({1, 0})) * frame.op(G.make_element({0, 1})) * frame.op(G.make_element({1, 1})))
        .trace();
}

/// Leonhardt's doubled phase space for any d >= 2, over Z_{2d} x Z_{2d}.
inline ProjectiveFrame leonhardt_frame(int d, const Tolerance& tol = {}) {
    if (d < 2) throw Error(ErrorKind::InvalidDimension, "leonhardt_frame needs d >= 2");
    const auto [x, z] = gen_pauli(d);
    const int m = 2 * d;
    FiniteAbelianGroup G({m, m});
    std::vector<ComplexMatrix> ops;
    ops.reserve(G.size());
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
            const cplx phase = root_of_unity(static_cast<long long>(j) * l, m);  // tau^{jl}
            ops.push_back(matrix_power(x, static_cast<unsigned>(j % d)) * matrix_power(z, static_cast<unsigned>(l % d)) *
                          phase);
        }
    FrameInfo info{"leonhardt", {{"d", d}}};
    if (detail::check_core_invariants(G, ops, tol)) {
        return phase_fix(RawRepresentation{G, std::move(ops)}, std::move(info), tol);
    }
    return make_frame(std::move(G), std::move(ops), std::move(info), tol);
}

/// Unfaithful qubit frame over Z_2^3; (1,0,0) generates the kernel.
inline ProjectiveFrame z2cubed_frame(const Tolerance& tol = {}) {
    const auto [x, z] = gen_pauli(2);
    const auto y = pauli_y();
    const auto eye = ComplexMatrix::identity(2);
    FiniteAbelianGroup G({2, 2, 2});
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < G.size(); ++i) {
        const auto g = G.element(i);
        const int b = g.residues[1];
        const int c = g.residues[2];
        ops.push_back(b == 0 ? (c == 0 ? eye : x) : (c == 0 ? z : y));
    }
    return make_frame(std::move(G), std::move(ops), FrameInfo{"z2cubed", {}}, tol);
}

/// Product frame over G_a x G_b with operators P^a_g (x) P^b_h.
inline ProjectiveFrame tensor_frame(const ProjectiveFrame& a, const ProjectiveFrame& b, const Tolerance& tol = {}) {
    FiniteAbelianGroup G = direct_product(a.group(), b.group());
    std::vector<ComplexMatrix> ops;
    ops.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) ops.push_back(tensor(a.op(i), b.op(k)));
    FrameInfo info{"tensor(" + a.info().kind + "," + b.info().kind + ")", {}};
    for (const auto& [key, v] : a.info().parameters) info.parameters["a." + key] = v;
    for (const auto& [key, v] : b.info().parameters) info.parameters["b." + key] = v;
    if (a.info().kind == "trivial") info = b.info();
    if (b.info().kind == "trivial") info = a.info();
    return make_frame(std::move(G), std::move(ops), std::move(info), tol);
}

/// The one-element frame {I_1}; unit of tensor_frame.
inline ProjectiveFrame trivial_frame() {
    return make_frame(FiniteAbelianGroup::trivial(), {ComplexMatrix::identity(1)}, FrameInfo{"trivial", {}});
}

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Extreme eigenvalues of the frame operator S = sum |F><F| on the real
/// d^2-dimensional space of Hermitian matrices.
inline FrameBounds frame_bounds(const std::vector<ComplexMatrix>& ops, const Tolerance& tol = {}) {
    if (ops.empty()) throw Error(ErrorKind::ShapeMismatch, "empty operator set");
    const std::size_t d = ops.front().rows();
    const std::size_t dim = d * d;
    ComplexMatrix s(dim, dim);
    for (const auto& f : ops) {
        if (f.rows() != d || f.cols() != d) throw Error(ErrorKind::DimensionMismatch, "operators differ in size");
        require_hermitian(f, tol, "frame_bounds");
        const auto v = hermitian_coordinates(f);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) s(i, j) += v[i] * v[j];
    }
    const auto eig = herm_eigenvalues(s, tol);
    return {eig.front(), eig.back()};
}

}  // namespace qbochner
