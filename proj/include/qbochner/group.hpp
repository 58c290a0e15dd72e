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

// Finite abelian groups Z_{n1} x ... x Z_{nk}, their characters and the
// Fourier transform on functions over them.
//
// Conventions (global to the library):
//   chi_j(g)      = prod_i exp(-2 pi i j_i g_i / n_i)
//   forward  f~_j = (1/|G|) sum_g chi_j(g) f_g
//   inverse  f_g  = sum_j conj(chi_j(g)) f~_j
// A "characteristic function" is the inverse-direction object, so phi(e) is
// the total mass of its transform.
//
// Elements are enumerated lexicographically on residue tuples (first factor
// most significant); every matrix indexed by group elements uses that order.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qbochner/error.hpp"
#include "qbochner/numerics.hpp"

namespace qbochner {

/// Residue tuple of a group element.
struct GroupElement {
    std::vector<int> residues;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Label of an irreducible character; same shape as a GroupElement.
struct DualIndex {
    std::vector<int> residues;
    friend auto operator<=>(const DualIndex&, const DualIndex&) = default;
};

/// exp(-2 pi i k / n) with k reduced mod n first; exact at the quarter turns.
inline cplx root_of_unity(long long k, long long n) {
    k %= n;
    if (k < 0) k += n;
    if (k == 0) return {1.0, 0.0};
    if (2 * k == n) return {-1.0, 0.0};
    if (4 * k == n) return {0.0, -1.0};
    if (4 * k == 3 * n) return {0.0, 1.0};
    return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

inline std::string format_residues(std::span<const int> residues, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(residues[i]);
    }
    return s;
}

class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
        if (orders_.empty()) throw Error(ErrorKind::InvalidOrder, "at least one cyclic factor is required");
        for (int n : orders_) {
            if (n < 2) throw Error(ErrorKind::InvalidOrder, "cyclic order " + std::to_string(n) + " < 2");
        }
        compute_size();
    }

    /// The one-element group (empty order list). Only used as the unit for
    /// tensor products of frames.
    static FiniteAbelianGroup trivial() {
        FiniteAbelianGroup g;
        g.size_ = 1;
        return g;
    }

    const std::vector<int>& orders() const noexcept { return orders_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    std::size_t size() const noexcept { return size_; }

    GroupElement identity() const { return GroupElement{std::vector<int>(orders_.size(), 0)}; }

    /// Element at lexicographic position `index`.
    GroupElement element(std::size_t index) const {
        if (index >= size_) throw Error(ErrorKind::IndexOutOfRange, "element index out of range");
        std::vector<int> r(orders_.size());
        for (std::size_t i = orders_.size(); i-- > 0;) {
            const auto n = static_cast<std::size_t>(orders_[i]);
            r[i] = static_cast<int>(index % n);
            index /= n;
        }
        return GroupElement{std::move(r)};
    }

    std::size_t index_of(std::span<const int> residues) const {
        require_shape(residues);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(residues[i]);
        }
        return idx;
    }
    std::size_t index_of(const GroupElement& g) const { return index_of(g.residues); }
    std::size_t index_of(const DualIndex& j) const { return index_of(j.residues); }

    DualIndex dual(std::size_t index) const { return DualIndex{element(index).residues}; }

    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        out.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) out.push_back(element(i));
        return out;
    }

    /// Reduces arbitrary integers into a valid element.
    GroupElement make_element(std::span<const int> values) const {
        if (values.size() != orders_.size()) {
            throw Error(ErrorKind::GroupMismatch, "element has " + std::to_string(values.size()) +
                                                      " coordinates, group has " + std::to_string(orders_.size()));
        }
        std::vector<int> r(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            r[i] = ((values[i] % orders_[i]) + orders_[i]) % orders_[i];
        }
        return GroupElement{std::move(r)};
    }
    GroupElement make_element(std::initializer_list<int> values) const {
        return make_element(std::span<const int>(values.begin(), values.size()));
    }

    GroupElement compose(const GroupElement& g, const GroupElement& h) const {
        require_shape(g.residues);
        require_shape(h.residues);
        std::vector<int> r(orders_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (g.residues[i] + h.residues[i]) % orders_[i];
        return GroupElement{std::move(r)};
    }

    GroupElement inverse(const GroupElement& g) const {
        require_shape(g.residues);
        std::vector<int> r(orders_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (orders_[i] - g.residues[i]) % orders_[i];
        return GroupElement{std::move(r)};
    }

    /// Index arithmetic shortcuts used by the matrix builders.
    std::size_t compose_index(std::size_t a, std::size_t b) const {
        std::size_t out = 0;
        std::size_t place = 1;
        for (std::size_t i = orders_.size(); i-- > 0;) {
            const auto n = static_cast<std::size_t>(orders_[i]);
            out += ((a % n + b % n) % n) * place;
            a /= n;
            b /= n;
            place *= n;
        }
        return out;
    }
    std::size_t inverse_index(std::size_t a) const {
        std::size_t out = 0;
        std::size_t place = 1;
        for (std::size_t i = orders_.size(); i-- > 0;) {
            const auto n = static_cast<std::size_t>(orders_[i]);
            out += ((n - a % n) % n) * place;
            a /= n;
            place *= n;
        }
        return out;
    }

    /// chi_j(g) = prod_i exp(-2 pi i j_i g_i / n_i). Exponents are reduced
    /// as integers before the transcendental call.
    cplx character(const DualIndex& j, const GroupElement& g) const {
        require_shape(j.residues);
        require_shape(g.residues);
        // Single rational phase num/L with L = lcm(orders), reduced exactly.
        long long lcm = 1;
        for (int n : orders_) lcm = std::lcm(lcm, static_cast<long long>(n));
        long long num = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const long long n = orders_[i];
            const long long p = (static_cast<long long>(j.residues[i]) * g.residues[i]) % n;
            num = (num + p * (lcm / n)) % lcm;
        }
        return root_of_unity(num, lcm);
    }

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.orders_ == b.orders_;
    }

    void require_same(const FiniteAbelianGroup& other) const {
        if (!(*this == other)) throw Error(ErrorKind::GroupMismatch, "objects belong to different groups");
    }

    std::string describe() const {
        if (orders_.empty()) return "Z_1";
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += " x ";
            s += "Z_" + std::to_string(orders_[i]);
        }
        return s;
    }

private:
    FiniteAbelianGroup() = default;

    void compute_size() {
        size_ = 1;
        for (int n : orders_) size_ *= static_cast<std::size_t>(n);
    }

    void require_shape(std::span<const int> residues) const {
        if (residues.size() != orders_.size()) {
            throw Error(ErrorKind::GroupMismatch, "tuple of length " + std::to_string(residues.size()) +
                                                      " does not fit " + describe());
        }
        for (std::size_t i = 0; i < residues.size(); ++i) {
            if (residues[i] < 0 || residues[i] >= orders_[i]) {
                throw Error(ErrorKind::GroupMismatch, "residue out of range for " + describe());
            }
        }
    }

    std::vector<int> orders_;
    std::size_t size_ = 1;
};

inline FiniteAbelianGroup make_group(std::vector<int> orders) { return FiniteAbelianGroup(std::move(orders)); }

/// Direct product with the factors of `a` first.
inline FiniteAbelianGroup direct_product(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    std::vector<int> orders = a.orders();
    orders.insert(orders.end(), b.orders().begin(), b.orders().end());
    if (orders.empty()) return FiniteAbelianGroup::trivial();
    return FiniteAbelianGroup(std::move(orders));
}

/// True iff G is isomorphic to H x H for some H: every prime-power cyclic
/// factor occurs an even number of times.
inline bool is_square_group(const FiniteAbelianGroup& group) {
    std::vector<long long> prime_powers;
    for (int n : group.orders()) {
        int m = n;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            long long q = 1;
            while (m % p == 0) {
                m /= p;
                q *= p;
            }
            prime_powers.push_back(q);
        }
        if (m > 1) prime_powers.push_back(m);
    }
    std::sort(prime_powers.begin(), prime_powers.end());
    for (std::size_t i = 0; i < prime_powers.size();) {
        std::size_t k = i;
        while (k < prime_powers.size() && prime_powers[k] == prime_powers[i]) ++k;
        if ((k - i) % 2 != 0) return false;
        i = k;
    }
    return true;
}

/// Row j, column g holds chi_j(g).
inline ComplexMatrix character_table(const FiniteAbelianGroup& group) {
    const std::size_t n = group.size();
    ComplexMatrix table(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const DualIndex dj = group.dual(j);
        for (std::size_t g = 0; g < n; ++g) table(j, g) = group.character(dj, group.element(g));
    }
    return table;
}

/// Complex values over the elements of a group in lexicographic order. Also
/// used for functions on the dual, indexed by DualIndex in the same order.
struct GroupFunction {
    FiniteAbelianGroup group;
    std::vector<cplx> values;

    GroupFunction(FiniteAbelianGroup g, std::vector<cplx> v) : group(std::move(g)), values(std::move(v)) {
        if (values.size() != group.size()) {
            throw Error(ErrorKind::GroupMismatch, "function has " + std::to_string(values.size()) +
                                                      " values, group has " + std::to_string(group.size()));
        }
    }

    const cplx& operator[](std::size_t i) const { return values[i]; }
    const cplx& at(const GroupElement& g) const { return values[group.index_of(g)]; }
};

inline GroupFunction fourier_forward(const GroupFunction& f) {
    const auto& G = f.group;
    const std::size_t n = G.size();
    const auto table = character_table(G);
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx s{0.0, 0.0};
        for (std::size_t g = 0; g < n; ++g) s += table(j, g) * f.values[g];
        out[j] = s / static_cast<double>(n);
    }
    return GroupFunction(G, std::move(out));
}

inline GroupFunction fourier_inverse(const GroupFunction& transformed) {
    const auto& G = transformed.group;
    const std::size_t n = G.size();
    const auto table = character_table(G);
    std::vector<cplx> out(n);
    for (std::size_t g = 0; g < n; ++g) {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) s += std::conj(table(j, g)) * transformed.values[j];
        out[g] = s;
    }
    return GroupFunction(G, std::move(out));
}

/// Largest |phi(g^{-1}) - conj(phi(g))| over the group.
inline double conjugate_symmetry_defect(const GroupFunction& phi) {
    double worst = 0.0;
    for (std::size_t g = 0; g < phi.group.size(); ++g) {
        worst = std::max(worst, std::abs(phi.values[phi.group.inverse_index(g)] - std::conj(phi.values[g])));
    }
    return worst;
}

/// T[g][g'] = phi(g' g^{-1}).
inline ComplexMatrix translate_matrix(const GroupFunction& phi) {
    const auto& G = phi.group;
    const std::size_t n = G.size();
    ComplexMatrix t(n, n);
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t ginv = G.inverse_index(g);
        for (std::size_t h = 0; h < n; ++h) t(g, h) = phi.values[G.compose_index(h, ginv)];
    }
    return t;
}

struct ClassicalBochnerResult {
    bool accepted = false;
    bool normalized = false;          // phi(e) == 1
    bool conjugate_symmetric = false;
    bool positive_definite = false;
    double translate_min_eig = 0.0;
    std::vector<double> pmf;          // real parts of the forward transform
    std::size_t witness_index = 0;    // argmin of pmf
    double witness_value = 0.0;
    double max_imag_residue = 0.0;
};

/// Decides whether phi is the characteristic function of a probability mass
/// function on the dual group: phi(e) = 1 and phi positive definite.
inline ClassicalBochnerResult classical_bochner_check(const GroupFunction& phi, const Tolerance& tol = {}) {
    tol.validate();
    ClassicalBochnerResult r;
    const auto& G = phi.group;
    const std::size_t n = G.size();

    const GroupFunction mu = fourier_forward(phi);
    r.pmf.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        r.pmf[j] = mu.values[j].real();
        r.max_imag_residue = std::max(r.max_imag_residue, std::abs(mu.values[j].imag()));
    }
    r.witness_index = static_cast<std::size_t>(std::min_element(r.pmf.begin(), r.pmf.end()) - r.pmf.begin());
    r.witness_value = r.pmf[r.witness_index];

    double scale = 0.0;
    for (const auto& v : phi.values) scale = std::max(scale, std::abs(v));

    r.normalized = std::abs(phi.values[0] - cplx{1.0, 0.0}) <= tol.band(1.0);
    r.conjugate_symmetric = conjugate_symmetry_defect(phi) <= tol.band(scale);
    if (r.conjugate_symmetric) {
        const auto psd = is_psd(translate_matrix(phi), tol);
        r.positive_definite = psd.psd;
        r.translate_min_eig = psd.min_eigenvalue;
    }
    r.accepted = r.normalized && r.conjugate_symmetric && r.positive_definite;

    if (r.accepted) {
        // The eigenvalues of T are |G| * mu_j, so acceptance forces a pmf.
        const double slack = 10.0 * tol.band(1.0);
        const double total = std::accumulate(r.pmf.begin(), r.pmf.end(), 0.0);
        if (r.witness_value < -slack || std::abs(total - 1.0) > slack || r.max_imag_residue > slack) {
            throw Error(ErrorKind::InternalInconsistency,
                        "translate matrix accepted but transform is not a pmf (min " +
                            std::to_string(r.witness_value) + ", sum " + std::to_string(total) + ")");
        }
    }
    return r;
}

}  // namespace qbochner
