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

// Phase-space certificates from a characteristic function alone.
//
//   M^C[g][g'] = phi(g' g^{-1})
//   M^Q[g][g'] = phi(g' g^{-1}) alpha(g^{-1}, g')
//
// For a projective frame, rho >= 0 iff M^Q >= 0 (since a^dagger M^Q a =
// Tr(rho A^dagger A) with A = sum_g a_g P_g), and the quasi-probabilities are
// nonnegative iff M^C >= 0 (its eigenvalues are |G| mu_j). Both verdicts are
// cross-checked against direct oracles: the spectrum of rho and min_j mu_j.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qbochner/error.hpp"
#include "qbochner/group.hpp"
#include "qbochner/numerics.hpp"
#include "qbochner/projective.hpp"
#include "qbochner/quasiprob.hpp"

namespace qbochner {

inline ComplexMatrix build_mc(const CharacteristicFunction& phi, const Tolerance& tol = {}) {
    double scale = 0.0;
    for (const auto& v : phi.values) scale = std::max(scale, std::abs(v));
    const double defect = conjugate_symmetry_defect(phi);
    if (defect > tol.band(scale)) {
        throw Error(ErrorKind::NotConjugateSymmetric,
                    "phi(g^{-1}) != conj(phi(g)) (defect " + std::to_string(defect) + ")");
    }
    return translate_matrix(phi);
}

inline ComplexMatrix build_mq(const CharacteristicFunction& phi, const CocycleTable& alpha, const Tolerance& tol = {}) {
    if (!(phi.group == alpha.group)) {
        throw Error(ErrorKind::CocycleMismatch, "cocycle is defined on " + alpha.group.describe() +
                                                    ", characteristic function on " + phi.group.describe());
    }
    ComplexMatrix m = build_mc(phi, tol);
    const auto& G = phi.group;
    const std::size_t n = G.size();
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t ginv = G.inverse_index(g);
        for (std::size_t h = 0; h < n; ++h) m(g, h) *= alpha.at(ginv, h);
    }
    double scale = 0.0;
    for (const auto& v : phi.values) scale = std::max(scale, std::abs(v));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = g; h < n; ++h) {
            if (std::abs(m(g, h) - std::conj(m(h, g))) > tol.band(scale)) {
                throw Error(ErrorKind::CocycleMismatch,
                            "M^Q is not Hermitian at (" + format_residues(G.element(g).residues) + "), (" +
                                format_residues(G.element(h).residues) + ")");
            }
        }
    return m;
}

/// Three-way PSD classification. Values inside [-10 band, -band) are too
/// close to call.
enum class Verdict { Positive, Boundary, Negative };

inline Verdict classify(const PsdResult& r) {
    if (r.psd) return Verdict::Positive;
    if (r.min_eigenvalue >= -10.0 * r.band) return Verdict::Boundary;
    return Verdict::Negative;
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Positive: return "positive";
        case Verdict::Boundary: return "boundary";
        case Verdict::Negative: return "negative";
    }
    return "?";
}

struct BochnerCertificate {
    CharacteristicFunction phi;
    std::vector<double> mu{};
    Tolerance tol{};

    double mc_min_eig = 0.0;
    double mq_min_eig = 0.0;
    double mc_band = 0.0;
    double mq_band = 0.0;
    Verdict mc_verdict = Verdict::Negative;
    Verdict mq_verdict = Verdict::Negative;

    bool is_quantum_state = false;           // mq_min_eig >= -mq_band
    bool is_positively_representable = false;  // and mc_min_eig >= -mc_band
    bool boundary = false;                   // some verdict in the indeterminate band

    // Direct oracles.
    double state_min_eig = 0.0;
    double min_mu = 0.0;
    bool oracle_quantum_state = false;
    bool oracle_positive = false;
    bool oracle_agreement_quantum = false;
    bool oracle_agreement_positivity = false;

    // Only set by certify_distribution.
    std::optional<bool> input_nonnegative{};
    std::optional<bool> reproduces_input{};
};

/// Exit-code contract of the command-line tool: 0 valid and positively
/// represented, 3 not a quantum state, 4 valid but negatively represented,
/// 5 indeterminate.
inline int certificate_exit_code(const BochnerCertificate& c) {
    if (c.mq_verdict == Verdict::Negative) return 3;
    if (c.mq_verdict == Verdict::Boundary) return 5;
    if (c.mc_verdict == Verdict::Negative) return 4;
    if (c.mc_verdict == Verdict::Boundary) return 5;
    return 0;
}

namespace detail {

inline bool oracle_agrees(bool matrix_verdict, bool oracle_verdict, double oracle_value, double oracle_band) {
    return matrix_verdict == oracle_verdict || std::abs(oracle_value) <= 10.0 * oracle_band;
}

}  // namespace detail

/// Certificate for a Hermitian, trace-one operator.
inline BochnerCertificate certify_state(const QuasiProbRepresentation& rep, const ComplexMatrix& rho,
                                        const Tolerance& tol = {}) {
    tol.validate();
    detail::require_state_shape(rep, rho, tol);
    const cplx tr = rho.trace();
    if (std::abs(tr - cplx{1.0, 0.0}) > 10.0 * tol.band(rho.frobenius_norm())) {
        throw Error(ErrorKind::NotNormalized, "Tr rho = " + std::to_string(tr.real()) + ", expected 1");
    }

    BochnerCertificate c{.phi = characteristic(rep, rho, tol), .tol = tol};
    const auto mu = represent(rep, rho, tol);
    c.mu = mu.values;

    const auto mc = is_psd(build_mc(c.phi, tol), tol);
    const auto mq = is_psd(build_mq(c.phi, rep.cocycle(), tol), tol);
    c.mc_min_eig = mc.min_eigenvalue;
    c.mc_band = mc.band;
    c.mq_min_eig = mq.min_eigenvalue;
    c.mq_band = mq.band;
    c.mc_verdict = classify(mc);
    c.mq_verdict = classify(mq);
    c.is_quantum_state = mq.psd;
    c.is_positively_representable = mq.psd && mc.psd;
    c.boundary = c.mq_verdict == Verdict::Boundary || (mq.psd && c.mc_verdict == Verdict::Boundary);

    const auto rho_eig = herm_eigenvalues(rho, tol);
    const auto rho_psd = psd_from_eigenvalues(rho_eig, tol);
    c.state_min_eig = rho_psd.min_eigenvalue;
    c.oracle_quantum_state = rho_psd.psd;
    const auto mu_psd = psd_from_eigenvalues(c.mu, tol);
    c.min_mu = mu_psd.min_eigenvalue;
    c.oracle_positive = rho_psd.psd && mu_psd.psd;

    c.oracle_agreement_quantum =
        detail::oracle_agrees(c.is_quantum_state, c.oracle_quantum_state, c.state_min_eig, rho_psd.band);
    c.oracle_agreement_positivity =
        detail::oracle_agrees(mc.psd, mu_psd.psd, c.min_mu, mu_psd.band);
    return c;
}

/// Certificate for a quasi-probability vector: reconstruct, then judge.
inline BochnerCertificate certify_distribution(const QuasiProbRepresentation& rep, std::span<const double> mu,
                                               const Tolerance& tol = {}) {
    tol.validate();
    if (mu.size() != rep.group().size()) {
        throw Error(ErrorKind::ShapeMismatch, "distribution has " + std::to_string(mu.size()) + " entries, need " +
                                                  std::to_string(rep.group().size()));
    }
    double total = 0.0;
    double scale = 0.0;
    for (double v : mu) {
        total += v;
        scale = std::max(scale, std::abs(v));
    }
    if (std::abs(total - 1.0) > 10.0 * tol.band(scale * static_cast<double>(mu.size()))) {
        throw Error(ErrorKind::NotNormalized, "distribution sums to " + std::to_string(total));
    }
    ComplexMatrix rho = reconstruct(rep, mu);
    rho = (rho + dagger(rho)) * cplx{0.5, 0.0};
    BochnerCertificate c = certify_state(rep, rho, tol);

    c.input_nonnegative = *std::min_element(mu.begin(), mu.end()) >= -tol.band(scale);
    double worst = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) worst = std::max(worst, std::abs(c.mu[j] - mu[j]));
    c.reproduces_input = worst <= 1e-8 * std::max(1.0, scale);
    return c;
}

struct ScanRow {
    std::optional<BochnerCertificate> certificate;
    std::string error;  // set when certification threw
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::size_t valid = 0;
    std::size_t positive = 0;
    std::size_t boundary = 0;
    std::size_t failed = 0;
};

/// Certifies every state. Rows keep input order; per-item errors are recorded
/// instead of aborting. Work is split over threads, but each row depends only
/// on its own input so the result is independent of scheduling.
inline ScanResult scan(const QuasiProbRepresentation& rep, const std::vector<ComplexMatrix>& states,
                       const Tolerance& tol = {}, unsigned threads = 0) {
    ScanResult result;
    result.rows.resize(states.size());
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(states.size(), 1)));

    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < states.size(); i += stride) {
            try {
                result.rows[i].certificate = certify_state(rep, states[i], tol);
            } catch (const Error& e) {
                result.rows[i].error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t, threads);
        work(0, threads);
    }

    for (const auto& row : result.rows) {
        if (!row.certificate) {
            ++result.failed;
            continue;
        }
        result.valid += row.certificate->is_quantum_state ? 1 : 0;
        result.positive += row.certificate->is_positively_representable ? 1 : 0;
        result.boundary += row.certificate->boundary ? 1 : 0;
    }
    return result;
}

}  // namespace qbochner
