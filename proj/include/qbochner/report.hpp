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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qbochner/group.hpp"
#include "qbochner/numerics.hpp"
#include "qbochner/projective.hpp"
#include "qbochner/quasiprob.hpp"

namespace qbochner {

struct FrameCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct FrameReport {
    std::vector<FrameCheck> checks;
    std::vector<GroupElement> kernel;
    bool faithful = false;
    FrameBounds fourier_bounds;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const FrameCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
};

inline double cocycle_normalization_defect(const CocycleTable& alpha) {
    const auto& G = alpha.group;
    double worst = 0.0;
    for (std::size_t g = 0; g < G.size(); ++g) {
        const std::size_t ginv = G.inverse_index(g);
        worst = std::max({worst, std::abs(alpha.at(0, g) - 1.0), std::abs(alpha.at(g, 0) - 1.0),
                          std::abs(alpha.at(g, ginv) - 1.0), std::abs(alpha.at(ginv, g) - 1.0)});
        for (std::size_t h = 0; h < G.size(); ++h) worst = std::max(worst, std::abs(std::abs(alpha.at(g, h)) - 1.0));
    }
    return worst;
}

/// Cocycle identity defect on every triple for |G| <= 16, otherwise on
/// `samples` triples drawn with a fixed seed.
inline double cocycle_identity_defect_sampled(const CocycleTable& alpha, std::size_t samples = 1000,
                                              std::uint64_t seed = 0) {
    const auto& G = alpha.group;
    const std::size_t n = G.size();
    if (n <= 16) return cocycle_identity_defect(alpha);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t a = rng() % n;
        const std::size_t b = rng() % n;
        const std::size_t c = rng() % n;
        const cplx lhs = alpha.at(a, b) * alpha.at(G.compose_index(a, b), c);
        const cplx rhs = alpha.at(b, c) * alpha.at(a, G.compose_index(b, c));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

/// Full invariant suite for a frame: cocycle conventions, cocycle identity,
/// kernel, group shape for faithful frames, tracelessness and orthogonality,
/// and spanning of the Fourier frame.
inline FrameReport verify_frame(const ProjectiveFrame& frame, const Tolerance& tol = {}) {
    FrameReport report;
    const auto& G = frame.group();
    const std::size_t d = frame.dim();
    const double eps = 10.0 * tol.band(1.0) * static_cast<double>(d);
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", v);
        return std::string(buf);
    };

    add("unitary, P_e = I, P_g^dagger = P_(g^-1), projective", true, "checked at construction");

    CocycleTable alpha = CocycleTable::trivial(G);
    try {
        alpha = cocycle_table(frame, tol);
        const double norm_defect = cocycle_normalization_defect(alpha);
        add("cocycle |alpha| = 1, alpha(g,g^-1) = alpha(g^-1,g) = 1", norm_defect <= eps, "max defect " + num(norm_defect));
        const double id_defect = cocycle_identity_defect_sampled(alpha);
        add("2-cocycle identity", id_defect <= eps,
            std::string(G.size() <= 16 ? "all triples" : "1000 sampled triples") + ", max defect " + num(id_defect));
    } catch (const Error& e) {
        add("cocycle extraction", false, e.what());
    }

    try {
        report.kernel = kernel(frame, tol);
        report.faithful = report.kernel.size() == 1;
        std::string ks;
        for (const auto& k : report.kernel) ks += "(" + format_residues(k.residues) + ")";
        add("kernel is a subgroup", true, ks + (report.faithful ? " faithful" : " unfaithful"));
    } catch (const Error& e) {
        add("kernel is a subgroup", false, e.what());
    }

    if (report.faithful) {
        const bool shape_ok = G.size() == d * d && is_square_group(G);
        add("faithful frame group is H x H with |H| = d", shape_ok, G.describe() + ", d = " + std::to_string(d));
        double max_trace = 0.0;
        for (std::size_t g = 1; g < frame.size(); ++g) max_trace = std::max(max_trace, std::abs(frame.op(g).trace()));
        add("traceless for g != e", max_trace <= eps, "max |Tr P_g| " + num(max_trace));
        double gram_defect = 0.0;
        for (std::size_t a = 0; a < frame.size(); ++a)
            for (std::size_t b = 0; b < frame.size(); ++b) {
                const cplx ip = trace_inner(dagger(frame.op(a)), frame.op(b));
                const double expect = a == b ? static_cast<double>(d) : 0.0;
                gram_defect = std::max(gram_defect, std::abs(ip - expect));
            }
        add("pairwise trace-orthogonal (Gram = d I)", gram_defect <= eps, "max defect " + num(gram_defect));
    }

    try {
        const auto rep = build_representation(frame, tol);
        report.fourier_bounds = rep.bounds();
        add("Fourier frame spans (lower bound > 0)", true,
            "bounds [" + num(rep.bounds().lower) + ", " + num(rep.bounds().upper) + "]");
    } catch (const Error& e) {
        add("Fourier frame spans (lower bound > 0)", false, e.what());
    }
    return report;
}

}  // namespace qbochner
