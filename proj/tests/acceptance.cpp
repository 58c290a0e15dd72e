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

// Acceptance suite. Prints one PASS/FAIL line per criterion; with an
// argument N only criterion N runs. Exit status is nonzero if any selected
// criterion fails.
//
// Reference values come from oracles in oracles.hpp (Jacobi eigenvalues,
// floating-point characters, Fourier operators rebuilt here) rather than
// from the library routines under test.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qbochner/certificate.hpp"
#include "qbochner/io.hpp"
#include "qbochner/projective.hpp"
#include "qbochner/quasiprob.hpp"
#include "qbochner/report.hpp"
#include "qbochner/states.hpp"

using namespace qbochner;

namespace {

// Pinned tolerances.
constexpr double kOracleBand = 1e-8;          // criteria 1, 2: disagreements inside this band are not counted
constexpr double kClosedFormTol = 1e-10;      // criteria 3, 4, 6, 8
constexpr double kZeroComponentTol = 1e-12;   // criterion 7: ||F_j|| below this counts as zero
constexpr double kReconstructionTol = 1e-10;  // criterion 7
constexpr double kHadamardTol = 1e-10;        // criterion 9
constexpr double kRoundTripTol = 1e-12;       // criterion 9
constexpr int kOperatorsPerFrame = 200;       // criteria 1, 2
constexpr double kRuntimeTargetSeconds = 60.0;

// Criterion 5 regression constant: random-pure seeds 42..141 in d = 3 that
// certify as valid but negatively represented (exit 4). Frozen at the first
// verified run.
constexpr int kSeed42NegativeCount = 100;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct NamedFrame {
    std::string name;
    ProjectiveFrame frame;
};

std::vector<NamedFrame> suite_frames() {
    std::vector<NamedFrame> out;
    out.push_back({"weyl d=3", weyl_frame(3)});
    out.push_back({"weyl d=5", weyl_frame(5)});
    out.push_back({"qubit (+,+,+)", qubit_frame({1, 1, 1})});
    out.push_back({"qubit (+,+,-)", qubit_frame({1, 1, -1})});
    out.push_back({"qubit x qubit", tensor_frame(qubit_frame(), qubit_frame())});
    out.push_back({"leonhardt d=2", leonhardt_frame(2)});
    out.push_back({"z2cubed", z2cubed_frame()});
    return out;
}

std::vector<NamedFrame> builtin_frames() {
    auto out = suite_frames();
    out.push_back({"weyl d=7", weyl_frame(7)});
    for (int sx : {1, -1})
        for (int sz : {1, -1})
            for (int sy : {1, -1}) {
                if (sx == 1 && sz == 1) continue;  // (+,+,+-) already present
                out.push_back({"qubit (" + std::string(sx > 0 ? "+" : "-") + "," + (sz > 0 ? "+" : "-") + "," +
                                   (sy > 0 ? "+" : "-") + ")",
                               qubit_frame({sx, sz, sy})});
            }
    out.push_back({"qubit x weyl d=3", tensor_frame(qubit_frame(), weyl_frame(3))});
    out.push_back({"leonhardt d=3", leonhardt_frame(3)});
    return out;
}

// Test operators cycle through four kinds: random Hermitian trace-one
// operators, random mixed states, random pure states, and pure states pushed
// slightly off the state space (perturbation 1e-6 or 1e-4).
ComplexMatrix suite_operator(int d, int i, std::uint64_t seed) {
    switch (i % 4) {
        case 0: return random_hermitian_trace1(d, seed);
        case 1: return random_density(d, seed);
        case 2: return random_pure(d, seed);
        default: {
            const double eps = (i / 4) % 2 ? 1e-6 : 1e-4;
            ComplexMatrix h = random_hermitian_trace1(d, seed ^ 0x9e3779b97f4a7c15ULL);
            h = h - ComplexMatrix::identity(static_cast<std::size_t>(d)) * cplx{1.0 / d, 0.0};  // traceless
            return random_pure(d, seed) + h * cplx{eps, 0.0};
        }
    }
}

// F_j rebuilt from the frame with floating-point characters.
std::vector<ComplexMatrix> oracle_fourier_ops(const ProjectiveFrame& frame) {
    const auto& orders = frame.group().orders();
    const std::size_t n = frame.size();
    std::vector<ComplexMatrix> out;
    for (std::size_t j = 0; j < n; ++j) {
        ComplexMatrix f(frame.dim(), frame.dim());
        for (std::size_t g = 0; g < n; ++g) {
            f += frame.op(g) * oracle::character(orders, oracle::residues(orders, j), oracle::residues(orders, g));
        }
        out.push_back(f * cplx{1.0 / static_cast<double>(n), 0.0});
    }
    return out;
}

struct EquivalenceTally {
    int total = 0;
    int disagreements = 0;
    int in_band = 0;
    std::string first;
};

// Criteria 1 and 2 share the operator suite.
Outcome equivalence(bool quantum) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    int frame_no = 0;
    for (const auto& [name, frame] : suite_frames()) {
        const auto rep = build_representation(frame);
        const auto fops = oracle_fourier_ops(frame);
        const int d = static_cast<int>(rep.dim());
        EquivalenceTally t;
        for (int i = 0; i < kOperatorsPerFrame; ++i) {
            const std::uint64_t seed = 100000ULL * static_cast<std::uint64_t>(frame_no + 1) + static_cast<std::uint64_t>(i);
            const ComplexMatrix rho = suite_operator(d, i, seed);
            const auto cert = certify_state(rep, rho);
            double oracle_value = 0.0;
            bool matrix_verdict = false;
            if (quantum) {
                oracle_value = oracle::min_eigenvalue(rho);
                matrix_verdict = cert.mq_verdict == Verdict::Positive;
            } else {
                oracle_value = 1e300;
                for (const auto& f : fops) oracle_value = std::min(oracle_value, trace_inner(rho, f).real());
                matrix_verdict = cert.mc_verdict == Verdict::Positive;
            }
            ++t.total;
            if (std::abs(oracle_value) <= kOracleBand) {
                ++t.in_band;
                continue;
            }
            if (matrix_verdict != (oracle_value >= 0.0)) {
                ++t.disagreements;
                if (t.first.empty()) t.first = "operator " + std::to_string(i) + " oracle " + num(oracle_value);
            }
        }
        ok = ok && t.disagreements == 0;
        detail += name + ": " + std::to_string(t.disagreements) + "/" + std::to_string(t.total) + " disagree (" +
                  std::to_string(t.in_band) + " in band)" + (t.first.empty() ? "" : " first " + t.first) + "; ";
        ++frame_no;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && secs < kRuntimeTargetSeconds;
    detail += "runtime " + num(secs) + " s";
    return {ok, detail};
}

Outcome criterion3() {
    double worst = 0.0;
    for (int d : {3, 5}) {
        const auto rep = build_representation(weyl_frame(d));
        const auto& G = rep.group();
        const double half = (d + 1) / 2;
        for (std::uint64_t s = 0; s < 10; ++s) {
            const ComplexMatrix rho = s % 2 ? random_density(d, s) : random_hermitian_trace1(d, s);
            const auto phi = characteristic(rep, rho);
            const auto mq = build_mq(phi, rep.cocycle());
            for (std::size_t a = 0; a < G.size(); ++a)
                for (std::size_t b = 0; b < G.size(); ++b) {
                    const auto g = G.element(a).residues;
                    const auto h = G.element(b).residues;
                    const int j = g[0], l = g[1], jp = h[0], lp = h[1];
                    const cplx phase = std::polar(1.0, -2.0 * std::numbers::pi * half * (j * lp - jp * l) / d);
                    const cplx expect = phi.at(G.make_element({jp - j, lp - l})) * phase;
                    worst = std::max(worst, std::abs(mq(a, b) - expect));
                }
        }
    }
    return {worst < kClosedFormTol, "max entry deviation " + num(worst) + " over 10 operators each for d = 3, 5"};
}

Outcome criterion4() {
    double worst = 0.0;
    int count = 0;
    for (int d : {3, 5}) {
        const auto rep = build_representation(weyl_frame(d));
        for (std::uint64_t s = 0; s < 50; ++s) {
            const auto psi = random_pure_vector(d, 4000 + s);
            const auto w = gross_wigner_pure(psi, d);
            const auto mu = represent(rep, projector(psi));
            for (int q = 0; q < d; ++q)
                for (int p = 0; p < d; ++p) {
                    const double dev = std::abs(mu.values[rep.group().index_of(gross_to_dual(d, q, p))] -
                                                w[static_cast<std::size_t>(q * d + p)]);
                    worst = std::max(worst, dev);
                }
            ++count;
        }
    }
    return {worst < kClosedFormTol, std::to_string(count) + " pure states, max deviation " + num(worst)};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QBOCHNER_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion5() {
    std::string detail;
    bool ok = true;
    for (int d : {3, 5}) {
        std::vector<std::string> specs;
        for (int k = 0; k < d; ++k) specs.push_back("basis:" + std::to_string(k));
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) specs.push_back("quadratic:" + std::to_string(a) + "," + std::to_string(b));
        // The CLI states are exactly the library's stabilizer list.
        const auto states = stabilizer_states(d);
        int exit0 = 0;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            ok = ok && max_abs_diff(parse_state_spec(specs[i], d), states[i]) == 0.0;
            exit0 += run_cli("certify --frame weyl" + std::to_string(d) + " --state " + specs[i]) == 0 ? 1 : 0;
        }
        const bool all = exit0 == static_cast<int>(specs.size());
        ok = ok && all;
        detail += "d=" + std::to_string(d) + ": " + std::to_string(exit0) + "/" + std::to_string(specs.size()) +
                  " stabilizer states exit 0; ";
    }
    int exit4 = 0;
    for (int s = 42; s < 142; ++s) exit4 += run_cli("certify --frame weyl3 --state random-pure:" + std::to_string(s)) == 4;
    ok = ok && exit4 >= 95 && exit4 == kSeed42NegativeCount;
    detail += std::to_string(exit4) + "/100 random pure states (seeds 42..141) exit 4, regression value " +
              std::to_string(kSeed42NegativeCount);
    return {ok, detail};
}

Outcome criterion6() {
    double trace = 0.0, gram = 0.0, fgram = 0.0;
    int faithful = 0;
    std::string skipped;
    for (const auto& [name, frame] : builtin_frames()) {
        if (!is_faithful(frame)) {
            skipped += (skipped.empty() ? "" : ", ") + name;
            continue;
        }
        ++faithful;
        const double d = static_cast<double>(frame.dim());
        for (std::size_t a = 0; a < frame.size(); ++a) {
            if (a != 0) trace = std::max(trace, std::abs(frame.op(a).trace()));
            for (std::size_t b = 0; b < frame.size(); ++b) {
                const cplx ip = trace_inner(dagger(frame.op(a)), frame.op(b));
                gram = std::max(gram, std::abs(ip - cplx{a == b ? d : 0.0, 0.0}));
            }
        }
        const auto f = oracle_fourier_ops(frame);
        const cplx c = trace_inner(f[0], f[0]);
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = 0; b < f.size(); ++b) {
                fgram = std::max(fgram, std::abs(trace_inner(f[a], f[b]) - (a == b ? c : cplx{0.0, 0.0})));
            }
    }
    const bool ok = trace < kClosedFormTol && gram < kClosedFormTol && fgram < kClosedFormTol;
    return {ok, std::to_string(faithful) + " faithful frames; max |Tr P_g| " + num(trace) + ", Gram - dI " +
                    num(gram) + ", Fourier Gram - cI " + num(fgram) + "; unfaithful (not applicable): " + skipped};
}

Outcome criterion7() {
    const auto rep = build_representation(z2cubed_frame());
    int zero = 0;
    std::string which;
    for (std::size_t j = 0; j < rep.fourier_ops().size(); ++j) {
        if (rep.fourier_ops()[j].frobenius_norm() < kZeroComponentTol) {
            ++zero;
            which += "(" + format_residues(rep.group().dual(j).residues) + ")";
        }
    }
    // The nonzero components should still form a basis of the 2x2 Hermitian matrices.
    ComplexMatrix gram(4, 4);
    int nonzero = 0;
    for (const auto& f : rep.fourier_ops()) {
        if (f.frobenius_norm() < kZeroComponentTol) continue;
        ++nonzero;
        const auto v = hermitian_coordinates(f);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) gram(a, b) += v[a] * v[b];
    }
    const double smallest = oracle::min_eigenvalue(gram);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto rho = random_density(2, 7000 + s);
        worst = std::max(worst, max_abs_diff(reconstruct(rep, represent(rep, rho)), rho));
    }
    const bool ok = zero == 1 && worst < kReconstructionTol;
    return {ok, std::to_string(zero) + " zero Fourier components " + which + " (expected exactly 1); " + std::to_string(nonzero) +
                    " nonzero components, smallest frame-operator eigenvalue " + num(smallest) +
                    "; reconstruction error " + num(worst) + " on 20 density matrices"};
}

Outcome criterion8() {
    double norm = 0.0, inv = 0.0, ident = 0.0;
    int frames = 0;
    for (const auto& [name, frame] : builtin_frames()) {
        const auto alpha = cocycle_table(frame);
        const auto& G = frame.group();
        for (std::size_t g = 0; g < G.size(); ++g) {
            const std::size_t gi = G.inverse_index(g);
            inv = std::max({inv, std::abs(alpha.at(g, gi) - 1.0), std::abs(alpha.at(gi, g) - 1.0)});
            for (std::size_t h = 0; h < G.size(); ++h) norm = std::max(norm, std::abs(std::abs(alpha.at(g, h)) - 1.0));
        }
        // All triples, also beyond |G| = 16.
        ident = std::max(ident, cocycle_identity_defect(alpha));
        ++frames;
    }
    const bool ok = norm < kClosedFormTol && inv < kClosedFormTol && ident < kClosedFormTol;
    return {ok, std::to_string(frames) + " frames; max ||alpha|-1| " + num(norm) + ", max |alpha(g,g^-1)-1| " +
                    num(inv) + ", cocycle identity " + num(ident)};
}

// Invariant-factor decompositions n_1 | n_2 | ... with product <= limit:
// one representative for every abelian group of that order.
void invariant_factor_groups(std::vector<int>& prefix, int product, int limit, std::vector<std::vector<int>>& out) {
    if (!prefix.empty()) out.push_back(prefix);
    const int start = prefix.empty() ? 2 : prefix.back();
    for (int n = start; product * n <= limit; n += start) {
        prefix.push_back(n);
        invariant_factor_groups(prefix, product * n, limit, out);
        prefix.pop_back();
    }
}

Outcome criterion9() {
    std::vector<std::vector<int>> groups;
    std::vector<int> prefix;
    invariant_factor_groups(prefix, 1, 64, groups);

    double hadamard = 0.0, round_trip = 0.0;
    oracle::Rng rng(9);
    for (const auto& orders : groups) {
        const FiniteAbelianGroup G(orders);
        const auto n = static_cast<double>(G.size());
        const auto t = character_table(G);
        hadamard = std::max(hadamard, max_abs_diff(t * dagger(t) * cplx{1.0 / n, 0.0}, ComplexMatrix::identity(G.size())));
        for (const auto& z : t.entries()) hadamard = std::max(hadamard, std::abs(std::abs(z) - 1.0));
        for (int k = 0; k < 100; ++k) {
            std::vector<cplx> v(G.size());
            for (auto& z : v) z = rng.complex_normal();
            const GroupFunction f(G, v);
            const auto a = fourier_forward(fourier_inverse(f));
            const auto b = fourier_inverse(fourier_forward(f));
            for (std::size_t i = 0; i < v.size(); ++i) {
                round_trip = std::max({round_trip, std::abs(a.values[i] - v[i]), std::abs(b.values[i] - v[i])});
            }
        }
    }

    const std::vector<std::vector<int>> bochner_groups = {{2, 2}, {3, 3}, {4, 2}, {6}, {2, 2, 2}, {5, 5}, {2, 6}};
    int disagreements = 0, valid = 0, invalid = 0;
    for (int k = 0; k < 1000; ++k) {
        const FiniteAbelianGroup G(bochner_groups[static_cast<std::size_t>(k) % bochner_groups.size()]);
        std::vector<double> p(G.size());
        double total = 0.0;
        for (auto& v : p) {
            v = rng.uniform() < 0.2 ? 0.0 : -std::log(1.0 - rng.uniform());  // some exact zeros
            total += v;
        }
        if (total == 0.0) {
            p[0] = 1.0;
            total = 1.0;
        }
        for (auto& v : p) v /= total;
        if (k >= 500) {
            // Move mass so one entry ends up strictly negative; the sum is kept.
            const auto i = static_cast<std::size_t>(rng.integer(0, static_cast<int>(p.size()) - 1));
            auto j = static_cast<std::size_t>(rng.integer(0, static_cast<int>(p.size()) - 2));
            if (j >= i) ++j;
            const double deficit = std::pow(10.0, -6.0 + 5.0 * rng.uniform());
            const double shift = p[i] + deficit;
            p[i] -= shift;
            p[j] += shift;
        }
        std::vector<cplx> pc(p.begin(), p.end());
        const auto r = classical_bochner_check(fourier_inverse(GroupFunction(G, pc)));
        const bool direct = *std::min_element(p.begin(), p.end()) >= 0.0;
        (direct ? valid : invalid) += 1;
        disagreements += r.accepted != direct ? 1 : 0;
    }
    const bool ok = hadamard < kHadamardTol && round_trip < kRoundTripTol && disagreements == 0 && valid == 500 &&
                    invalid == 500;
    return {ok, std::to_string(groups.size()) + " groups with |G| <= 64: Hadamard residual " + num(hadamard) +
                    ", transform round trip " + num(round_trip) + "; Bochner check " + std::to_string(disagreements) +
                    " disagreements on " + std::to_string(valid) + " valid + " + std::to_string(invalid) +
                    " invalid vectors"};
}

Outcome criterion10() {
    std::map<int, std::vector<QubitSigns>> classes;
    std::map<int, std::set<std::pair<double, double>>> invariants;
    for (int sx : {1, -1})
        for (int sz : {1, -1})
            for (int sy : {1, -1}) {
                const QubitSigns s{sx, sz, sy};
                const auto frame = qubit_frame(s);
                const int parity = frame.info().parameters.at("parity");
                classes[parity].push_back(s);
                const cplx t = qubit_triple_product(frame);
                invariants[parity].insert({std::round(t.real() * 1e9) / 1e9, std::round(t.imag() * 1e9) / 1e9});
            }
    bool ok = classes.size() == 2 && classes[1].size() == 4 && classes[-1].size() == 4;
    ok = ok && invariants[1].size() == 1 && invariants[-1].size() == 1 && *invariants[1].begin() != *invariants[-1].begin();

    // Same class <=> related by conjugation with a Pauli operator, i.e. the
    // same representation up to a unitary change of frame.
    const auto paulis = qubit_frame().operators();
    int same_ok = 0, cross_ok = 0, pairs = 0;
    for (int pa : {1, -1})
        for (int pb : {1, -1})
            for (const auto& a : classes[pa])
                for (const auto& b : classes[pb]) {
                    const auto fa = qubit_frame(a);
                    const auto fb = qubit_frame(b);
                    bool related = false;
                    for (const auto& u : paulis) {
                        double dev = 0.0;
                        for (std::size_t g = 0; g < 4; ++g) dev = std::max(dev, max_abs_diff(u * fa.op(g) * dagger(u), fb.op(g)));
                        related = related || dev < 1e-12;
                    }
                    ++pairs;
                    if (pa == pb) same_ok += related ? 1 : 0;
                    if (pa != pb) cross_ok += related ? 0 : 1;
                }
    ok = ok && same_ok == 32 && cross_ok == 32;
    const auto show = [](const std::pair<double, double>& z) { return "(" + num(z.first) + "," + num(z.second) + ")"; };
    return {ok, "classes of size " + std::to_string(classes[1].size()) + " (parity +1, Tr XZY " +
                    show(*invariants[1].begin()) + ") and " + std::to_string(classes[-1].size()) +
                    " (parity -1, Tr XZY " + show(*invariants[-1].begin()) + "); Pauli-conjugate within class " +
                    std::to_string(same_ok) + "/32, across classes never " + std::to_string(cross_ok) + "/32"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"M^Q positivity matches state positivity", [] { return equivalence(true); }},
        {"M^C positivity matches quasi-probability positivity", [] { return equivalence(false); }},
        {"Weyl M^Q closed form", criterion3},
        {"agreement with the Gross Wigner function", criterion4},
        {"stabilizer positivity and random pure negativity", criterion5},
        {"faithful frame structure", criterion6},
        {"Z_2^3 zero Fourier component and reconstruction", criterion7},
        {"cocycle phase conventions", criterion8},
        {"group Fourier analysis and classical Bochner check", criterion9},
        {"two qubit representation classes", criterion10},
    };
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], criteria.size());
        return 2;
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) continue;
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %zu [%s] %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
