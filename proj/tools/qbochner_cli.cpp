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

// qbochner: build projective frames, compute quasi-probabilities and
// certify states from the command line.
//
// Exit codes: 0 success / positively represented, 1 bad input, 2 frame
// verification failure, 3 not a quantum state, 4 negatively represented,
// 5 indeterminate.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qbochner/certificate.hpp"
#include "qbochner/error.hpp"
#include "qbochner/group.hpp"
#include "qbochner/io.hpp"
#include "qbochner/projective.hpp"
#include "qbochner/quasiprob.hpp"
#include "qbochner/report.hpp"
#include "qbochner/states.hpp"

namespace {

using namespace qbochner;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFrame = 2;

// Frame verification failures map to exit 2, everything else to exit 1.
struct FrameFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedFrame {
    ProjectiveFrame frame;
    SourceRef ref;
};

LoadedFrame load_frame(const std::string& spec, const Tolerance& tol) {
    if (std::filesystem::is_regular_file(spec)) {
        const std::string text = read_file(spec);
        try {
            return {frame_from_string(text, tol), {spec, sha256_hex(text)}};
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError) throw;
            throw FrameFailure(std::string("frame verification failed: ") + e.what());
        }
    }
    auto frame = builtin_frame(spec, tol);
    if (!frame) throw Error(ErrorKind::ParseError, "no frame file or built-in frame named '" + spec + "'");
    const std::string canonical = frame_to_string(*frame);
    return {std::move(*frame), {"builtin:" + spec, sha256_hex(canonical)}};
}

QuasiProbRepresentation represent_frame(const ProjectiveFrame& frame, const Tolerance& tol) {
    try {
        return build_representation(frame, tol);
    } catch (const Error& e) {
        throw FrameFailure(std::string("frame does not give a representation: ") + e.what());
    }
}

ComplexMatrix load_state(const std::string& spec, const std::string& file, std::size_t d) {
    if (!file.empty()) {
        try {
            return state_from_json(json::parse(read_file(file)));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("state file is not JSON: ") + e.what());
        }
    }
    return parse_state_spec(spec, static_cast<int>(d));
}

void print_report(const FrameReport& report) {
    for (const auto& c : report.checks) {
        std::printf("  [%s] %s: %s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.detail.c_str());
    }
}

std::string fmt(double v, int precision = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

// ---- group ---------------------------------------------------------------

struct GroupArgs {
    std::vector<int> orders;
    bool check_hadamard = false;
    int precision = 4;
};

int run_group(const GroupArgs& args) {
    const FiniteAbelianGroup G(args.orders);
    const std::size_t n = G.size();
    std::printf("group %s, |G| = %zu\n", G.describe().c_str(), n);
    std::printf("elements:");
    for (std::size_t i = 0; i < n; ++i) std::printf(" (%s)", format_residues(G.element(i).residues).c_str());
    std::printf("\ncharacter table (row j, column g):\n");
    const auto table = character_table(G);
    const int p = std::max(0, std::min(args.precision, 17));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t g = 0; g < n; ++g) {
            const cplx z = table(j, g);
            const double re = std::abs(z.real()) < 0.5 * std::pow(10.0, -p) ? 0.0 : z.real();
            const double im = std::abs(z.imag()) < 0.5 * std::pow(10.0, -p) ? 0.0 : z.imag();
            std::printf("%s%*.*f%+.*fi", g == 0 ? "" : "  ", p + 3, p, re, p, im);
        }
        std::printf("\n");
    }
    if (!args.check_hadamard) return kExitOk;

    double unit_defect = 0.0;
    for (const auto& z : table.entries()) unit_defect = std::max(unit_defect, std::abs(std::abs(z) - 1.0));
    const ComplexMatrix gram = table * dagger(table);
    const double unitary_defect =
        max_abs_diff(gram, ComplexMatrix::identity(n) * cplx{static_cast<double>(n), 0.0}) / static_cast<double>(n);
    const bool ok = unit_defect < 1e-10 && unitary_defect < 1e-10;
    std::printf("hadamard: unit-modulus defect %s, unitarity residual %s: %s\n", fmt(unit_defect).c_str(),
                fmt(unitary_defect).c_str(), ok ? "pass" : "FAIL");
    return ok ? kExitOk : kExitFrame;
}

// ---- frame build -----------------------------------------------------------

struct FrameArgs {
    std::string kind;
    int d = 0;
    std::string signs = "+,+,+";
    std::string a, b;
    std::string out;
    bool verify = false;
};

QubitSigns parse_signs(const std::string& text) {
    const auto parts = detail::split(text, ',');
    if (parts.size() != 3) throw Error(ErrorKind::ParseError, "--signs needs three comma-separated signs (x,z,y)");
    int s[3];
    for (int i = 0; i < 3; ++i) {
        const auto& p = parts[static_cast<std::size_t>(i)];
        if (p == "+" || p == "+1" || p == "1") {
            s[i] = 1;
        } else if (p == "-" || p == "-1") {
            s[i] = -1;
        } else {
            throw Error(ErrorKind::ParseError, "bad sign '" + p + "'");
        }
    }
    return {s[0], s[1], s[2]};
}

int run_frame_build(const FrameArgs& args, const Tolerance& tol) {
    std::optional<ProjectiveFrame> frame;
    if (args.kind == "weyl") {
        if (args.d % 2 == 0) {
            throw Error(ErrorKind::EvenDimension,
                        "weyl frames need odd d; use 'frame build leonhardt --d " + std::to_string(args.d) + "'");
        }
        frame = weyl_frame(args.d, tol);
    } else if (args.kind == "qubit") {
        frame = qubit_frame(parse_signs(args.signs), tol);
    } else if (args.kind == "leonhardt") {
        frame = leonhardt_frame(args.d, tol);
    } else if (args.kind == "z2cubed") {
        frame = z2cubed_frame(tol);
    } else if (args.kind == "tensor") {
        if (args.a.empty() || args.b.empty()) throw Error(ErrorKind::ParseError, "tensor needs --a and --b");
        frame = tensor_frame(load_frame(args.a, tol).frame, load_frame(args.b, tol).frame, tol);
    } else {
        throw Error(ErrorKind::ParseError, "unknown frame kind '" + args.kind + "'");
    }

    const std::string text = frame_to_string(*frame);
    if (!args.out.empty()) write_file(args.out, text);
    std::printf("frame %s: group %s, d = %zu, %zu operators\n", frame->info().kind.c_str(),
                frame->group().describe().c_str(), frame->dim(), frame->size());
    for (const auto& [k, v] : frame->info().parameters) std::printf("  %s = %d\n", k.c_str(), v);
    if (!args.out.empty()) std::printf("wrote %s (sha256 %s)\n", args.out.c_str(), sha256_hex(text).c_str());
    if (!args.verify) return kExitOk;

    // Verify the serialized form, so the report covers exactly what was written.
    try {
        const ProjectiveFrame reloaded = frame_from_string(text, tol);
        const FrameReport report = verify_frame(reloaded, tol);
        std::printf("verification:\n");
        print_report(report);
        return report.passed() ? kExitOk : kExitFrame;
    } catch (const Error& e) {
        std::printf("verification: FAIL %s\n", e.what());
        return kExitFrame;
    }
}

int run_frame_verify(const std::string& path, const Tolerance& tol) {
    const auto loaded = load_frame(path, tol);
    const FrameReport report = verify_frame(loaded.frame, tol);
    std::printf("frame %s (%s), group %s, d = %zu\n", loaded.ref.path.c_str(), loaded.frame.info().kind.c_str(),
                loaded.frame.group().describe().c_str(), loaded.frame.dim());
    print_report(report);
    return report.passed() ? kExitOk : kExitFrame;
}

// ---- represent ---------------------------------------------------------------

struct StateArgs {
    std::string frame;
    std::string state;
    std::string state_file;
    std::string distribution;
    std::string out;
    std::string phi_out;
    bool verbose = false;
};

int run_represent(const StateArgs& args, const Tolerance& tol) {
    const auto loaded = load_frame(args.frame, tol);
    const auto rep = represent_frame(loaded.frame, tol);
    const ComplexMatrix rho = load_state(args.state, args.state_file, rep.dim());
    const auto mu = represent(rep, rho, tol);
    const std::string csv = distribution_to_csv(rep.group(), mu.values);
    if (args.out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_file(args.out, csv);
    }
    if (!args.phi_out.empty()) write_file(args.phi_out, phi_to_csv(characteristic(rep, rho, tol)));
    if (args.verbose) {
        std::fprintf(stderr, "sum mu = %s, min mu = %s, max dropped imaginary part = %s\n", fmt(mu.sum(), 17).c_str(),
                     fmt(mu.min(), 17).c_str(), fmt(mu.max_imag_residue).c_str());
    }
    return kExitOk;
}

// ---- certify -----------------------------------------------------------------

int run_certify(const StateArgs& args, const Tolerance& tol) {
    const int inputs = (args.state.empty() ? 0 : 1) + (args.state_file.empty() ? 0 : 1) +
                       (args.distribution.empty() ? 0 : 1);
    if (inputs != 1) {
        throw Error(ErrorKind::ParseError, "give exactly one of --state, --state-file, --distribution");
    }
    const auto loaded = load_frame(args.frame, tol);
    const auto rep = represent_frame(loaded.frame, tol);

    BochnerCertificate cert = [&] {
        if (!args.distribution.empty()) {
            const auto mu = distribution_from_csv(read_file(args.distribution), rep.group());
            return certify_distribution(rep, mu, tol);
        }
        return certify_state(rep, load_state(args.state, args.state_file, rep.dim()), tol);
    }();
    const std::string input = !args.state.empty()        ? "state:" + args.state
                              : !args.state_file.empty() ? "state-file:" + args.state_file
                                                         : "distribution:" + args.distribution;
    const int code = certificate_exit_code(cert);
    if (!args.out.empty()) write_file(args.out, certificate_to_json(cert, loaded.ref, input).dump(1) + "\n");

    std::printf("frame: %s (%s)\n", loaded.ref.path.c_str(), loaded.frame.info().kind.c_str());
    std::printf("input: %s\n", input.c_str());
    std::printf("M^Q min eigenvalue %s (%s), M^C min eigenvalue %s (%s)\n", fmt(cert.mq_min_eig).c_str(),
                to_string(cert.mq_verdict), fmt(cert.mc_min_eig).c_str(), to_string(cert.mc_verdict));
    std::printf("oracle: min eig rho %s, min mu %s, agreement %s\n", fmt(cert.state_min_eig).c_str(),
                fmt(cert.min_mu).c_str(),
                cert.oracle_agreement_quantum && cert.oracle_agreement_positivity ? "yes" : "NO");
    const char* summary = code == 0   ? "valid state, positively represented"
                          : code == 3 ? "not a quantum state"
                          : code == 4 ? "valid state, negatively represented"
                                      : "indeterminate (within tolerance band)";
    std::printf("verdict: %s\n", summary);
    return code;
}

// ---- scan --------------------------------------------------------------------

struct ScanArgs {
    std::string frame;
    std::string family;
    std::size_t count = 100;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 0;
};

int run_scan(const ScanArgs& args, const Tolerance& tol) {
    const auto loaded = load_frame(args.frame, tol);
    const auto rep = represent_frame(loaded.frame, tol);
    const int d = static_cast<int>(rep.dim());

    std::vector<ComplexMatrix> states;
    std::vector<std::string> ids;
    if (args.family == "stabilizers") {
        states = stabilizer_states(d);
        for (std::size_t i = 0; i < states.size(); ++i) ids.push_back("stabilizer:" + std::to_string(i));
    } else if (args.family == "random-pure" || args.family == "random-density" || args.family == "random-hermitian") {
        for (std::size_t i = 0; i < args.count; ++i) {
            const std::uint64_t s = args.seed + i;
            ids.push_back(args.family + ":" + std::to_string(s));
            states.push_back(parse_state_spec(ids.back(), d));
        }
    } else {
        throw Error(ErrorKind::ParseError, "unknown family '" + args.family + "'");
    }

    const ScanResult result = scan(rep, states, tol, args.threads);
    std::string csv = "state_id,min_mu,min_eig_rho,mq_min_eig,mc_min_eig,mq_verdict,mc_verdict,exit_code,error\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        if (!row.certificate) {
            std::string err = row.error;
            for (auto& ch : err)
                if (ch == ',' || ch == '\n') ch = ';';
            csv += ids[i] + ",,,,,,,," + err + "\n";
            continue;
        }
        const auto& c = *row.certificate;
        csv += ids[i] + "," + format_real(c.min_mu) + "," + format_real(c.state_min_eig) + "," +
               format_real(c.mq_min_eig) + "," + format_real(c.mc_min_eig) + "," + to_string(c.mq_verdict) + "," +
               to_string(c.mc_verdict) + "," + std::to_string(certificate_exit_code(c)) + ",\n";
    }
    if (!args.out.empty()) write_file(args.out, csv);
    std::printf("%zu valid / %zu positive\n", result.valid, result.positive);
    std::printf("states %zu, boundary %zu, failed %zu\n", result.rows.size(), result.boundary, result.failed);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bochner-type certificates for quasi-probability representations"};
    app.require_subcommand(1);

    Tolerance tol;
    auto add_tol = [&](CLI::App* cmd) {
        cmd->add_option("--atol", tol.atol, "absolute tolerance")->capture_default_str();
        cmd->add_option("--rtol", tol.rtol, "relative tolerance")->capture_default_str();
    };

    GroupArgs group_args;
    auto* group_cmd = app.add_subcommand("group", "print a character table");
    group_cmd->add_option("orders", group_args.orders, "cyclic factor orders")->required();
    group_cmd->add_flag("--check-hadamard", group_args.check_hadamard, "verify the complex Hadamard property");
    group_cmd->add_option("--precision", group_args.precision, "digits after the decimal point")
        ->capture_default_str();

    auto* frame_cmd = app.add_subcommand("frame", "build or verify projective frames");
    frame_cmd->require_subcommand(1);
    FrameArgs frame_args;
    auto* build_cmd = frame_cmd->add_subcommand("build", "write a frame file");
    build_cmd->add_option("kind", frame_args.kind, "weyl | qubit | tensor | leonhardt | z2cubed")->required();
    build_cmd->add_option("--d", frame_args.d, "dimension (weyl, leonhardt)");
    build_cmd->add_option("--signs", frame_args.signs, "qubit signs x,z,y")->capture_default_str();
    build_cmd->add_option("--a", frame_args.a, "first tensor factor (file or built-in name)");
    build_cmd->add_option("--b", frame_args.b, "second tensor factor (file or built-in name)");
    build_cmd->add_option("--out", frame_args.out, "output path");
    build_cmd->add_flag("--verify", frame_args.verify, "run the full invariant suite");
    add_tol(build_cmd);
    std::string verify_path;
    auto* verify_cmd = frame_cmd->add_subcommand("verify", "check a frame file");
    verify_cmd->add_option("frame", verify_path, "frame file or built-in name")->required();
    add_tol(verify_cmd);

    StateArgs rep_args;
    auto* rep_cmd = app.add_subcommand("represent", "write the quasi-probability distribution of a state");
    rep_cmd->add_option("--frame", rep_args.frame, "frame file or built-in name")->required();
    auto* rep_state = rep_cmd->add_option("--state", rep_args.state, "state shorthand");
    auto* rep_file = rep_cmd->add_option("--state-file", rep_args.state_file, "state JSON");
    rep_state->excludes(rep_file);
    rep_cmd->add_option("--out", rep_args.out, "distribution CSV (default: stdout)");
    rep_cmd->add_option("--phi", rep_args.phi_out, "characteristic-function CSV");
    rep_cmd->add_flag("--verbose", rep_args.verbose, "diagnostics on stderr");
    add_tol(rep_cmd);

    StateArgs cert_args;
    auto* cert_cmd = app.add_subcommand("certify", "decide state validity and positivity");
    cert_cmd->add_option("--frame", cert_args.frame, "frame file or built-in name")->required();
    cert_cmd->add_option("--state", cert_args.state, "state shorthand");
    cert_cmd->add_option("--state-file", cert_args.state_file, "state JSON");
    cert_cmd->add_option("--distribution", cert_args.distribution, "distribution CSV");
    cert_cmd->add_option("--out", cert_args.out, "certificate JSON");
    add_tol(cert_cmd);

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "certify a family of states");
    scan_cmd->add_option("--frame", scan_args.frame, "frame file or built-in name")->required();
    scan_cmd->add_option("--family", scan_args.family, "stabilizers | random-pure | random-density | random-hermitian")
        ->required();
    scan_cmd->add_option("--count", scan_args.count, "number of random states")->capture_default_str();
    scan_cmd->add_option("--seed", scan_args.seed, "first seed; state i uses seed + i")->capture_default_str();
    scan_cmd->add_option("--out", scan_args.out, "per-state CSV");
    scan_cmd->add_option("--threads", scan_args.threads, "worker threads (0 = hardware)");
    add_tol(scan_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        tol.validate();
        if (*group_cmd) return run_group(group_args);
        if (*build_cmd) return run_frame_build(frame_args, tol);
        if (*verify_cmd) return run_frame_verify(verify_path, tol);
        if (*rep_cmd) return run_represent(rep_args, tol);
        if (*cert_cmd) return run_certify(cert_args, tol);
        if (*scan_cmd) return run_scan(scan_args, tol);
    } catch (const FrameFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFrame;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitInput;
}
