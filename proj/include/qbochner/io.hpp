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

// File formats.
//
// Frame file (JSON):
//   {"schema_version": 1, "group": {"orders": [3, 3]}, "dim": 3,
//    "elements": [{"g": [0, 0], "matrix": [[[re, im], ...], ...]}, ...],
//    "metadata": {"kind": "weyl", "parameters": {"d": 3}}}
// State file (JSON):
//   {"schema_version": 1, "dim": 2, "matrix": [[[re, im], ...], ...]}
// Distribution CSV: header "index_tuple,mu", one row per dual index in
// lexicographic order, tuple residues joined by ':', values as %.17g.
// Characteristic-function CSV: "index_tuple,re,im".
// Certificate file (JSON): see certificate_to_json.

#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#include "qbochner/certificate.hpp"
#include "qbochner/error.hpp"
#include "qbochner/group.hpp"
#include "qbochner/numerics.hpp"
#include "qbochner/projective.hpp"
#include "qbochner/quasiprob.hpp"
#include "qbochner/report.hpp"
#include "qbochner/states.hpp"

namespace qbochner {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::InternalInconsistency, "SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << content;
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const json& j, std::size_t expected_dim) {
    if (!j.is_array() || j.size() != expected_dim) {
        throw Error(ErrorKind::ParseError, "matrix must have " + std::to_string(expected_dim) + " rows");
    }
    ComplexMatrix m(expected_dim, expected_dim);
    for (std::size_t i = 0; i < expected_dim; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != expected_dim) {
            throw Error(ErrorKind::ParseError, "matrix row " + std::to_string(i) + " has wrong length");
        }
        for (std::size_t k = 0; k < expected_dim; ++k) {
            const auto& z = row[k];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw Error(ErrorKind::ParseError, "matrix entries must be [re, im] number pairs");
            }
            m(i, k) = cplx{z[0].get<double>(), z[1].get<double>()};
        }
    }
    return m;
}

inline json frame_to_json(const ProjectiveFrame& frame) {
    json elements = json::array();
    for (std::size_t i = 0; i < frame.size(); ++i) {
        elements.push_back({{"g", frame.group().element(i).residues}, {"matrix", matrix_to_json(frame.op(i))}});
    }
    json params = json::object();
    for (const auto& [k, v] : frame.info().parameters) params[k] = v;
    return {{"schema_version", kSchemaVersion},
            {"group", {{"orders", frame.group().orders()}}},
            {"dim", frame.dim()},
            {"elements", std::move(elements)},
            {"metadata", {{"kind", frame.info().kind}, {"parameters", std::move(params)}}}};
}

inline std::string frame_to_string(const ProjectiveFrame& frame) { return frame_to_json(frame).dump(1) + "\n"; }

/// Parses and fully verifies a frame file. Verification failures throw
/// InvalidFrame naming the first violated invariant; malformed input throws
/// ParseError.
inline ProjectiveFrame frame_from_json(const json& j, const Tolerance& tol = {}) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion) {
            throw Error(ErrorKind::ParseError, "unsupported frame schema_version");
        }
        FiniteAbelianGroup group(j.at("group").at("orders").get<std::vector<int>>());
        const auto dim = j.at("dim").get<std::size_t>();
        if (dim < 1) throw Error(ErrorKind::ParseError, "dim must be >= 1");
        const auto& elements = j.at("elements");
        if (!elements.is_array() || elements.size() != group.size()) {
            throw Error(ErrorKind::ParseError, "need one element entry per group element");
        }
        std::vector<std::optional<ComplexMatrix>> slots(group.size());
        for (const auto& e : elements) {
            const auto residues = e.at("g").get<std::vector<int>>();
            std::size_t idx = 0;
            try {
                idx = group.index_of(residues);
            } catch (const Error&) {
                throw Error(ErrorKind::ParseError, "element (" + format_residues(residues) + ") does not fit " +
                                                       group.describe());
            }
            if (slots[idx]) throw Error(ErrorKind::ParseError, "duplicate element " + format_residues(residues));
            slots[idx] = matrix_from_json(e.at("matrix"), dim);
        }
        std::vector<ComplexMatrix> ops;
        ops.reserve(slots.size());
        for (auto& s : slots) ops.push_back(std::move(*s));

        FrameInfo info;
        if (j.contains("metadata")) {
            const auto& meta = j["metadata"];
            info.kind = meta.value("kind", std::string("custom"));
            if (meta.contains("parameters")) {
                for (const auto& [k, v] : meta["parameters"].items()) info.parameters[k] = v.get<int>();
            }
        }
        ProjectiveFrame frame = make_frame(std::move(group), std::move(ops), std::move(info), tol);
        const FrameReport report = verify_frame(frame, tol);
        if (const auto* failure = report.first_failure()) {
            throw Error(ErrorKind::InvalidFrame, failure->name + ": " + failure->detail);
        }
        return frame;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("frame file: ") + e.what());
    }
}

inline ProjectiveFrame frame_from_string(const std::string& text, const Tolerance& tol = {}) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("frame file is not JSON: ") + e.what());
    }
    return frame_from_json(j, tol);
}

/// Built-in frame shorthands: weyl<d>, qubit (= qubit+++), qubit<sx><sz><sy>
/// with each sign '+' or '-', leonhardt<d>, z2cubed.
inline std::optional<ProjectiveFrame> builtin_frame(std::string_view name, const Tolerance& tol = {}) {
    auto number_after = [&](std::string_view prefix) -> std::optional<int> {
        if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) return std::nullopt;
        int v = 0;
        for (char c : name.substr(prefix.size())) {
            if (c < '0' || c > '9') return std::nullopt;
            v = v * 10 + (c - '0');
            if (v > 1000) return std::nullopt;
        }
        return v;
    };
    if (name == "z2cubed") return z2cubed_frame(tol);
    if (name == "qubit") return qubit_frame({}, tol);
    if (name.size() == 8 && name.substr(0, 5) == "qubit") {
        int s[3];
        for (int i = 0; i < 3; ++i) {
            const char c = name[5 + static_cast<std::size_t>(i)];
            if (c != '+' && c != '-') return std::nullopt;
            s[i] = c == '+' ? 1 : -1;
        }
        return qubit_frame({s[0], s[1], s[2]}, tol);
    }
    if (auto d = number_after("weyl")) return weyl_frame(*d, tol);
    if (auto d = number_after("leonhardt")) return leonhardt_frame(*d, tol);
    return std::nullopt;
}

inline json state_to_json(const ComplexMatrix& rho) {
    return {{"schema_version", kSchemaVersion}, {"dim", rho.rows()}, {"matrix", matrix_to_json(rho)}};
}

inline ComplexMatrix state_from_json(const json& j) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        if (dim < 1) throw Error(ErrorKind::ParseError, "dim must be >= 1");
        return matrix_from_json(j.at("matrix"), dim);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("state file: ") + e.what());
    }
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline long long parse_integer(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad integer '" + s + "' in " + what);
    }
}

inline double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad number '" + s + "' in " + what);
    }
}

}  // namespace detail

/// State shorthands for dimension d:
///   basis:K  conjugate:M  quadratic:A,B  mixed  random-pure:SEED
///   random-density:SEED  random-hermitian:SEED  diag:x1,x2,...
inline ComplexMatrix parse_state_spec(std::string_view spec, int d) {
    const auto colon = spec.find(':');
    const std::string kind(spec.substr(0, colon));
    const std::string arg = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
    const std::string what = "state spec '" + std::string(spec) + "'";
    auto need_arg = [&] {
        if (arg.empty()) throw Error(ErrorKind::ParseError, what + " needs an argument");
    };
    if (kind == "mixed") return maximally_mixed(d);
    if (kind == "basis") {
        need_arg();
        return basis_state(d, static_cast<int>(detail::parse_integer(arg, what)));
    }
    if (kind == "conjugate") {
        need_arg();
        return conjugate_basis_state(d, static_cast<int>(detail::parse_integer(arg, what)));
    }
    if (kind == "quadratic") {
        need_arg();
        const auto parts = detail::split(arg, ',');
        if (parts.size() != 2) throw Error(ErrorKind::ParseError, what + " needs A,B");
        return projector(quadratic_vector(d, static_cast<int>(detail::parse_integer(parts[0], what)),
                                          static_cast<int>(detail::parse_integer(parts[1], what))));
    }
    if (kind == "random-pure" || kind == "random-density" || kind == "random-hermitian") {
        need_arg();
        const auto seed = static_cast<std::uint64_t>(detail::parse_integer(arg, what));
        if (kind == "random-pure") return random_pure(d, seed);
        if (kind == "random-density") return random_density(d, seed);
        return random_hermitian_trace1(d, seed);
    }
    if (kind == "diag") {
        need_arg();
        const auto parts = detail::split(arg, ',');
        if (parts.size() != static_cast<std::size_t>(d)) {
            throw Error(ErrorKind::DimensionMismatch, what + " has " + std::to_string(parts.size()) +
                                                          " entries, frame dimension is " + std::to_string(d));
        }
        std::vector<cplx> diag;
        for (const auto& p : parts) diag.emplace_back(detail::parse_real(p, what), 0.0);
        return ComplexMatrix::diagonal(diag);
    }
    throw Error(ErrorKind::ParseError, "unknown " + what);
}

inline std::string index_tuple(const FiniteAbelianGroup& group, std::size_t index) {
    return format_residues(group.element(index).residues, ':');
}

inline std::string distribution_to_csv(const FiniteAbelianGroup& group, std::span<const double> mu) {
    std::string out = "index_tuple,mu\n";
    for (std::size_t j = 0; j < mu.size(); ++j) out += index_tuple(group, j) + "," + format_real(mu[j]) + "\n";
    return out;
}

inline std::string phi_to_csv(const CharacteristicFunction& phi) {
    std::string out = "index_tuple,re,im\n";
    for (std::size_t g = 0; g < phi.values.size(); ++g) {
        out += index_tuple(phi.group, g) + "," + format_real(phi.values[g].real()) + "," +
               format_real(phi.values[g].imag()) + "\n";
    }
    return out;
}

/// Reads a distribution CSV; rows may come in any order but must cover every
/// dual index exactly once.
inline std::vector<double> distribution_from_csv(const std::string& text, const FiniteAbelianGroup& group) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("index_tuple,mu", 0) != 0) {
        throw Error(ErrorKind::ParseError, "distribution CSV must start with 'index_tuple,mu'");
    }
    std::vector<std::optional<double>> values(group.size());
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != 2) throw Error(ErrorKind::ParseError, "bad distribution row '" + line + "'");
        std::vector<int> residues;
        for (const auto& r : detail::split(cells[0], ':')) {
            residues.push_back(static_cast<int>(detail::parse_integer(r, "index tuple")));
        }
        std::size_t idx = 0;
        try {
            idx = group.index_of(residues);
        } catch (const Error&) {
            throw Error(ErrorKind::ShapeMismatch, "index tuple '" + cells[0] + "' does not fit " + group.describe());
        }
        if (values[idx]) throw Error(ErrorKind::ShapeMismatch, "duplicate index tuple " + cells[0]);
        values[idx] = detail::parse_real(cells[1], "distribution value");
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!values[j]) throw Error(ErrorKind::ShapeMismatch, "missing index tuple " + index_tuple(group, j));
        out.push_back(*values[j]);
    }
    return out;
}

struct SourceRef {
    std::string path;    // file path or "builtin:<name>" / spec string
    std::string sha256;  // of the frame file content (or canonical serialization)
};

inline json certificate_to_json(const BochnerCertificate& c, const SourceRef& frame, const std::string& input) {
    json phi = json::array();
    for (const auto& v : c.phi.values) phi.push_back({v.real(), v.imag()});
    json out = {
        {"schema_version", kSchemaVersion},
        {"frame", {{"path", frame.path}, {"sha256", frame.sha256}}},
        {"input", input},
        {"group", {{"orders", c.phi.group.orders()}}},
        {"phi", std::move(phi)},
        {"mu", c.mu},
        {"mc_min_eig", c.mc_min_eig},
        {"mq_min_eig", c.mq_min_eig},
        {"mc_verdict", to_string(c.mc_verdict)},
        {"mq_verdict", to_string(c.mq_verdict)},
        {"is_quantum_state", c.is_quantum_state},
        {"is_positively_representable", c.is_positively_representable},
        {"boundary", c.boundary},
        {"tol", {{"atol", c.tol.atol}, {"rtol", c.tol.rtol}}},
        {"oracle", {{"state_min_eig", c.state_min_eig}, {"min_mu", c.min_mu}}},
        {"oracle_agreement", {{"quantum_state", c.oracle_agreement_quantum},
                              {"positivity", c.oracle_agreement_positivity}}},
        {"exit_code", certificate_exit_code(c)},
    };
    if (c.input_nonnegative) out["input_nonnegative"] = *c.input_nonnegative;
    if (c.reproduces_input) out["reproduces_input"] = *c.reproduces_input;
    return out;
}

/// Characteristic function stored in a certificate file.
inline CharacteristicFunction phi_from_certificate(const json& cert) {
    try {
        FiniteAbelianGroup group(cert.at("group").at("orders").get<std::vector<int>>());
        std::vector<cplx> values;
        for (const auto& z : cert.at("phi")) values.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        return CharacteristicFunction(std::move(group), std::move(values));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("certificate: ") + e.what());
    }
}

}  // namespace qbochner
