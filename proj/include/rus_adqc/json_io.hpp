// Copyright 2026 The rus-adqc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file json_io.hpp
 * JSON and CSV encodings used by the command-line tool. Field layouts are
 * documented in docs/schemas.md and versioned by kSchemaVersion.
 *
 * Doubles are always written with %.17g so that a run reproduces byte for
 * byte; the generic nlohmann dumper picks the shortest round-trip form
 * instead, which is also exact but is not what the schema promises.
 */

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "channel.hpp"
#include "protocol.hpp"
#include "qcore.hpp"
#include "synth1q.hpp"
#include "synth2q.hpp"

namespace rus_adqc::io {

using json = nlohmann::json;

inline constexpr const char *kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Deterministic writer

inline std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    if (v == 0.0) {
        v = 0.0; // drop the sign of -0
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void newline(std::string &out, int indent, int depth) {
    if (indent >= 0) {
        out.push_back('\n');
        out.append(static_cast<std::size_t>(indent * depth), ' ');
    }
}

inline void write(std::string &out, const json &j, int indent, int depth) {
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out.push_back('{');
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out.push_back(',');
            }
            first = false;
            newline(out, indent, depth + 1);
            out += json(it.key()).dump();
            out += indent >= 0 ? ": " : ":";
            write(out, it.value(), indent, depth + 1);
        }
        newline(out, indent, depth);
        out.push_back('}');
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // short numeric arrays ([re, im] pairs) stay on one line
        bool flat = j.size() <= 2;
        for (const auto &e : j) {
            flat = flat && e.is_primitive();
        }
        out.push_back('[');
        bool first = true;
        for (const auto &e : j) {
            if (!first) {
                out += flat && indent >= 0 ? ", " : ",";
            }
            first = false;
            if (!flat) {
                newline(out, indent, depth + 1);
            }
            write(out, e, indent, depth + 1);
        }
        if (!flat) {
            newline(out, indent, depth);
        }
        out.push_back(']');
        return;
    }
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
    }
}

} // namespace detail

/// indent < 0 gives a single line.
inline std::string dump(const json &j, int indent = 2) {
    std::string out;
    detail::write(out, j, indent, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Operators and states

inline json complex_list(const std::vector<cplx> &values) {
    json arr = json::array();
    for (const auto &v : values) {
        arr.push_back(json::array({v.real(), v.imag()}));
    }
    return arr;
}

inline json to_json(const SquareOperator &u) {
    return json{{"dim", u.dim()}, {"entries", complex_list(u.entries())}};
}

inline json to_json(const StateVector &s) {
    return json{{"n_qubits", s.n_qubits()}, {"entries", complex_list(s.amplitudes())}};
}

namespace detail {

inline std::vector<cplx> parse_complex_list(const json &j) {
    if (!j.is_array()) {
        throw std::invalid_argument("json: 'entries' must be an array of [re, im] pairs");
    }
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw std::invalid_argument("json: every entry must be a [re, im] pair of numbers");
        }
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

template <class T>
T require(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw std::invalid_argument(std::string("json: missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw std::invalid_argument(std::string("json: field '") + key + "' has the wrong type");
    }
}

template <class T>
T optional_field(const json &j, const char *key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw std::invalid_argument(std::string("json: field '") + key + "' has the wrong type");
    }
}

} // namespace detail

inline SquareOperator operator_from_json(const json &j) {
    const auto dim = detail::require<std::size_t>(j, "dim");
    if (dim == 0 || dim > 256) {
        throw std::invalid_argument("json: operator dim out of range");
    }
    return SquareOperator(dim, detail::parse_complex_list(j.at("entries")));
}

inline StateVector state_from_json(const json &j) {
    const auto n = detail::require<std::size_t>(j, "n_qubits");
    if (n == 0 || n > protocol::kMaxRegister) {
        throw std::invalid_argument("json: n_qubits out of range");
    }
    return StateVector(n, detail::parse_complex_list(j.at("entries")));
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// "H", "T", "Rz:0.3", "Zroot:8", or a path to an operator JSON file.
inline SquareOperator parse_gate_spec(const std::string &spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        return operator_from_json(read_json_file(spec));
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        return make_gate(spec);
    }
    const std::string param = spec.substr(colon + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(param, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != param.size()) {
        throw std::invalid_argument("gate parameter '" + param + "' is not a number");
    }
    return make_gate(spec.substr(0, colon), value);
}

/// "p/q" with q > 0.
inline synth2q::Rational parse_rational(const std::string &text) {
    const auto slash = text.find('/');
    std::int64_t p = 0;
    std::int64_t q = 0;
    try {
        std::size_t a = 0;
        std::size_t b = 0;
        if (slash == std::string::npos) {
            throw std::invalid_argument("");
        }
        p = std::stoll(text.substr(0, slash), &a);
        q = std::stoll(text.substr(slash + 1), &b);
        if (a != slash || b != text.size() - slash - 1) {
            throw std::invalid_argument("");
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("'" + text + "' is not of the form p/q");
    }
    if (q <= 0) {
        throw std::invalid_argument("rational '" + text + "' needs a positive denominator");
    }
    return {p, q};
}

inline std::string to_string(synth2q::Rational r) {
    return std::to_string(r.p) + "/" + std::to_string(r.q);
}

// ---------------------------------------------------------------------------
// Channel

inline std::string to_string(channel::Flavor f) {
    switch (f) {
    case channel::Flavor::Controlled: return "controlled";
    case channel::Flavor::Symmetric: return "symmetric";
    case channel::Flavor::ControlledBare: return "bare";
    }
    return "controlled";
}

inline channel::Flavor parse_flavor(const std::string &s) {
    if (s == "controlled") return channel::Flavor::Controlled;
    if (s == "symmetric") return channel::Flavor::Symmetric;
    if (s == "bare") return channel::Flavor::ControlledBare;
    throw std::invalid_argument("unknown flavor '" + s + "' (controlled|symmetric|bare)");
}

inline json to_json(const IsingDecomposition &d) {
    return json{{"beta", d.beta}, {"z1", d.z1}, {"z2", d.z2}, {"global_phase", d.global_phase}};
}

inline json to_json(const channel::KrausBranch &b) {
    json j{{"outcome", b.outcome},
           {"probability", b.probability},
           {"kraus", to_json(b.kraus)},
           {"unitary", b.unitary ? to_json(*b.unitary) : json(nullptr)}};
    if (b.classification) {
        j["beta"] = to_json(*b.classification);
    }
    return j;
}

inline json to_json(const channel::BackActionReport &r) {
    json states = json::array();
    for (const auto &s : r.induced_states) {
        states.push_back(to_json(s));
    }
    return json{{"symmetric", r.symmetric},
                {"planes_perpendicular",
                 r.planes_perpendicular ? json(*r.planes_perpendicular) : json(nullptr)},
                {"induced_states", states}};
}

// ---------------------------------------------------------------------------
// Walks

inline json optional_step(const std::optional<std::uint64_t> &s) {
    return s ? json(*s) : json(nullptr);
}

inline json to_json(const synth1q::WalkTrajectory &t) {
    json j{{"seed", t.seed},
           {"outcomes", t.outcomes},
           {"stop_step", optional_step(t.stop_step)},
           {"capped", t.capped()},
           {"final_distance", t.final_distance},
           {"accumulated", to_json(t.accumulated)},
           {"pauli", t.pauli ? json(*t.pauli) : json(nullptr)}};
    if (!t.history.empty()) {
        json h = json::array();
        for (const auto &u : t.history) {
            h.push_back(to_json(u));
        }
        j["history"] = h;
    }
    return j;
}

inline json to_json(const synth2q::BetaTrajectory &t) {
    json j{{"seed", t.seed},
           {"outcomes", t.outcomes},
           {"stop_step", optional_step(t.stop_step)},
           {"capped", t.capped()},
           {"beta", static_cast<double>(t.beta)},
           {"final_distance", t.final_distance}};
    if (!t.beta_values.empty()) {
        j["beta_values"] = t.beta_values;
    }
    return j;
}

inline json to_json(const synth2q::BetaWalkParams &p) {
    return json{{"alpha", p.alpha},
                {"phi", static_cast<double>(p.phi)},
                {"delta_plus", static_cast<double>(p.delta_plus)},
                {"delta_minus", static_cast<double>(p.delta_minus)},
                {"p_plus", p.p_plus},
                {"p_minus", p.p_minus}};
}

inline json to_json(const synth2q::Lattice &l) {
    return json{{"units", l.units}, {"delta_plus", l.delta_plus}, {"delta_minus", l.delta_minus}};
}

inline json to_json(const synth1q::TrialRecord &r) {
    return json{{"trial", r.trial},
                {"stop_step", optional_step(r.stop_step)},
                {"final_distance", r.final_distance},
                {"capped", r.capped()}};
}

inline json to_json(const synth1q::HittingStats &s) {
    return json{{"trials", s.trials},       {"failure_count", s.failure_count},
                {"mean", s.mean},           {"std_error", s.std_error},
                {"median", s.median},       {"p95", s.p95}};
}

// ---------------------------------------------------------------------------
// Protocol

inline json to_json(const protocol::DirectiveLog &d) {
    json j{{"kind", d.kind},
           {"qubits", d.qubits},
           {"seed", d.seed},
           {"outcomes", d.outcomes},
           {"stop_step", optional_step(d.stop_step)},
           {"ancillas", d.ancillas},
           {"correction_ancillas", d.correction_ancillas},
           {"final_distance", d.final_distance},
           {"accumulated", to_json(d.accumulated)},
           {"agreement_fidelity", d.agreement_fidelity},
           {"min_ancilla_purity", d.min_ancilla_purity},
           {"pauli", d.pauli ? json(*d.pauli) : json(nullptr)}};
    if (d.kind == "synth2q") {
        j["beta"] = d.beta ? json(*d.beta) : json(nullptr);
        j["residual_z"] = json::array({d.residual_z[0], d.residual_z[1]});
        j["declared_distance"] = d.declared_distance ? json(*d.declared_distance) : json(nullptr);
    }
    return j;
}

inline json to_json(const protocol::RunLog &log) {
    json dirs = json::array();
    for (const auto &d : log.directives) {
        dirs.push_back(to_json(d));
    }
    return json{{"master_seed", log.master_seed},
                {"register_size", log.register_size},
                {"directives", dirs},
                {"total_ancillas", log.total_ancillas},
                {"final_state", to_json(log.final_state)},
                {"fidelity", log.fidelity ? json(*log.fidelity) : json(nullptr)},
                {"aborted", log.aborted},
                {"max_norm_error", log.max_norm_error}};
}

/// Program file:
/// {"register_size", "flavor", "alpha", "input"?, "steps": [...]}
/// with steps {"op": "synth1q", "qubit", "target", "epsilon", "cap",
/// "pauli_tolerant"} or {"op": "synth2q", "qubits": [a, b], "target_beta",
/// "epsilon", "exact": "p/q", "cap", "correction_epsilon", "correction_cap"}.
inline protocol::Program program_from_json(const json &j, std::uint64_t seed) {
    using detail::optional_field;
    if (!j.is_object()) {
        throw std::invalid_argument("program: top level must be an object");
    }
    protocol::Program p;
    p.master_seed = seed;
    p.register_size = detail::require<std::size_t>(j, "register_size");
    const auto flavor = parse_flavor(optional_field<std::string>(j, "flavor", "controlled"));
    const double alpha = optional_field<double>(j, "alpha", kPi / 8);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("program: alpha must be positive and finite");
    }
    p.channel = channel::ChannelSpec::make(flavor, alpha, 1);
    if (j.contains("input")) {
        p.input = state_from_json(j.at("input"));
    }
    if (!j.contains("steps") || !j.at("steps").is_array()) {
        throw std::invalid_argument("program: 'steps' must be an array");
    }
    for (const auto &s : j.at("steps")) {
        const auto op = detail::require<std::string>(s, "op");
        if (op == "synth1q") {
            protocol::Synth1qStep step;
            step.qubit = detail::require<std::size_t>(s, "qubit");
            const json &t = s.contains("target") ? s.at("target") : json(nullptr);
            if (t.is_string()) {
                step.target = parse_gate_spec(t.get<std::string>());
            } else if (t.is_object()) {
                step.target = operator_from_json(t);
            } else {
                throw std::invalid_argument("program: synth1q needs a target name or matrix");
            }
            step.epsilon = optional_field<double>(s, "epsilon", step.epsilon);
            step.cap = optional_field<std::uint64_t>(s, "cap", step.cap);
            step.pauli_tolerant = optional_field<bool>(s, "pauli_tolerant", false);
            p.steps.emplace_back(step);
        } else if (op == "synth2q") {
            protocol::Synth2qStep step;
            const auto q = detail::require<std::vector<std::size_t>>(s, "qubits");
            if (q.size() != 2) {
                throw std::invalid_argument("program: synth2q needs exactly two qubits");
            }
            step.qubit_a = q[0];
            step.qubit_b = q[1];
            step.target_beta = optional_field<double>(s, "target_beta", step.target_beta);
            step.epsilon_beta = optional_field<double>(s, "epsilon", step.epsilon_beta);
            step.cap = optional_field<std::uint64_t>(s, "cap", step.cap);
            step.correction_epsilon =
                optional_field<double>(s, "correction_epsilon", step.correction_epsilon);
            step.correction_cap =
                optional_field<std::uint64_t>(s, "correction_cap", step.correction_cap);
            if (s.contains("exact")) {
                step.exact = parse_rational(detail::require<std::string>(s, "exact"));
            }
            p.steps.emplace_back(step);
        } else {
            throw std::invalid_argument("program: unknown op '" + op + "'");
        }
    }
    p.validate();
    return p;
}

/// {"gates": [{"name": ..., "param"?: ..., "qubits": [...]} or
/// {"matrix": {...}, "qubits": [...]}], "compare": "global_phase"|"local_z"}.
inline protocol::IdealCircuit circuit_from_json(const json &j) {
    if (!j.is_object() || !j.contains("gates") || !j.at("gates").is_array()) {
        throw std::invalid_argument("circuit: 'gates' must be an array");
    }
    protocol::IdealCircuit c;
    for (const auto &g : j.at("gates")) {
        protocol::IdealGate gate;
        gate.qubits = detail::require<std::vector<std::size_t>>(g, "qubits");
        if (g.contains("matrix")) {
            gate.unitary = operator_from_json(g.at("matrix"));
        } else {
            const auto name = detail::require<std::string>(g, "name");
            gate.unitary = g.contains("param")
                               ? make_gate(name, detail::require<double>(g, "param"))
                               : make_gate(name);
        }
        const std::size_t want = gate.qubits.size() == 1 ? 2 : gate.qubits.size() == 2 ? 4 : 0;
        if (want == 0 || gate.unitary.dim() != want) {
            throw std::invalid_argument("circuit: gate dimension does not match its qubits");
        }
        if (unitarity_error(gate.unitary) > 1e-10) {
            throw std::invalid_argument("circuit: gate is not unitary");
        }
        c.gates.push_back(std::move(gate));
    }
    const auto cmp = detail::optional_field<std::string>(j, "compare", "global_phase");
    if (cmp == "local_z") {
        c.up_to_local_z = true;
    } else if (cmp != "global_phase") {
        throw std::invalid_argument("circuit: compare must be global_phase or local_z");
    }
    return c;
}

// ---------------------------------------------------------------------------
// CSV

/// '#' header lines (version, config, summary), then one row per trial.
inline void write_csv(std::ostream &out, const json &config, const synth1q::HittingStats &stats,
                      const std::vector<synth1q::TrialRecord> &records) {
    out << "# rus-adqc " << kVersion << " schema " << kSchemaVersion << '\n';
    out << "# config: " << dump(config, -1) << '\n';
    out << "# summary: trials=" << stats.trials << " failure_count=" << stats.failure_count
        << " mean=" << format_double(stats.mean) << " std_error=" << format_double(stats.std_error)
        << " median=" << format_double(stats.median) << " p95=" << format_double(stats.p95)
        << '\n';
    out << "trial,stop_step,final_distance,capped\n";
    for (const auto &r : records) {
        out << r.trial << ',';
        if (r.stop_step) {
            out << *r.stop_step;
        }
        out << ',' << format_double(r.final_distance) << ',' << (r.capped() ? 1 : 0) << '\n';
    }
}

} // namespace rus_adqc::io
