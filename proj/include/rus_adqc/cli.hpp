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
 * @file cli.hpp
 * Command-line front end. dispatch() takes the arguments after the program
 * name and writes the result to `out` (or --output) and diagnostics to
 * `err`.
 *
 * Exit codes: 0 success, 2 invalid input (including unknown flags), 3 a
 * walk reached its cap (the partial result is still written), 1 internal
 * error.
 */

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "channel.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "protocol.hpp"
#include "random.hpp"
#include "synth1q.hpp"
#include "synth2q.hpp"

namespace rus_adqc::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInvalid = 2,
    kCapReached = 3,
};

/// Flags shared by all subcommands; each subcommand binds the ones it uses.
struct RunConfig {
    std::string subcommand;
    double alpha = kPi / 8;
    double epsilon = 0.01;
    double cap = 1e7;
    double trials = 1;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string output;

    std::string flavor = "controlled";
    std::size_t qubits = 1;
    std::string basis = "pm";
    std::string target;
    bool pauli_tolerant = false;
    double target_beta = kPi / 4;
    std::string exact;
    std::string program;
    std::string ideal;
};

namespace detail {

using io::json;

struct Output {
    std::string text;
    int code = kOk;
};

inline void require_positive(double v, const char *name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::invalid_argument(std::string("--") + name + " must be positive and finite");
    }
}

inline std::uint64_t require_count(double v, const char *name) {
    require_positive(v, name);
    if (std::floor(v) != v || v > 9.007199254740992e15) {
        throw std::invalid_argument(std::string("--") + name + " must be a whole number");
    }
    return static_cast<std::uint64_t>(v);
}

inline json header(const RunConfig &c, json config) {
    json j;
    j["version"] = io::kVersion;
    j["schema_version"] = io::kSchemaVersion;
    j["command"] = c.subcommand;
    j["config"] = std::move(config);
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    return j;
}

inline bool any_capped(const std::vector<synth1q::TrialRecord> &records) {
    for (const auto &r : records) {
        if (r.capped()) {
            return true;
        }
    }
    return false;
}

/// Trial table in the requested format.
inline Output trial_output(const RunConfig &c, const json &config,
                           const std::vector<synth1q::TrialRecord> &records) {
    const synth1q::HittingStats stats = synth1q::summarize(records);
    Output o;
    o.code = any_capped(records) ? kCapReached : kOk;
    if (c.format == "csv") {
        std::ostringstream s;
        io::write_csv(s, header(c, config), stats, records);
        o.text = s.str();
    } else {
        json j = header(c, config);
        j["summary"] = io::to_json(stats);
        json rows = json::array();
        for (const auto &r : records) {
            rows.push_back(io::to_json(r));
        }
        j["trials"] = rows;
        o.text = io::dump(j) + "\n";
    }
    return o;
}

inline void check_format(const RunConfig &c) {
    if (c.format != "json" && c.format != "csv") {
        throw std::invalid_argument("--format must be json or csv");
    }
}

inline Output run_kraus(const RunConfig &c) {
    require_positive(c.alpha, "alpha");
    if (c.qubits != 1 && c.qubits != 2) {
        throw std::invalid_argument("--qubits must be 1 or 2");
    }
    channel::ChannelSpec spec = channel::ChannelSpec::make(io::parse_flavor(c.flavor), c.alpha,
                                                           c.qubits);
    if (c.basis == "computational") {
        spec = spec.with_computational_basis();
    } else if (c.basis != "pm") {
        throw std::invalid_argument("--basis must be pm or computational");
    }
    const json config{{"alpha", c.alpha},
                      {"qubits", c.qubits},
                      {"flavor", c.flavor},
                      {"basis", c.basis}};
    json j = header(c, config);
    j["backaction"] = io::to_json(channel::backaction(spec));
    json branches = json::array();
    for (const auto &b : channel::stinespring_kraus(spec)) {
        branches.push_back(io::to_json(b));
    }
    j["branches"] = branches;
    return {io::dump(j) + "\n", kOk};
}

inline synth1q::Generators generators_for(const RunConfig &c) {
    require_positive(c.alpha, "alpha");
    return synth1q::from_channel(
        channel::ChannelSpec::make(io::parse_flavor(c.flavor), c.alpha, 1));
}

inline json synth1q_config(const RunConfig &c, const synth1q::SynthTarget &t,
                           std::uint64_t trials) {
    return json{{"target", c.target},
                {"target_matrix", io::to_json(t.target)},
                {"epsilon", t.epsilon},
                {"cap", t.cap},
                {"pauli_tolerant", t.pauli_tolerant},
                {"trials", trials},
                {"alpha", c.alpha},
                {"flavor", c.flavor},
                {"format", c.format}};
}

inline synth1q::SynthTarget synth1q_target(const RunConfig &c) {
    require_positive(c.epsilon, "epsilon");
    synth1q::SynthTarget t;
    t.target = io::parse_gate_spec(c.target);
    t.epsilon = c.epsilon;
    t.cap = require_count(c.cap, "cap");
    t.pauli_tolerant = c.pauli_tolerant;
    t.validate();
    return t;
}

inline Output run_synth1q(const RunConfig &c) {
    check_format(c);
    const synth1q::SynthTarget t = synth1q_target(c);
    const std::uint64_t trials = require_count(c.trials, "trials");
    const synth1q::Generators gens = generators_for(c);
    const json config = synth1q_config(c, t, trials);
    if (trials == 1 && c.format == "json") {
        const synth1q::WalkTrajectory traj = synth1q::run_until(t, *c.seed, gens);
        json j = header(c, config);
        j["trajectory"] = io::to_json(traj);
        return {io::dump(j) + "\n", traj.capped() ? kCapReached : kOk};
    }
    return trial_output(c, config, synth1q::run_trials(t, trials, *c.seed, gens));
}

inline Output run_hitting_stats(const RunConfig &c) {
    check_format(c);
    const synth1q::SynthTarget t = synth1q_target(c);
    const std::uint64_t trials = require_count(c.trials, "trials");
    const synth1q::Generators gens = generators_for(c);
    return trial_output(c, synth1q_config(c, t, trials),
                        synth1q::run_trials(t, trials, *c.seed, gens));
}

inline Output run_synth2q(const RunConfig &c) {
    check_format(c);
    require_positive(c.alpha, "alpha");
    require_positive(c.epsilon, "epsilon");
    if (!std::isfinite(c.target_beta)) {
        throw std::invalid_argument("--target-beta must be finite");
    }
    const std::uint64_t cap = require_count(c.cap, "cap");
    const std::uint64_t trials = require_count(c.trials, "trials");
    const channel::Flavor flavor = io::parse_flavor(c.flavor);
    if (flavor == channel::Flavor::ControlledBare) {
        throw std::invalid_argument("--flavor bare has no unitary two-qubit branches");
    }
    const synth2q::BetaWalkParams params = synth2q::increments(c.alpha, flavor);

    json config{{"alpha", c.alpha},
                {"flavor", c.flavor},
                {"target_beta", c.target_beta},
                {"epsilon", c.epsilon},
                {"cap", cap},
                {"trials", trials},
                {"format", c.format},
                {"exact", c.exact.empty() ? json(nullptr) : json(c.exact)}};

    std::optional<synth2q::Lattice> lattice;
    std::int64_t target_units = 0;
    if (!c.exact.empty()) {
        lattice = synth2q::exact_lattice(params, io::parse_rational(c.exact));
        const auto idx = synth2q::lattice_index(*lattice, c.target_beta);
        if (!idx) {
            throw std::invalid_argument("--target-beta is not on the exact lattice");
        }
        target_units = *idx;
    }
    auto walk = [&](std::uint64_t seed) {
        return lattice ? synth2q::run_until_beta_exact(target_units, *lattice, params, cap, seed)
                       : synth2q::run_until_beta(c.target_beta, c.epsilon, params, cap, seed);
    };

    if (trials == 1 && c.format == "json") {
        const synth2q::BetaTrajectory traj = walk(*c.seed);
        json j = header(c, config);
        j["params"] = io::to_json(params);
        if (lattice) {
            j["lattice"] = io::to_json(*lattice);
        }
        j["trajectory"] = io::to_json(traj);
        return {io::dump(j) + "\n", traj.capped() ? kCapReached : kOk};
    }
    const auto records = rus_adqc::run_trials(trials, [&](std::size_t i) {
        const synth2q::BetaTrajectory traj = walk(trial_seed(*c.seed, i));
        return synth1q::TrialRecord{i, traj.stop_step, traj.final_distance};
    });
    return trial_output(c, config, records);
}

inline Output run_simulate(const RunConfig &c) {
    const json program_json = io::read_json_file(c.program);
    const protocol::Program program = io::program_from_json(program_json, *c.seed);
    std::optional<protocol::IdealCircuit> ideal;
    if (!c.ideal.empty()) {
        ideal = io::circuit_from_json(io::read_json_file(c.ideal));
    }
    protocol::RunLog log = protocol::execute(program);
    if (ideal && !log.aborted) {
        log.fidelity = protocol::compare_to_ideal(log, *ideal, program.input);
    }
    json config{{"program_file", c.program},
                {"program", program_json},
                {"ideal_file", c.ideal.empty() ? json(nullptr) : json(c.ideal)}};
    json j = header(c, config);
    j["run"] = io::to_json(log);
    return {io::dump(j) + "\n", log.aborted ? kCapReached : kOk};
}

inline Output run_version() {
    const json j{{"name", "rus-adqc"},
                 {"version", io::kVersion},
                 {"schema_version", io::kSchemaVersion}};
    return {io::dump(j) + "\n", kOk};
}

} // namespace detail

inline int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Ancilla-driven repeat-until-success gate synthesis", "rus-adqc"};
    app.require_subcommand(1, 1);
    app.failure_message(CLI::FailureMessage::help);
    RunConfig c;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App *s, bool with_seed) {
        s->add_option("--output", c.output, "Write the result to this file instead of stdout");
        if (with_seed) {
            s->add_option("--seed", seed, "Master seed (required)")->required();
        }
    };
    auto add_walk = [&](CLI::App *s) {
        s->add_option("--alpha", c.alpha, "Interaction strength in radians")
            ->capture_default_str();
        s->add_option("--flavor", c.flavor, "controlled|symmetric|bare")->capture_default_str();
        s->add_option("--epsilon", c.epsilon, "Stopping tolerance")->capture_default_str();
        s->add_option("--cap", c.cap, "Maximum ancilla interactions per walk")
            ->capture_default_str();
        s->add_option("--trials", c.trials, "Independent trials (seed xor index)")
            ->capture_default_str();
    };

    CLI::App *kraus = app.add_subcommand("kraus", "Kraus branches and back-action of the channel");
    kraus->add_option("--alpha", c.alpha, "Interaction strength in radians")->capture_default_str();
    kraus->add_option("--qubits", c.qubits, "Register qubits touched (1 or 2)")
        ->capture_default_str();
    kraus->add_option("--flavor", c.flavor, "controlled|symmetric|bare")->capture_default_str();
    kraus->add_option("--basis", c.basis, "pm (|+i>, |-i>) or computational")
        ->capture_default_str();
    add_common(kraus, false);

    CLI::App *s1 = app.add_subcommand("synth1q", "Single-qubit repeat-until-success walk");
    s1->add_option("--target", c.target, "Gate name (H, T, Rz:0.3, ...) or operator JSON file")
        ->required();
    add_walk(s1);
    s1->add_flag("--pauli-tolerant", c.pauli_tolerant, "Accept the target up to a Pauli");
    s1->add_option("--format", c.format, "json|csv")->capture_default_str();
    add_common(s1, true);

    CLI::App *s2 = app.add_subcommand("synth2q", "Random walk on the Ising angle");
    add_walk(s2);
    s2->add_option("--target-beta", c.target_beta, "Target Ising angle (mod pi)")
        ->capture_default_str();
    s2->add_option("--exact", c.exact, "Assert phi = (p/q) pi and walk on the exact lattice");
    s2->add_option("--format", c.format, "json|csv")->capture_default_str();
    add_common(s2, true);

    CLI::App *sim = app.add_subcommand("simulate", "Run a program on a statevector register");
    sim->add_option("--program", c.program, "Program JSON file")->required();
    sim->add_option("--ideal", c.ideal, "Ideal circuit JSON file to compare against");
    add_common(sim, true);

    CLI::App *hs = app.add_subcommand("hitting-stats", "Hitting-time statistics (CSV by default)");
    hs->add_option("--target", c.target, "Gate name or operator JSON file")->required();
    add_walk(hs);
    hs->add_flag("--pauli-tolerant", c.pauli_tolerant, "Accept the target up to a Pauli");
    hs->add_option("--format", c.format, "json|csv (default csv)");
    add_common(hs, true);

    CLI::App *ver = app.add_subcommand("version", "Print the version");
    add_common(ver, false);

    bool format_given = false;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        format_given = hs->count("--format") > 0;
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    CLI::App *chosen = app.get_subcommands().front();
    c.subcommand = chosen->get_name();
    if (chosen->get_option_no_throw("--seed") != nullptr) {
        c.seed = seed;
    }
    if (chosen == hs && !format_given) {
        c.format = "csv";
    }

    detail::Output result;
    try {
        if (chosen == kraus) {
            result = detail::run_kraus(c);
        } else if (chosen == s1) {
            result = detail::run_synth1q(c);
        } else if (chosen == s2) {
            result = detail::run_synth2q(c);
        } else if (chosen == sim) {
            result = detail::run_simulate(c);
        } else if (chosen == hs) {
            result = detail::run_hitting_stats(c);
        } else {
            result = detail::run_version();
        }
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }

    if (c.output.empty()) {
        out << result.text;
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!(f << result.text)) {
            err << "error: cannot write '" << c.output << "'\n";
            return kInvalid;
        }
    }
    if (result.code == kCapReached) {
        err << "cap reached; partial output written\n";
    }
    return result.code;
}

} // namespace rus_adqc::cli
