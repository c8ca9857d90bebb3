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
 * @file protocol.hpp
 * Statevector simulation of whole programs. Every ancilla interaction is
 * carried out on the joint (ancilla, register) state: prepare the ancilla,
 * apply E once per touched register qubit, measure the ancilla with the Born
 * rule and keep the post-measurement register state. A fresh ancilla is
 * used for every step.
 *
 * Two-qubit directives walk on the Ising angle. After every two-qubit step
 * each register qubit gets a single-qubit correction walk that removes the
 * branch's H (x) H and any Pauli Z it carries. What remains is
 * e^{i beta Z(x)Z} times a declared local z frame.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "qcore.hpp"
#include "random.hpp"
#include "synth1q.hpp"
#include "synth2q.hpp"

namespace rus_adqc::protocol {

inline constexpr std::size_t kMaxRegister = 8;

struct Synth1qStep {
    std::size_t qubit = 0;
    SquareOperator target = SquareOperator::identity(2);
    double epsilon = 0.01;
    std::uint64_t cap = 10'000'000;
    bool pauli_tolerant = false;
};

struct Synth2qStep {
    std::size_t qubit_a = 0;
    std::size_t qubit_b = 1;
    double target_beta = kPi / 4;
    double epsilon_beta = 0.01;
    std::uint64_t cap = 100'000;
    /// phi / pi, asserted rational: walk on the exact lattice instead.
    std::optional<synth2q::Rational> exact;
    double correction_epsilon = 1e-9;
    std::uint64_t correction_cap = 1'000'000;
};

using Directive = std::variant<Synth1qStep, Synth2qStep>;

struct Program {
    std::size_t register_size = 1;
    std::vector<Directive> steps;
    std::uint64_t master_seed = 0;
    /// Single-register-qubit form; the two-qubit channel reuses its
    /// interaction, preparation and basis.
    channel::ChannelSpec channel = channel::ChannelSpec::standard();
    std::optional<StateVector> input; ///< defaults to |0...0>

    void validate() const {
        if (register_size == 0 || register_size > kMaxRegister) {
            throw std::invalid_argument("Program: register_size must lie in [1, 8]");
        }
        channel.validate();
        if (channel.num_register_qubits != 1) {
            throw std::invalid_argument("Program: channel must be given in single-qubit form");
        }
        if (input && input->n_qubits() != register_size) {
            throw std::invalid_argument("Program: input state size does not match register");
        }
        for (const auto &d : steps) {
            if (const auto *s = std::get_if<Synth1qStep>(&d)) {
                if (s->qubit >= register_size) {
                    throw std::invalid_argument("Program: synth1q qubit out of range");
                }
                synth1q::SynthTarget{s->target, s->epsilon, s->cap, s->pauli_tolerant}.validate();
            } else {
                const auto &t = std::get<Synth2qStep>(d);
                if (t.qubit_a >= register_size || t.qubit_b >= register_size) {
                    throw std::invalid_argument("Program: synth2q qubit out of range");
                }
                if (t.qubit_a == t.qubit_b) {
                    throw std::invalid_argument("Program: synth2q qubits must be distinct");
                }
                if (!(t.epsilon_beta > 0.0) || !std::isfinite(t.target_beta) || t.cap == 0) {
                    throw std::invalid_argument("Program: synth2q needs epsilon > 0, finite "
                                                "target and positive cap");
                }
                if (!(t.correction_epsilon > 0.0 && t.correction_epsilon <= 1.0)) {
                    throw std::invalid_argument("Program: correction epsilon must lie in (0, 1]");
                }
            }
        }
    }
};

struct DirectiveLog {
    std::string kind; ///< "synth1q" or "synth2q"
    std::vector<std::size_t> qubits;
    std::uint64_t seed = 0;
    /// synth1q: generator index per step ('0' likely, '1' rare).
    /// synth2q: '+' or '-' per two-qubit step.
    std::string outcomes;
    std::optional<std::uint64_t> stop_step; ///< empty when a cap was reached
    std::uint64_t ancillas = 0;             ///< including correction walks
    std::uint64_t correction_ancillas = 0;
    double final_distance = 1.0;
    /// Operator applied to the directive's qubits (2x2 or 4x4, first listed
    /// qubit most significant).
    SquareOperator accumulated = SquareOperator::identity(2);
    /// |<accumulated psi_in | psi_out>|^2 on the full register.
    double agreement_fidelity = 1.0;
    double min_ancilla_purity = 1.0;
    std::optional<int> pauli;
    // synth2q only
    std::optional<double> beta;
    std::array<double, 2> residual_z{0.0, 0.0}; ///< e^{i z Z} per qubit, z in (-pi/2, pi/2]
    /// gate_distance(accumulated, declared frame x e^{i beta Z(x)Z}).
    std::optional<double> declared_distance;
};

struct RunLog {
    std::uint64_t master_seed = 0;
    std::size_t register_size = 0;
    std::vector<DirectiveLog> directives;
    std::uint64_t total_ancillas = 0;
    StateVector final_state;
    std::optional<double> fidelity;
    bool aborted = false;
    /// Largest |norm - 1| seen on any intermediate register state.
    double max_norm_error = 0.0;
};

namespace detail {

/// One measured ancilla interaction on the joint state. Returns the basis
/// index of the outcome and updates `reg` to the post-measurement state.
struct Measurement {
    std::size_t basis_index = 0;
    double purity = 1.0;
};

inline Measurement interact_and_measure(StateVector &reg, const channel::ChannelSpec &spec,
                                        const std::vector<std::size_t> &qubits,
                                        std::size_t likely_index, double u) {
    const std::size_t n = reg.n_qubits();
    const std::size_t d = reg.size();
    std::vector<cplx> amps(2 * d);
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t r = 0; r < d; ++r) {
            amps[x * d + r] = spec.prep[x] * reg[r];
        }
    }
    StateVector joint(n + 1, std::move(amps));
    for (std::size_t q : qubits) {
        joint.apply(spec.interaction, 0, q + 1);
    }

    std::array<std::vector<cplx>, 2> branch;
    std::array<double, 2> prob{};
    for (std::size_t m = 0; m < 2; ++m) {
        branch[m].assign(d, cplx{0.0, 0.0});
        for (std::size_t r = 0; r < d; ++r) {
            branch[m][r] = std::conj(spec.basis[m][0]) * joint[r] +
                           std::conj(spec.basis[m][1]) * joint[d + r];
            prob[m] += std::norm(branch[m][r]);
        }
    }
    Measurement out;
    out.basis_index = u < prob[likely_index] ? likely_index : 1 - likely_index;
    const std::size_t m = out.basis_index;
    const double s = 1.0 / std::sqrt(prob[m]);

    // Projected joint state |m><m| (x) I, then the ancilla's reduced purity.
    std::array<std::array<cplx, 2>, 2> rho{};
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            cplx acc{0.0, 0.0};
            for (std::size_t r = 0; r < d; ++r) {
                acc += spec.basis[m][x] * branch[m][r] * s *
                       std::conj(spec.basis[m][y] * branch[m][r] * s);
            }
            rho[x][y] = acc;
        }
    }
    out.purity = 0.0;
    for (const auto &row : rho) {
        for (const auto &v : row) {
            out.purity += std::norm(v);
        }
    }
    for (auto &v : branch[m]) {
        v *= s;
    }
    reg = StateVector::normalized(n, std::move(branch[m]));
    return out;
}

inline double agreement(const StateVector &before, const StateVector &after,
                        const SquareOperator &op, const std::vector<std::size_t> &qubits) {
    StateVector expected = before;
    if (qubits.size() == 1) {
        expected.apply(op, qubits[0]);
    } else {
        expected.apply(op, qubits[0], qubits[1]);
    }
    return fidelity(expected, after);
}

struct Walk1q {
    std::string outcomes;
    std::optional<std::uint64_t> stop_step;
    SquareOperator accumulated = SquareOperator::identity(2);
    double distance = 1.0;
    std::optional<int> pauli;
};

struct Context {
    channel::ChannelSpec spec1;
    synth1q::Generators gens;
    std::array<std::size_t, 2> gen_basis{}; ///< basis index of generator j
    double min_purity = 1.0;
    double max_norm_error = 0.0;
};

/// Single-qubit walk on the live register, stopping on the accumulated
/// product exactly as synth1q::run_until does.
inline Walk1q walk_1q(StateVector &reg, std::size_t qubit, const SquareOperator &target,
                      double epsilon, std::uint64_t cap, bool pauli_tolerant, Rng &rng,
                      Context &ctx) {
    Walk1q w;
    auto check = [&](std::uint64_t k) {
        double best = 2.0;
        for (int p = 0; p < (pauli_tolerant ? 4 : 1); ++p) {
            const double dist = gate_distance(w.accumulated, gates::pauli(p) * target);
            if (dist < best) {
                best = dist;
                if (pauli_tolerant) {
                    w.pauli = p;
                }
            }
        }
        w.distance = best;
        if (best <= epsilon) {
            w.stop_step = k;
            return true;
        }
        return false;
    };
    if (check(0)) {
        return w;
    }
    for (std::uint64_t k = 1; k <= cap; ++k) {
        const double u = uniform01(rng);
        const Measurement m = interact_and_measure(reg, ctx.spec1, {qubit}, ctx.gen_basis[0], u);
        const std::size_t g = m.basis_index == ctx.gen_basis[0] ? 0 : 1;
        ctx.min_purity = std::min(ctx.min_purity, m.purity);
        ctx.max_norm_error = std::max(ctx.max_norm_error, std::abs(reg.norm() - 1.0));
        w.outcomes.push_back(g == 0 ? '0' : '1');
        w.accumulated = ctx.gens.unitaries[g] * w.accumulated;
        if (k % synth1q::kReunitarizeEvery == 0) {
            w.accumulated = polar_project(w.accumulated);
        }
        if (check(k)) {
            break;
        }
    }
    return w;
}

/// Z^k H, k chosen per qubit so that (c_a (x) c_b) U is e^{i delta Z(x)Z}
/// times local z rotations with angles in [-pi/4, pi/4].
struct BranchCorrection {
    std::array<SquareOperator, 2> targets;
    std::array<double, 2> residual{};
};

inline BranchCorrection correction_for(const channel::KrausBranch &branch, double delta) {
    const SquareOperator hh = kron(gates::H(), gates::H());
    const SquareOperator diag = hh * *branch.unitary;
    const SquareOperator local = diag * gates::ising(-delta);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (r != c && std::abs(local(r, c)) > 1e-9) {
                throw Error(Errc::UnremovedLocalPart,
                            "unremoved local part: branch is not (H (x) H) times a diagonal");
            }
        }
    }
    // local = e^{ig} e^{i a Z} (x) e^{i b Z}
    const double a = std::arg(local(0, 0) / local(2, 2)) / 2.0;
    const double b = std::arg(local(0, 0) / local(1, 1)) / 2.0;
    BranchCorrection out;
    const std::array<double, 2> ab{a, b};
    for (std::size_t i = 0; i < 2; ++i) {
        const double k = std::round(ab[i] / (kPi / 2));
        out.residual[i] = ab[i] - k * kPi / 2;
        const bool odd = static_cast<long long>(std::abs(k)) % 2 == 1;
        out.targets[i] = odd ? gates::Z() * gates::H() : gates::H();
    }
    const auto check = channel::classify_two_qubit_branch(branch, {out.targets[0], out.targets[1]});
    (void)check;
    return out;
}

} // namespace detail

/**
 * Runs the program. Each directive i draws from its own stream seeded with
 * master_seed ^ i. A cap reached in any walk aborts the program; the log
 * then holds the directives run so far, the last one flagged by an empty
 * stop_step.
 */
inline RunLog execute(const Program &program) {
    program.validate();
    const std::size_t n = program.register_size;

    detail::Context ctx;
    ctx.spec1 = program.channel;
    ctx.gens = synth1q::from_channel(ctx.spec1);
    for (std::size_t j = 0; j < 2; ++j) {
        ctx.gen_basis[j] = ctx.gens.labels[j] == ctx.spec1.labels[0] ? 0 : 1;
    }

    RunLog log;
    log.master_seed = program.master_seed;
    log.register_size = n;
    StateVector reg = program.input ? *program.input : StateVector::basis(n, 0);

    for (std::size_t i = 0; i < program.steps.size(); ++i) {
        DirectiveLog dl;
        dl.seed = trial_seed(program.master_seed, i);
        Rng rng(dl.seed);
        ctx.min_purity = 1.0;
        const StateVector before = reg;

        if (const auto *s = std::get_if<Synth1qStep>(&program.steps[i])) {
            dl.kind = "synth1q";
            dl.qubits = {s->qubit};
            const detail::Walk1q w = detail::walk_1q(reg, s->qubit, s->target, s->epsilon, s->cap,
                                                     s->pauli_tolerant, rng, ctx);
            dl.outcomes = w.outcomes;
            dl.stop_step = w.stop_step;
            dl.ancillas = w.outcomes.size();
            dl.final_distance = w.distance;
            dl.accumulated = w.accumulated;
            dl.pauli = w.pauli;
        } else {
            const auto &t = std::get<Synth2qStep>(program.steps[i]);
            dl.kind = "synth2q";
            dl.qubits = {t.qubit_a, t.qubit_b};
            if (ctx.spec1.labels[0] != "+i" || ctx.spec1.labels[1] != "-i") {
                throw std::invalid_argument("execute: synth2q needs the {|+i>, |-i>} basis");
            }
            channel::ChannelSpec spec2 = ctx.spec1;
            spec2.num_register_qubits = 2;
            const auto branches = channel::stinespring_kraus(spec2);
            const synth2q::BetaWalkParams params =
                synth2q::increments(ctx.spec1.alpha, ctx.spec1.flavor);
            const std::size_t plus = branches[0].outcome == "+i" ? 0 : 1;
            const std::array<detail::BranchCorrection, 2> corr{
                detail::correction_for(branches[0], static_cast<double>(
                                                        plus == 0 ? params.delta_plus
                                                                  : params.delta_minus)),
                detail::correction_for(branches[1], static_cast<double>(
                                                        plus == 1 ? params.delta_plus
                                                                  : params.delta_minus))};
            const std::size_t likely =
                branches[0].probability >= branches[1].probability ? 0 : 1;

            std::optional<synth2q::Lattice> lat;
            std::int64_t target_units = 0;
            std::int64_t units = 0;
            if (t.exact) {
                lat = synth2q::exact_lattice(params, *t.exact);
                const auto idx = synth2q::lattice_index(*lat, t.target_beta);
                if (!idx) {
                    throw std::invalid_argument("execute: target beta is not on the exact lattice");
                }
                target_units = *idx;
            }
            synth2q::real beta = 0.0L;
            auto distance = [&] {
                if (lat) {
                    return units == target_units ? 0.0 : static_cast<double>(synth2q::circular_distance(
                                                              lat->to_radians(units),
                                                              lat->to_radians(target_units)));
                }
                return static_cast<double>(synth2q::circular_distance(beta, t.target_beta));
            };
            auto reached = [&] {
                return lat ? units == target_units : distance() <= t.epsilon_beta;
            };

            dl.accumulated = SquareOperator::identity(4);
            dl.final_distance = distance();
            bool capped = false;
            if (reached()) {
                dl.stop_step = 0;
            } else {
                for (std::uint64_t k = 1; k <= t.cap && !capped; ++k) {
                    const double u = uniform01(rng);
                    const detail::Measurement m = detail::interact_and_measure(
                        reg, spec2, {t.qubit_a, t.qubit_b}, likely, u);
                    ctx.min_purity = std::min(ctx.min_purity, m.purity);
                    ctx.max_norm_error = std::max(ctx.max_norm_error, std::abs(reg.norm() - 1.0));
                    const bool is_plus = m.basis_index == plus;
                    dl.outcomes.push_back(is_plus ? '+' : '-');
                    ++dl.ancillas;
                    dl.accumulated = *branches[m.basis_index].unitary * dl.accumulated;

                    const auto &c = corr[m.basis_index];
                    std::array<SquareOperator, 2> applied{gates::I(), gates::I()};
                    for (std::size_t side = 0; side < 2; ++side) {
                        const std::size_t q = side == 0 ? t.qubit_a : t.qubit_b;
                        const detail::Walk1q w =
                            detail::walk_1q(reg, q, c.targets[side], t.correction_epsilon,
                                            t.correction_cap, false, rng, ctx);
                        dl.correction_ancillas += w.outcomes.size();
                        dl.ancillas += w.outcomes.size();
                        applied[side] = w.accumulated;
                        if (!w.stop_step) {
                            capped = true;
                        }
                        dl.residual_z[side] = wrap_half_pi(dl.residual_z[side] + c.residual[side]);
                    }
                    dl.accumulated = kron(applied[0], applied[1]) * dl.accumulated;

                    if (lat) {
                        units = lat->reduce(units + (is_plus ? lat->delta_plus : lat->delta_minus));
                        beta = lat->to_radians(units);
                    } else {
                        beta = synth2q::wrap_half_pi(beta + (is_plus ? params.delta_plus
                                                                     : params.delta_minus));
                    }
                    dl.final_distance = distance();
                    if (!capped && reached()) {
                        dl.stop_step = k;
                        break;
                    }
                }
            }
            dl.beta = static_cast<double>(beta);
            const SquareOperator declared =
                reconstruct({0.0, dl.residual_z[0], dl.residual_z[1], *dl.beta});
            dl.declared_distance = gate_distance(dl.accumulated, declared);
        }

        dl.min_ancilla_purity = ctx.min_purity;
        dl.agreement_fidelity = detail::agreement(before, reg, dl.accumulated, dl.qubits);
        log.total_ancillas += dl.ancillas;
        const bool stopped = dl.stop_step.has_value();
        log.directives.push_back(std::move(dl));
        if (!stopped) {
            log.aborted = true;
            break;
        }
    }
    log.max_norm_error = ctx.max_norm_error;
    log.final_state = reg;
    return log;
}

// ---------------------------------------------------------------------------
// Ideal circuits

struct IdealGate {
    SquareOperator unitary;
    std::vector<std::size_t> qubits; ///< one or two, first most significant
};

struct IdealCircuit {
    std::vector<IdealGate> gates;
    /// Compare up to local z rotations on every qubit rather than only up to
    /// a global phase.
    bool up_to_local_z = false;
};

inline StateVector ideal_state(const IdealCircuit &circuit, const StateVector &input) {
    StateVector s = input;
    for (const auto &g : circuit.gates) {
        if (g.qubits.size() == 1 && g.unitary.dim() == 2) {
            s.apply(g.unitary, g.qubits[0]);
        } else if (g.qubits.size() == 2 && g.unitary.dim() == 4) {
            s.apply(g.unitary, g.qubits[0], g.qubits[1]);
        } else {
            throw std::invalid_argument("ideal_state: gate arity does not match its matrix");
        }
    }
    return s;
}

/// max over local z rotations of |<target|Z-rotated psi>|^2. Closed form for
/// targets supported on at most two computational basis states.
inline double fidelity_up_to_local_z(const StateVector &psi, const StateVector &target) {
    if (psi.size() != target.size()) {
        throw Error(Errc::DimensionMismatch, "fidelity_up_to_local_z: size mismatch");
    }
    double total = 0.0;
    std::size_t support = 0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (std::abs(target[i]) > 1e-12) {
            ++support;
            total += std::abs(target[i]) * std::abs(psi[i]);
        }
    }
    if (support > 2) {
        throw std::invalid_argument(
            "fidelity_up_to_local_z: target must be supported on at most two basis states");
    }
    return std::min(1.0, total * total);
}

inline double compare_to_ideal(const RunLog &log, const IdealCircuit &circuit,
                               const std::optional<StateVector> &input = std::nullopt) {
    const StateVector start = input ? *input : StateVector::basis(log.register_size, 0);
    const StateVector ideal = ideal_state(circuit, start);
    return circuit.up_to_local_z ? fidelity_up_to_local_z(log.final_state, ideal)
                                 : fidelity(log.final_state, ideal);
}

// ---------------------------------------------------------------------------
// Demonstrations

/**
 * Bell pair on qubits 0 and 1 of a three-qubit register, symmetric
 * interaction at alpha = pi/8. Qubit 2 stays in |0>; an Ising rotation of
 * -pi/4 against it acts as a z rotation on qubit 1.
 */
inline Program bell_program(std::uint64_t seed, double epsilon_beta = 0.01) {
    Program p;
    p.register_size = 3;
    p.master_seed = seed;
    p.channel = channel::ChannelSpec::make(channel::Flavor::Symmetric, kPi / 8, 1);
    Synth2qStep phase_on_1;
    phase_on_1.qubit_a = 1;
    phase_on_1.qubit_b = 2;
    phase_on_1.target_beta = -kPi / 4;
    phase_on_1.epsilon_beta = epsilon_beta;
    Synth2qStep entangle = phase_on_1;
    entangle.qubit_a = 0;
    entangle.qubit_b = 1;
    entangle.target_beta = kPi / 4;
    p.steps = {Synth1qStep{0, gates::H(), 1e-9, 1'000'000, false},
               Synth1qStep{1, gates::H(), 1e-9, 1'000'000, false}, phase_on_1, entangle,
               Synth1qStep{1, gates::H(), 1e-9, 1'000'000, false}};
    return p;
}

/// (|000> + |110>) / sqrt 2.
inline StateVector bell_target() {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cplx> a(8, cplx{0.0, 0.0});
    a[0] = s;
    a[6] = s;
    return StateVector(3, std::move(a));
}

/// Runs the Bell program; fidelity is taken up to local z phases.
inline RunLog bell_demo(std::uint64_t seed, double epsilon_beta = 0.01) {
    RunLog log = execute(bell_program(seed, epsilon_beta));
    if (!log.aborted) {
        log.fidelity = fidelity_up_to_local_z(log.final_state, bell_target());
    }
    return log;
}

struct AsymmetricOptions {
    bool exact = false;
    double epsilon_beta = 0.01;
    double epsilon_1q = 0.01;
};

struct AsymmetricResult {
    RunLog log;
    SquareOperator implemented = SquareOperator::identity(4);
    SquareOperator target = SquareOperator::identity(4);
    /// gate_distance(implemented, declared z frame x target).
    double distance = 1.0;
};

/// Strength at which the +i increment is exactly pi/8 (phi = -3 pi/8).
inline double exact_alpha() { return 0.5 * std::acos(std::sqrt(2.0) - 1.0); }

/**
 * (H (x) I) e^{-i (pi/8) Z(x)Z} on two qubits with the symmetric
 * interaction. In exact mode alpha is chosen so that the Ising lattice
 * has spacing pi/8 and the non-local part is hit exactly.
 */
inline AsymmetricResult asymmetric_gate_demo(std::uint64_t seed,
                                             const AsymmetricOptions &options = {}) {
    Program p;
    p.register_size = 2;
    p.master_seed = seed;
    const double alpha = options.exact ? exact_alpha() : kPi / 8;
    p.channel = channel::ChannelSpec::make(channel::Flavor::Symmetric, alpha, 1);
    Synth2qStep ising;
    ising.qubit_a = 0;
    ising.qubit_b = 1;
    ising.target_beta = -kPi / 8;
    ising.epsilon_beta = options.epsilon_beta;
    if (options.exact) {
        ising.exact = synth2q::Rational{-3, 8};
    }
    p.steps = {ising, Synth1qStep{0, gates::H(), options.epsilon_1q, 10'000'000, false}};

    AsymmetricResult r;
    r.log = execute(p);
    r.target = kron(gates::H(), gates::I()) * gates::ising(-kPi / 8);
    if (r.log.aborted) {
        return r;
    }
    const DirectiveLog &two = r.log.directives[0];
    const DirectiveLog &one = r.log.directives[1];
    r.implemented = kron(one.accumulated, gates::I()) * two.accumulated;
    const SquareOperator frame =
        kron(gates::rz(-2.0 * two.residual_z[0]), gates::rz(-2.0 * two.residual_z[1]));
    r.distance = gate_distance(r.implemented, r.target * frame);
    return r;
}

} // namespace rus_adqc::protocol
