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
 * @file synth1q.hpp
 * Repeat-until-success synthesis of single-qubit gates. Each ancilla step
 * left-multiplies the accumulated product by one of two branch unitaries,
 * chosen at random with the branch probabilities; the walk stops the first
 * time the product is within epsilon of the target.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "qcore.hpp"
#include "random.hpp"

namespace rus_adqc::synth1q {

/// Steps between polar re-projections of the accumulated product.
inline constexpr std::uint64_t kReunitarizeEvery = 10'000;

/// The two branch unitaries a single-qubit walk draws from. Index 0 is the
/// more probable branch (basis order on ties).
struct Generators {
    std::array<SquareOperator, 2> unitaries;
    std::array<double, 2> probabilities{};
    std::array<std::string, 2> labels;
};

inline Generators from_channel(const channel::ChannelSpec &spec) {
    if (spec.num_register_qubits != 1) {
        throw std::invalid_argument("synth1q: generators need a single-register-qubit channel");
    }
    auto branches = channel::stinespring_kraus(spec);
    if (branches[1].probability > branches[0].probability) {
        std::swap(branches[0], branches[1]);
    }
    Generators g;
    for (std::size_t i = 0; i < 2; ++i) {
        // A zero-probability branch is never drawn; identity keeps the pair well formed.
        g.unitaries[i] = branches[i].unitary.value_or(SquareOperator::identity(2));
        g.probabilities[i] = branches[i].probability;
        g.labels[i] = branches[i].outcome;
    }
    return g;
}

/// X^j H Z^{1/4} with probabilities (cos^2(pi/8), sin^2(pi/8)).
inline Generators default_generators() {
    return from_channel(channel::ChannelSpec::standard());
}

/// u_outcome * accumulated.
inline SquareOperator step(const SquareOperator &accumulated, int outcome,
                           const Generators &generators) {
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("synth1q::step: outcome must be 0 or 1");
    }
    return generators.unitaries[static_cast<std::size_t>(outcome)] * accumulated;
}

inline int sample_outcome(Rng &rng, const Generators &generators) {
    return uniform01(rng) < generators.probabilities[0] ? 0 : 1;
}

struct SynthTarget {
    SquareOperator target;
    double epsilon = 0.01;
    std::uint64_t cap = 10'000'000;
    bool pauli_tolerant = false;

    void validate() const {
        if (target.dim() != 2 || unitarity_error(target) > 1e-10) {
            throw std::invalid_argument("SynthTarget: target must be a 2x2 unitary");
        }
        if (!(epsilon > 0.0 && epsilon <= 1.0)) {
            throw std::invalid_argument("SynthTarget: epsilon must lie in (0, 1]");
        }
        if (cap == 0) {
            throw std::invalid_argument("SynthTarget: cap must be positive");
        }
    }
};

struct WalkTrajectory {
    std::uint64_t seed = 0;
    std::string outcomes; ///< '0'/'1' per step, generator index
    std::vector<SquareOperator> history; ///< accumulated after each step, when recorded
    SquareOperator accumulated = SquareOperator::identity(2);
    std::optional<std::uint64_t> stop_step; ///< empty when the cap was reached
    double final_distance = 1.0;
    /// Pauli P with accumulated ~ P * target (pauli-tolerant runs only).
    std::optional<int> pauli;

    [[nodiscard]] bool capped() const { return !stop_step.has_value(); }
};

struct WalkOptions {
    bool record_history = false;
};

namespace detail {

struct Mat2 {
    cplx a, b, c, d;

    static Mat2 from(const SquareOperator &m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }
    [[nodiscard]] SquareOperator to_operator() const { return {{a, b}, {c, d}}; }

    friend Mat2 operator*(const Mat2 &x, const Mat2 &y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
};

/// 1 - |Tr(u^dagger v)| / 2
inline double distance(const Mat2 &u, const Mat2 &v) {
    const cplx t = std::conj(u.a) * v.a + std::conj(u.b) * v.b + std::conj(u.c) * v.c +
                   std::conj(u.d) * v.d;
    return std::clamp(1.0 - std::abs(t) / 2.0, 0.0, 1.0);
}

} // namespace detail

/**
 * Walks from the identity until gate_distance(accumulated, target) <= epsilon
 * or the cap is reached. In pauli-tolerant mode the stopping distance is the
 * minimum over P in {I, X, Y, Z} of gate_distance(accumulated, P target) and
 * the minimizing P is reported. Deterministic given the seed.
 */
inline WalkTrajectory run_until(const SynthTarget &target, std::uint64_t seed,
                                const Generators &generators = default_generators(),
                                const WalkOptions &options = {}) {
    target.validate();
    std::array<detail::Mat2, 4> goals{};
    const std::size_t n_goals = target.pauli_tolerant ? 4 : 1;
    for (std::size_t p = 0; p < n_goals; ++p) {
        goals[p] = detail::Mat2::from(gates::pauli(static_cast<int>(p)) * target.target);
    }
    const std::array<detail::Mat2, 2> gens{detail::Mat2::from(generators.unitaries[0]),
                                           detail::Mat2::from(generators.unitaries[1])};

    WalkTrajectory traj;
    traj.seed = seed;
    Rng rng(seed);
    detail::Mat2 acc{1.0, 0.0, 0.0, 1.0};

    auto check = [&](std::uint64_t k) {
        double best = 2.0;
        int best_p = 0;
        for (std::size_t p = 0; p < n_goals; ++p) {
            const double d = detail::distance(acc, goals[p]);
            if (d < best) {
                best = d;
                best_p = static_cast<int>(p);
            }
        }
        traj.final_distance = best;
        if (best <= target.epsilon) {
            traj.stop_step = k;
            if (target.pauli_tolerant) {
                traj.pauli = best_p;
            }
            return true;
        }
        return false;
    };

    if (!check(0)) {
        for (std::uint64_t k = 1; k <= target.cap; ++k) {
            const int o = sample_outcome(rng, generators);
            traj.outcomes.push_back(o == 0 ? '0' : '1');
            acc = gens[static_cast<std::size_t>(o)] * acc;
            if (k % kReunitarizeEvery == 0) {
                acc = detail::Mat2::from(polar_project(acc.to_operator()));
            }
            if (options.record_history) {
                traj.history.push_back(acc.to_operator());
            }
            if (check(k)) {
                break;
            }
        }
    }
    traj.accumulated = acc.to_operator();
    return traj;
}

/// Per-trial record, one CSV row each.
struct TrialRecord {
    std::uint64_t trial = 0;
    std::optional<std::uint64_t> stop_step;
    double final_distance = 1.0;

    [[nodiscard]] bool capped() const { return !stop_step.has_value(); }
};

struct HittingStats {
    std::uint64_t trials = 0;
    std::uint64_t failure_count = 0;
    /// Statistics over the trials that stopped before the cap.
    double mean = 0.0;
    double std_error = 0.0;
    double median = 0.0;
    double p95 = 0.0;
};

inline HittingStats summarize(const std::vector<TrialRecord> &records) {
    HittingStats s;
    s.trials = records.size();
    std::vector<double> steps;
    steps.reserve(records.size());
    for (const auto &r : records) {
        if (r.stop_step) {
            steps.push_back(static_cast<double>(*r.stop_step));
        } else {
            ++s.failure_count;
        }
    }
    if (steps.empty()) {
        return s;
    }
    std::sort(steps.begin(), steps.end());
    const double n = static_cast<double>(steps.size());
    double sum = 0.0;
    for (double v : steps) {
        sum += v;
    }
    s.mean = sum / n;
    if (steps.size() > 1) {
        double ss = 0.0;
        for (double v : steps) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    const std::size_t mid = steps.size() / 2;
    s.median = steps.size() % 2 == 1 ? steps[mid] : 0.5 * (steps[mid - 1] + steps[mid]);
    // nearest-rank percentile
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * n));
    s.p95 = steps[std::max<std::size_t>(rank, 1) - 1];
    return s;
}

/// Independent trials, trial i seeded with seed ^ i.
inline std::vector<TrialRecord> run_trials(const SynthTarget &target, std::uint64_t trials,
                                           std::uint64_t seed,
                                           const Generators &generators = default_generators()) {
    target.validate();
    return rus_adqc::run_trials(trials, [&](std::size_t i) {
        const WalkTrajectory t = run_until(target, trial_seed(seed, i), generators);
        return TrialRecord{i, t.stop_step, t.final_distance};
    });
}

inline HittingStats hitting_stats(const SynthTarget &target, std::uint64_t trials,
                                  std::uint64_t seed,
                                  const Generators &generators = default_generators()) {
    return summarize(run_trials(target, trials, seed, generators));
}

// ---------------------------------------------------------------------------
// Finite-group mode

/// Projective closure of the group generated by the two generators, by
/// breadth-first left multiplication from the identity.
inline std::vector<SquareOperator> enumerate_group(const Generators &generators,
                                                   std::size_t limit = 10'000) {
    std::vector<SquareOperator> elements{SquareOperator::identity(2)};
    auto known = [&](const SquareOperator &u) {
        return std::any_of(elements.begin(), elements.end(),
                           [&](const SquareOperator &e) { return gate_distance(e, u) < 1e-9; });
    };
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto &g : generators.unitaries) {
            SquareOperator next = g * elements[head];
            if (!known(next)) {
                if (elements.size() >= limit) {
                    throw Error(Errc::NotAFiniteGroup,
                                "not a finite group: closure exceeds " + std::to_string(limit) +
                                    " elements");
                }
                elements.push_back(std::move(next));
            }
        }
    }
    return elements;
}

struct FiniteGroupReport {
    std::vector<SquareOperator> elements;
    std::vector<HittingStats> stats; ///< parallel to elements
};

struct FiniteWalkOptions {
    std::uint64_t trials = 10'000;
    std::uint64_t cap = 1'000'000;
    std::uint64_t seed = 0;
};

/// Generators {H, H Z} with probabilities (cos^2 alpha, sin^2 alpha): the
/// single-qubit branches of the symmetric interaction.
inline Generators symmetric_generators(double alpha = kPi / 8) {
    return from_channel(channel::ChannelSpec::make(channel::Flavor::Symmetric, alpha, 1));
}

/// Enumerates the group and measures the exact-hit time of every element.
inline FiniteGroupReport finite_group_walk(const Generators &generators,
                                           const FiniteWalkOptions &options = {}) {
    FiniteGroupReport report;
    report.elements = enumerate_group(generators);
    for (std::size_t i = 0; i < report.elements.size(); ++i) {
        SynthTarget t{report.elements[i], 1e-9, options.cap, false};
        report.stats.push_back(
            hitting_stats(t, options.trials, options.seed + i * 0x9E3779B97F4A7C15ULL, generators));
    }
    return report;
}

// ---------------------------------------------------------------------------

/// Sum over the decomposition of count * E[T_gate]: the expected time of
/// achieving the gates one after another. The optimal stopping time of the
/// composite target can only be smaller.
inline double expected_time_upper_bound(
    const std::vector<std::pair<std::string, std::uint64_t>> &decomposition,
    const std::map<std::string, double> &per_gate_expected) {
    double total = 0.0;
    for (const auto &[gate, count] : decomposition) {
        const auto it = per_gate_expected.find(gate);
        if (it == per_gate_expected.end()) {
            throw Error(Errc::MissingEntry, "expected_time_upper_bound: no expected time for '" +
                                                gate + "'");
        }
        total += static_cast<double>(count) * it->second;
    }
    return total;
}

} // namespace rus_adqc::synth1q
