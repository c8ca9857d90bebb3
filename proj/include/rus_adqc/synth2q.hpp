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
 * @file synth2q.hpp
 * Random walk on the Ising angle beta of e^{i beta Z(x)Z} (mod pi).
 *
 * Once the register-side local gates of each two-qubit branch are undone,
 * the +i outcome adds delta_plus = -(phi + pi/4) to beta and the -i outcome
 * adds delta_minus = -pi/4, with tan(phi) = -1/cos(2 alpha). Both values are
 * cross-checked against the explicit 8x8 channel whenever parameters are
 * built.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "qcore.hpp"
#include "random.hpp"

namespace rus_adqc::synth2q {

using real = long double;

inline constexpr real kPiL = std::numbers::pi_v<long double>;

inline real wrap_half_pi(real x) {
    real r = std::remainder(x, kPiL);
    if (r <= -kPiL / 2) {
        r += kPiL;
    }
    return r;
}

inline real circular_distance(real a, real b) { return std::fabs(wrap_half_pi(a - b)); }

struct BetaWalkParams {
    double alpha = 0.0;
    real phi = 0.0;         ///< principal arctan(-1/cos 2 alpha)
    real delta_plus = 0.0;  ///< increment of the +i outcome, in (-pi/2, pi/2]
    real delta_minus = 0.0; ///< increment of the -i outcome
    double p_plus = 0.0;
    double p_minus = 0.0;
};

/// Walk parameters for interaction strength alpha. Probabilities come from
/// the explicit two-qubit channel; the increments from the closed form, and
/// the two must agree to 1e-9.
inline BetaWalkParams increments(double alpha,
                                 channel::Flavor flavor = channel::Flavor::Controlled) {
    if (!(alpha > 0.0 && alpha < kPi / 2)) {
        throw std::invalid_argument("increments: alpha must lie in (0, pi/2)");
    }
    const real c2 = std::cos(2.0L * static_cast<real>(alpha));
    if (std::fabs(c2) < 1e-12L) {
        throw Error(Errc::SingularStrength, "singular strength: cos(2 alpha) = 0, phi undefined");
    }
    BetaWalkParams p;
    p.alpha = alpha;
    p.phi = std::atan(-1.0L / c2);
    p.delta_plus = wrap_half_pi(-(p.phi + kPiL / 4));
    p.delta_minus = wrap_half_pi(-kPiL / 4);

    // A diagonal unitary fixes beta only modulo pi/2 (a shift by pi/2 trades
    // against Z on both qubits), so that is the resolution of the comparison.
    const auto branches =
        channel::stinespring_kraus(channel::ChannelSpec::make(flavor, alpha, 2));
    for (const auto &b : branches) {
        const IsingDecomposition d =
            channel::classify_two_qubit_branch(b, channel::hadamard_correction());
        const bool plus = b.outcome == "+i";
        const real expected = plus ? p.delta_plus : p.delta_minus;
        if (std::fabs(std::remainder(static_cast<real>(d.beta) - expected, kPiL / 2)) > 1e-9L) {
            throw std::logic_error("increments: channel branch beta disagrees with tan(phi) = "
                                   "-1/cos(2 alpha)");
        }
        (plus ? p.p_plus : p.p_minus) = b.probability;
    }
    return p;
}

struct BetaTrajectory {
    std::uint64_t seed = 0;
    std::string outcomes;            ///< '+' or '-' per step
    std::vector<double> beta_values; ///< beta after each step, index 0 = start (when recorded)
    real beta = 0.0;                 ///< final beta, (-pi/2, pi/2]
    std::optional<std::uint64_t> stop_step;
    double final_distance = 0.0;

    [[nodiscard]] bool capped() const { return !stop_step.has_value(); }
};

struct BetaWalkOptions {
    real start_beta = 0.0;
    bool record_betas = false;
};

inline char sample_outcome(Rng &rng, const BetaWalkParams &params) {
    return uniform01(rng) < params.p_plus ? '+' : '-';
}

/// Stops at the first k with circular distance (mod pi) <= epsilon_beta.
inline BetaTrajectory run_until_beta(real target_beta, real epsilon_beta,
                                     const BetaWalkParams &params, std::uint64_t cap,
                                     std::uint64_t seed, const BetaWalkOptions &options = {}) {
    if (!(epsilon_beta > 0.0L) || !std::isfinite(static_cast<double>(target_beta))) {
        throw std::invalid_argument("run_until_beta: epsilon must be positive, target finite");
    }
    BetaTrajectory t;
    t.seed = seed;
    Rng rng(seed);
    real beta = wrap_half_pi(options.start_beta);
    auto record = [&] {
        if (options.record_betas) {
            t.beta_values.push_back(static_cast<double>(beta));
        }
    };
    record();
    real dist = circular_distance(beta, target_beta);
    if (dist <= epsilon_beta) {
        t.stop_step = 0;
    } else {
        for (std::uint64_t k = 1; k <= cap; ++k) {
            const char o = sample_outcome(rng, params);
            t.outcomes.push_back(o);
            beta = wrap_half_pi(beta + (o == '+' ? params.delta_plus : params.delta_minus));
            record();
            dist = circular_distance(beta, target_beta);
            if (dist <= epsilon_beta) {
                t.stop_step = k;
                break;
            }
        }
    }
    t.beta = beta;
    t.final_distance = static_cast<double>(dist);
    return t;
}

/// Scalar replay of an outcome string from beta = start.
inline real replay(const std::string &outcomes, const BetaWalkParams &params, real start = 0.0L) {
    real beta = wrap_half_pi(start);
    for (char o : outcomes) {
        beta = wrap_half_pi(beta + (o == '+' ? params.delta_plus : params.delta_minus));
    }
    return beta;
}

// ---------------------------------------------------------------------------
// Exact mode: angles as integers in units of pi/L.

/// p/q, a multiple of pi.
struct Rational {
    std::int64_t p = 0;
    std::int64_t q = 1;
};

struct Lattice {
    std::int64_t units = 1; ///< L: the circle of circumference pi holds L steps of pi/L
    std::int64_t delta_plus = 0;
    std::int64_t delta_minus = 0;

    [[nodiscard]] std::int64_t reduce(std::int64_t v) const {
        const std::int64_t r = v % units;
        return r < 0 ? r + units : r;
    }
    [[nodiscard]] real to_radians(std::int64_t v) const {
        return wrap_half_pi(static_cast<real>(reduce(v)) * kPiL / static_cast<real>(units));
    }
};

/// Common lattice of two increments given as rational multiples of pi.
inline Lattice lattice_from_increments(Rational plus, Rational minus) {
    if (plus.q <= 0 || minus.q <= 0) {
        throw std::invalid_argument("lattice: denominators must be positive");
    }
    const std::int64_t l = std::lcm(plus.q, minus.q);
    Lattice lat;
    lat.units = l;
    lat.delta_plus = lat.reduce(plus.p * (l / plus.q));
    lat.delta_minus = lat.reduce(minus.p * (l / minus.q));
    // coarsest common unit
    const std::int64_t g = std::gcd(lat.units, std::gcd(lat.delta_plus, lat.delta_minus));
    if (g > 1) {
        lat.units /= g;
        lat.delta_plus /= g;
        lat.delta_minus /= g;
    }
    return lat;
}

/// Lattice for params whose phi the caller asserts to be (p/q) pi. The
/// assertion is checked against params.phi but never inferred from it.
inline Lattice exact_lattice(const BetaWalkParams &params, Rational phi_over_pi) {
    if (phi_over_pi.q <= 0) {
        throw std::invalid_argument("exact_lattice: q must be positive");
    }
    const real asserted =
        static_cast<real>(phi_over_pi.p) / static_cast<real>(phi_over_pi.q) * kPiL;
    if (std::fabs(asserted - params.phi) > 1e-9L) {
        throw std::invalid_argument("exact_lattice: rational flag is inconsistent with alpha");
    }
    // delta_plus = -(p/q + 1/4) pi = -(4p + q)/(4q) pi, delta_minus = -1/4 pi.
    return lattice_from_increments({-(4 * phi_over_pi.p + phi_over_pi.q), 4 * phi_over_pi.q},
                                   {-1, 4});
}

/// The increments commute, so a witness is fixed by its two counts.
struct ReachableElement {
    std::int64_t units = 0;
    real beta = 0.0;
    std::uint64_t plus_count = 0;
    std::uint64_t minus_count = 0;

    /// Outcome string reaching this element from beta = 0.
    [[nodiscard]] std::string witness() const {
        return std::string(plus_count, '+') + std::string(minus_count, '-');
    }
};

/// Closure of {0} under both increments (breadth first, so witnesses are
/// shortest). Errors with EffectivelyDense past max_elements.
inline std::vector<ReachableElement> reachable_set(const Lattice &lat,
                                                   std::size_t max_elements = 1'000'000) {
    std::unordered_map<std::int64_t, std::size_t> seen{{0, 0}};
    std::vector<ReachableElement> out{{0, 0.0L, 0, 0}};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const bool plus : {true, false}) {
            const std::int64_t w =
                lat.reduce(out[head].units + (plus ? lat.delta_plus : lat.delta_minus));
            if (seen.contains(w)) {
                continue;
            }
            if (seen.size() >= max_elements) {
                throw Error(Errc::EffectivelyDense,
                            "effectively dense: reachable set exceeds " +
                                std::to_string(max_elements) + " elements");
            }
            ReachableElement e = out[head];
            e.units = w;
            e.beta = lat.to_radians(w);
            (plus ? e.plus_count : e.minus_count) += 1;
            seen.emplace(w, out.size());
            out.push_back(e);
        }
    }
    return out;
}

inline std::vector<ReachableElement> exact_reachable_set(const BetaWalkParams &params,
                                                         Rational phi_over_pi) {
    return reachable_set(exact_lattice(params, phi_over_pi));
}

/// Integer replay of an outcome string.
inline std::int64_t replay_exact(const std::string &outcomes, const Lattice &lat,
                                 std::int64_t start = 0) {
    std::int64_t v = lat.reduce(start);
    for (char o : outcomes) {
        v = lat.reduce(v + (o == '+' ? lat.delta_plus : lat.delta_minus));
    }
    return v;
}

/// Exact-hit walk on the lattice.
inline BetaTrajectory run_until_beta_exact(std::int64_t target_units, const Lattice &lat,
                                           const BetaWalkParams &params, std::uint64_t cap,
                                           std::uint64_t seed,
                                           const BetaWalkOptions &options = {}) {
    BetaTrajectory t;
    t.seed = seed;
    Rng rng(seed);
    const std::int64_t target = lat.reduce(target_units);
    std::int64_t v = 0;
    auto record = [&] {
        if (options.record_betas) {
            t.beta_values.push_back(static_cast<double>(lat.to_radians(v)));
        }
    };
    record();
    if (v == target) {
        t.stop_step = 0;
    } else {
        for (std::uint64_t k = 1; k <= cap; ++k) {
            const char o = sample_outcome(rng, params);
            t.outcomes.push_back(o);
            v = lat.reduce(v + (o == '+' ? lat.delta_plus : lat.delta_minus));
            record();
            if (v == target) {
                t.stop_step = k;
                break;
            }
        }
    }
    t.beta = lat.to_radians(v);
    t.final_distance = static_cast<double>(circular_distance(t.beta, lat.to_radians(target)));
    return t;
}

/// Lattice index of an angle that must sit on the lattice (within 1e-12 rad).
inline std::optional<std::int64_t> lattice_index(const Lattice &lat, real beta) {
    const real scaled = beta / kPiL * static_cast<real>(lat.units);
    const real nearest = std::round(scaled);
    if (std::fabs(scaled - nearest) * kPiL / static_cast<real>(lat.units) > 1e-12L) {
        return std::nullopt;
    }
    return lat.reduce(static_cast<std::int64_t>(nearest));
}

// ---------------------------------------------------------------------------

struct IrrationalityWitness {
    std::vector<std::pair<std::uint64_t, double>> table; ///< (k, dist(k delta mod pi, 0)), k >= 1
    double min_distance = 0.0;
};

/// Distances of the multiples of delta (default: delta_plus at alpha = pi/8)
/// from 0 modulo pi, k = 1..k_max. An empirical consistency check only.
inline IrrationalityWitness irrationality_witness(std::uint64_t k_max,
                                                  std::optional<real> delta = std::nullopt) {
    if (k_max == 0 || k_max > 1'000'000) {
        throw std::invalid_argument("irrationality_witness: k_max must lie in [1, 10^6]");
    }
    const real d = delta ? *delta : increments(kPi / 8).delta_plus;
    IrrationalityWitness w;
    w.table.reserve(k_max);
    w.min_distance = 1e300;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        const double dist =
            static_cast<double>(std::fabs(wrap_half_pi(static_cast<real>(k) * d)));
        w.table.emplace_back(k, dist);
        w.min_distance = std::min(w.min_distance, dist);
    }
    return w;
}

} // namespace rus_adqc::synth2q
