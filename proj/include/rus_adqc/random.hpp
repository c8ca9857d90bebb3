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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qcore.hpp"

namespace rus_adqc {

/// 64-bit seeded generator, period 2^19937 - 1.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementations.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Seed of trial `index` in a batch seeded with `seed`.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return seed ^ index;
}

inline double standard_normal(Rng &rng) {
    // Box-Muller on our own uniforms so streams are portable across libstdc++/libc++.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) {
        u1 = uniform01(rng);
    }
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

/// Haar-random unitary of dimension `dim` (Gram-Schmidt on a complex
/// Ginibre matrix, columns orthonormalized in order).
inline SquareOperator haar_unitary(std::size_t dim, Rng &rng) {
    SquareOperator m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(r, c) = cplx{standard_normal(rng), standard_normal(rng)};
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            cplx proj{0.0, 0.0};
            for (std::size_t r = 0; r < dim; ++r) {
                proj += std::conj(m(r, prev)) * m(r, c);
            }
            for (std::size_t r = 0; r < dim; ++r) {
                m(r, c) -= proj * m(r, prev);
            }
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
            nrm += std::norm(m(r, c));
        }
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < dim; ++r) {
            m(r, c) /= nrm;
        }
    }
    return m;
}

inline StateVector haar_state(std::size_t n_qubits, Rng &rng) {
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (auto &a : amps) {
        a = cplx{standard_normal(rng), standard_normal(rng)};
    }
    return StateVector::normalized(n_qubits, std::move(amps));
}

/// Worker count for trial batches: hardware concurrency, capped by the
/// RUS_ADQC_THREADS environment variable when it holds a positive integer.
inline std::size_t trial_threads(std::size_t trials) {
    std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("RUS_ADQC_THREADS")) {
        char *end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            n = std::min(n, static_cast<std::size_t>(cap));
        }
    }
    return std::max<std::size_t>(1, std::min(n, trials));
}

/// Runs fn(i) for i in [0, trials) and returns results ordered by index,
/// whatever the completion order. fn must be safe to call concurrently.
template <class Fn>
auto run_trials(std::size_t trials, Fn &&fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> results(trials);
    const std::size_t workers = trial_threads(trials);
    if (workers <= 1) {
        for (std::size_t i = 0; i < trials; ++i) {
            results[i] = fn(i);
        }
        return results;
    }
    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < trials; i += workers) {
                        results[i] = fn(i);
                    }
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    return results;
}

} // namespace rus_adqc
