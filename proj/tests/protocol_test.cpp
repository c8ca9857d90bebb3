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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rus_adqc/protocol.hpp"

using namespace rus_adqc;
using namespace rus_adqc::protocol;

namespace {

constexpr double pi = std::numbers::pi;

SquareOperator hz4() { return gates::H() * gates::zroot(4); }

void expect_invariants(const RunLog &log) {
    std::uint64_t sum = 0;
    for (const auto &d : log.directives) {
        sum += d.ancillas;
        if (d.stop_step) {
            EXPECT_GE(d.agreement_fidelity, 1.0 - 1e-8) << d.kind;
        }
        EXPECT_NEAR(d.min_ancilla_purity, 1.0, 1e-10);
    }
    EXPECT_EQ(sum, log.total_ancillas);
    EXPECT_LE(log.max_norm_error, 1e-10);
    EXPECT_NEAR(log.final_state.norm(), 1.0, 1e-10);
}

} // namespace

TEST(Execute, EmptyProgram) {
    Rng rng(4);
    Program p;
    p.register_size = 3;
    p.input = haar_state(3, rng);
    const RunLog log = execute(p);
    EXPECT_EQ(log.total_ancillas, 0u);
    EXPECT_FALSE(log.aborted);
    EXPECT_NEAR(fidelity(log.final_state, *p.input), 1.0, 1e-15);
}

TEST(Execute, SingleStepTargetMatchesBranchOracle) {
    const int n = 2000;
    int one_step = 0;
    StateVector expected = StateVector::basis(1, 0);
    expected.apply(hz4(), 0);
    for (int s = 0; s < n; ++s) {
        Program p;
        p.master_seed = static_cast<std::uint64_t>(s);
        p.steps = {Synth1qStep{0, hz4(), 1e-9, 1, false}};
        const RunLog log = execute(p);
        if (!log.aborted) {
            EXPECT_EQ(*log.directives[0].stop_step, 1u);
            ++one_step;
            EXPECT_NEAR(fidelity(log.final_state, expected), 1.0, 1e-12);
        }
    }
    const double q = std::pow(std::cos(pi / 8), 2);
    EXPECT_NEAR(static_cast<double>(one_step) / n, q, 3 * std::sqrt(q * (1 - q) / n));
}

TEST(Execute, RegisterFollowsNormalizedKrausBranches) {
    // Replays the outcome string with Kraus operators built independently
    // from the interaction matrix and checks the final register state.
    Program p;
    p.master_seed = 31;
    p.steps = {Synth1qStep{0, gates::zroot(4), 0.02, 1'000'000, false}};
    const RunLog log = execute(p);
    ASSERT_FALSE(log.aborted);
    const SquareOperator e = p.channel.interaction;
    const SquareOperator k_likely = oracle::project(e, oracle::minus_i(), oracle::plus_i());
    const SquareOperator k_rare = oracle::project(e, oracle::plus_i(), oracle::plus_i());
    std::vector<cplx> psi{1.0, 0.0};
    for (char o : log.directives[0].outcomes) {
        const SquareOperator &k = o == '0' ? k_likely : k_rare;
        std::vector<cplx> next{k(0, 0) * psi[0] + k(0, 1) * psi[1],
                               k(1, 0) * psi[0] + k(1, 1) * psi[1]};
        const double nrm = std::sqrt(std::norm(next[0]) + std::norm(next[1]));
        psi = {next[0] / nrm, next[1] / nrm};
    }
    EXPECT_NEAR(fidelity(log.final_state, StateVector(1, psi)), 1.0, 1e-10);
}

TEST(Execute, InvariantsOnMixedPrograms) {
    Rng rng(12);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Program p;
        p.register_size = 4;
        p.master_seed = seed;
        p.input = haar_state(4, rng);
        p.channel = channel::ChannelSpec::make(channel::Flavor::Symmetric, pi / 8, 1);
        Synth2qStep t;
        t.qubit_a = 2;
        t.qubit_b = 0;
        t.target_beta = 0.4;
        p.steps = {Synth1qStep{1, gates::H(), 1e-9, 1'000'000, false}, t,
                   Synth1qStep{3, gates::Z(), 1e-9, 1'000'000, false}};
        const RunLog log = execute(p);
        ASSERT_FALSE(log.aborted);
        expect_invariants(log);
        const DirectiveLog &two = log.directives[1];
        EXPECT_LT(*two.declared_distance, 1e-10);
        EXPECT_LE(two.final_distance, 0.01);
        EXPECT_NEAR(two.residual_z[0], 0.0, 1e-12);
        EXPECT_NEAR(two.residual_z[1], 0.0, 1e-12);
    }
}

TEST(Execute, ControlledFlavorDeclaresResidualFrame) {
    Program p;
    p.register_size = 2;
    p.master_seed = 8;
    Synth2qStep t;
    t.target_beta = pi / 4;
    t.epsilon_beta = 0.05;
    t.correction_epsilon = 0.05;
    p.steps = {t};
    const RunLog log = execute(p);
    ASSERT_FALSE(log.aborted);
    expect_invariants(log);
    const DirectiveLog &d = log.directives[0];
    // Either branch leaves e^{-i pi/8 Z} on both qubits, up to Paulis.
    const auto steps = static_cast<double>(d.outcomes.size());
    for (double z : d.residual_z) {
        EXPECT_NEAR(std::abs(std::remainder(z + steps * pi / 8, pi / 2)), 0.0, 1e-9);
    }
    EXPECT_GT(d.correction_ancillas, 0u);
}

TEST(Execute, IdentityRequestCostsNothing) {
    Program p;
    p.register_size = 2;
    p.channel = channel::ChannelSpec::make(channel::Flavor::Symmetric, pi / 8, 1);
    p.steps = {Synth1qStep{1, gates::I(), 1e-9, 10, false}};
    const RunLog log = execute(p);
    EXPECT_EQ(*log.directives[0].stop_step, 0u);
    EXPECT_EQ(log.total_ancillas, 0u);
}

TEST(Execute, CapAbortsWithPartialLog) {
    Program p;
    p.register_size = 2;
    p.steps = {Synth1qStep{0, gates::H(), 0.5, 1'000, false},
               Synth1qStep{1, gates::zroot(4), 1e-12, 25, false},
               Synth1qStep{0, gates::H(), 0.5, 1'000, false}};
    const RunLog log = execute(p);
    EXPECT_TRUE(log.aborted);
    ASSERT_EQ(log.directives.size(), 2u);
    EXPECT_FALSE(log.directives[1].stop_step);
    EXPECT_EQ(log.directives[1].ancillas, 25u);
    expect_invariants(log);
}

TEST(Execute, Deterministic) {
    const RunLog a = bell_demo(77);
    const RunLog b = bell_demo(77);
    ASSERT_EQ(a.directives.size(), b.directives.size());
    for (std::size_t i = 0; i < a.directives.size(); ++i) {
        EXPECT_EQ(a.directives[i].outcomes, b.directives[i].outcomes);
    }
    EXPECT_EQ(a.fidelity, b.fidelity);
    for (std::size_t i = 0; i < a.final_state.size(); ++i) {
        EXPECT_EQ(a.final_state[i], b.final_state[i]);
    }
}

TEST(Execute, Validation) {
    Program p;
    p.register_size = 9;
    EXPECT_THROW((void)execute(p), std::invalid_argument);
    p.register_size = 2;
    p.steps = {Synth1qStep{2, gates::H(), 0.1, 10, false}};
    EXPECT_THROW((void)execute(p), std::invalid_argument);
    Synth2qStep t;
    t.qubit_a = 1;
    t.qubit_b = 1;
    p.steps = {t};
    EXPECT_THROW((void)execute(p), std::invalid_argument);
    t.qubit_a = 0;
    t.epsilon_beta = 0.0;
    p.steps = {t};
    EXPECT_THROW((void)execute(p), std::invalid_argument);
    p.steps = {Synth1qStep{0, gates::H(), 0.0, 10, false}};
    EXPECT_THROW((void)execute(p), std::invalid_argument);
}

TEST(Execute, ExactTargetMustBeOnLattice) {
    Program p;
    p.register_size = 2;
    p.channel = channel::ChannelSpec::make(channel::Flavor::Symmetric, exact_alpha(), 1);
    Synth2qStep t;
    t.exact = synth2q::Rational{-3, 8};
    t.target_beta = 0.3;
    p.steps = {t};
    EXPECT_THROW((void)execute(p), std::invalid_argument);
}

TEST(LocalZFidelity, ClosedForm) {
    const StateVector target = bell_target();
    StateVector phased = target;
    phased.apply(gates::zroot(2), 0);
    phased.apply(gates::rz(0.3), 1);
    EXPECT_LT(fidelity(phased, target), 0.99);
    EXPECT_NEAR(fidelity_up_to_local_z(phased, target), 1.0, 1e-12);
    EXPECT_NEAR(fidelity_up_to_local_z(StateVector::basis(3, 0), target), 0.5, 1e-12);
    EXPECT_THROW((void)fidelity_up_to_local_z(StateVector::basis(3, 0),
                                              StateVector(3, std::vector<cplx>(8, 1.0 / std::sqrt(8.0)))),
                 std::invalid_argument);
}

TEST(IdealCircuit, GlobalPhaseComparison) {
    Program p;
    p.register_size = 2;
    p.channel = channel::ChannelSpec::make(channel::Flavor::Symmetric, pi / 8, 1);
    p.steps = {Synth1qStep{0, gates::H(), 1e-9, 1000, false},
               Synth1qStep{1, gates::H() * gates::Z(), 1e-9, 1000, false}};
    const RunLog log = execute(p);
    IdealCircuit c;
    c.gates = {{gates::H(), {0}}, {gates::H() * gates::Z(), {1}}};
    EXPECT_NEAR(compare_to_ideal(log, c), 1.0, 1e-12);
}

TEST(BellDemo, HighFidelity) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const RunLog log = bell_demo(s);
        ASSERT_FALSE(log.aborted);
        ASSERT_TRUE(log.fidelity);
        EXPECT_GE(*log.fidelity, 1.0 - 10 * 0.01);
        expect_invariants(log);
    }
}

TEST(AsymmetricGate, ExactModeHitsNonLocalPart) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const AsymmetricResult r = asymmetric_gate_demo(s, {true, 0.01, 0.01});
        ASSERT_FALSE(r.log.aborted);
        EXPECT_EQ(r.log.directives[0].final_distance, 0.0);
        EXPECT_NEAR(*r.log.directives[0].beta, -pi / 8, 1e-12);
        EXPECT_LT(r.distance, 1e-10);
    }
}

TEST(AsymmetricGate, ApproximateChainWithinTolerance) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const AsymmetricResult r = asymmetric_gate_demo(s);
        ASSERT_FALSE(r.log.aborted);
        EXPECT_LE(r.distance, 0.05);
        expect_invariants(r.log);
    }
}
