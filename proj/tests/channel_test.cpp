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
#include "rus_adqc/channel.hpp"
#include "rus_adqc/random.hpp"

using namespace rus_adqc;
using namespace rus_adqc::channel;

namespace {

constexpr double pi = std::numbers::pi;

const KrausBranch &by_label(const std::vector<KrausBranch> &b, const std::string &label) {
    for (const auto &x : b) {
        if (x.outcome == label) return x;
    }
    throw std::runtime_error("no branch " + label);
}

std::vector<double> alpha_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 50; ++i) g.push_back(i * (pi / 2) / 51.0);
    return g;
}

} // namespace

TEST(Kraus, BareControlledBranchesMatchClosedForms) {
    const auto branches = stinespring_kraus(ChannelSpec::make(Flavor::ControlledBare));
    const SquareOperator i2 = gates::I();
    const SquareOperator sz = gates::zroot(2);
    const SquareOperator k_plus = 0.5 * (i2 + sz);
    const SquareOperator k_minus = 0.5 * (i2 - sz);
    EXPECT_LT(max_abs_diff(by_label(branches, "+i").kraus, k_plus), 1e-12);
    EXPECT_LT(max_abs_diff(by_label(branches, "-i").kraus, k_minus), 1e-12);
    EXPECT_LT(max_abs_diff(k_plus, std::cos(pi / 8) * gates::zroot(4)), 1e-12);
    EXPECT_LT(max_abs_diff(k_minus, cplx{0.0, std::sin(pi / 8)} * gates::Z() * gates::zroot(4)),
              1e-12);
}

TEST(Kraus, MatrixElementAgreesWithExplicitProjection) {
    Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        const SquareOperator u = haar_unitary(i % 2 == 0 ? 4 : 8, rng);
        const StateVector m = haar_state(1, rng);
        const StateVector a = haar_state(1, rng);
        const SquareOperator mine = ancilla_matrix_element(u, m, a);
        const SquareOperator ref = oracle::project(u, {m[0], m[1]}, {a[0], a[1]});
        EXPECT_LT(max_abs_diff(mine, ref), 1e-13);
    }
}

TEST(Kraus, TwoQubitJointAgreesWithSwapConstruction) {
    for (double alpha : {0.1, pi / 8, 1.0}) {
        const ChannelSpec spec = ChannelSpec::standard(alpha, 2);
        EXPECT_LT(max_abs_diff(joint_interaction(spec), oracle::two_qubit_joint(spec.interaction)),
                  1e-14);
    }
}

TEST(Kraus, FullInteractionBranchUnitaries) {
    const auto branches = stinespring_kraus(ChannelSpec::standard());
    ASSERT_EQ(branches.size(), 2u);
    const SquareOperator hz = gates::H() * gates::zroot(4);
    const KrausBranch &likely = by_label(branches, "-i");
    const KrausBranch &rare = by_label(branches, "+i");
    ASSERT_TRUE(likely.unitary && rare.unitary);
    EXPECT_LT(phase_aligned_diff(*likely.unitary, hz), 1e-10);
    EXPECT_LT(phase_aligned_diff(*rare.unitary, gates::X() * hz), 1e-10);
    EXPECT_NEAR(likely.probability, std::pow(std::cos(pi / 8), 2), 1e-12);
    EXPECT_NEAR(rare.probability, std::pow(std::sin(pi / 8), 2), 1e-12);
    EXPECT_NEAR(likely.probability, 0.853553, 5e-7);
    EXPECT_NEAR(rare.probability, 0.146447, 5e-7);
}

TEST(Kraus, KrausIsScaledUnitary) {
    for (double alpha : alpha_grid()) {
        for (std::size_t q : {1u, 2u}) {
            for (const auto &b : stinespring_kraus(ChannelSpec::standard(alpha, q))) {
                ASSERT_TRUE(b.unitary);
                EXPECT_LT(phase_aligned_diff(b.kraus, std::sqrt(b.probability) * *b.unitary), 1e-10);
                EXPECT_LT(unitarity_error(*b.unitary), 1e-10);
            }
        }
    }
}

TEST(Kraus, ZeroStrengthIsDeterministicHadamard) {
    const auto branches = stinespring_kraus(ChannelSpec::standard(0.0));
    const KrausBranch &sure = by_label(branches, "-i");
    const KrausBranch &never = by_label(branches, "+i");
    EXPECT_NEAR(sure.probability, 1.0, 1e-15);
    EXPECT_NEAR(never.probability, 0.0, 1e-15);
    ASSERT_TRUE(sure.unitary);
    EXPECT_FALSE(never.unitary);
    EXPECT_LT(phase_aligned_diff(*sure.unitary, gates::H()), 1e-12);
}

TEST(Kraus, CompletenessOverAlphaGrid) {
    for (double alpha : alpha_grid()) {
        for (std::size_t q : {1u, 2u}) {
            for (Flavor f : {Flavor::Controlled, Flavor::Symmetric}) {
                const auto branches = stinespring_kraus(ChannelSpec::make(f, alpha, q));
                const std::size_t d = q == 1 ? 2 : 4;
                SquareOperator sum(d);
                for (const auto &b : branches) sum = sum + b.kraus.adjoint() * b.kraus;
                EXPECT_LT(max_abs_diff(sum, SquareOperator::identity(d)), 1e-10);
                EXPECT_NEAR(branches[0].probability + branches[1].probability, 1.0, 1e-10);
            }
        }
    }
}

TEST(Kraus, ProbabilityIsStateIndependent) {
    Rng rng(8);
    for (std::size_t q : {1u, 2u}) {
        const auto branches = stinespring_kraus(ChannelSpec::standard(pi / 8, q));
        for (int i = 0; i < 100; ++i) {
            const StateVector psi = haar_state(q, rng);
            for (const auto &b : branches) {
                double p = 0.0;
                for (std::size_t r = 0; r < psi.size(); ++r) {
                    cplx s{0.0, 0.0};
                    for (std::size_t c = 0; c < psi.size(); ++c) s += b.kraus(r, c) * psi[c];
                    p += std::norm(s);
                }
                EXPECT_NEAR(p, b.probability, 1e-10);
            }
        }
    }
}

TEST(GeneralizedFamily, BranchUnitariesAreXjHZroot) {
    for (int n : {1, 2, 3, 8}) {
        const auto branches = generalized_family(n);
        const SquareOperator base = gates::H() * gates::zroot(2.0 * n);
        EXPECT_LT(phase_aligned_diff(*by_label(branches, "-i").unitary, base), 1e-10) << n;
        EXPECT_LT(phase_aligned_diff(*by_label(branches, "+i").unitary, gates::X() * base), 1e-10)
            << n;
    }
}

TEST(GeneralizedFamily, ProbabilitiesAtOneAndLarge) {
    const auto one = generalized_family(1);
    EXPECT_NEAR(one[0].probability, 0.5, 1e-12);
    EXPECT_NEAR(one[1].probability, 0.5, 1e-12);
    // sin^2(pi/256), evaluated independently.
    const double rare = std::pow(std::sin(pi / 256), 2);
    EXPECT_NEAR(by_label(generalized_family(64), "+i").probability, rare, 1e-14);
    EXPECT_LT(rare, 2e-4);
    EXPECT_THROW(generalized_family(0), std::invalid_argument);
}

TEST(TwoQubit, ProbabilitiesFromExplicitConstruction) {
    for (double alpha : {pi / 8, pi / 6, pi / 10}) {
        const ChannelSpec spec = ChannelSpec::standard(alpha, 2);
        const SquareOperator joint = oracle::two_qubit_joint(spec.interaction);
        const SquareOperator k = oracle::project(joint, oracle::plus_i(), oracle::plus_i());
        const double oracle_p = (k.adjoint() * k).trace().real() / 4.0;
        EXPECT_NEAR(by_label(stinespring_kraus(spec), "+i").probability, oracle_p, 1e-12);
    }
    // Frozen oracle values.
    EXPECT_NEAR(by_label(stinespring_kraus(ChannelSpec::standard(pi / 8, 2)), "+i").probability,
                0.75, 1e-12);
    EXPECT_NEAR(by_label(stinespring_kraus(ChannelSpec::standard(pi / 6, 2)), "+i").probability,
                0.625, 1e-12);
    EXPECT_NEAR(by_label(stinespring_kraus(ChannelSpec::standard(pi / 10, 2)), "+i").probability,
                0.8272542485937358, 1e-12);
}

TEST(TwoQubit, BranchIsingAngles) {
    const auto branches = stinespring_kraus(ChannelSpec::standard(pi / 8, 2));
    const IsingDecomposition plus =
        classify_two_qubit_branch(by_label(branches, "+i"), hadamard_correction());
    const IsingDecomposition minus =
        classify_two_qubit_branch(by_label(branches, "-i"), hadamard_correction());

    EXPECT_NEAR(circular_distance_mod_pi(minus.beta, -pi / 4), 0.0, 1e-9);
    // tan(phi) = -sqrt(2) with the branch exponent -(phi + pi/4).
    const double phi = -plus.beta - pi / 4;
    EXPECT_NEAR(std::tan(phi), -std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(plus.beta, 0.1699184547270609, 1e-12);
}

TEST(TwoQubit, GeneralAlphaTangent) {
    for (double alpha : {pi / 6, pi / 10}) {
        const auto branches = stinespring_kraus(ChannelSpec::standard(alpha, 2));
        const double beta =
            classify_two_qubit_branch(by_label(branches, "+i"), hadamard_correction()).beta;
        EXPECT_NEAR(std::tan(-beta - pi / 4), -1.0 / std::cos(2 * alpha), 1e-9) << alpha;
        const double beta_minus =
            classify_two_qubit_branch(by_label(branches, "-i"), hadamard_correction()).beta;
        EXPECT_NEAR(circular_distance_mod_pi(beta_minus, -pi / 4), 0.0, 1e-9);
    }
    const auto b6 = stinespring_kraus(ChannelSpec::standard(pi / 6, 2));
    EXPECT_NEAR(by_label(b6, "+i").classification->beta, 0.32175055439664213, 1e-12);
}

TEST(TwoQubit, SymmetricFlavorHasSameAngles) {
    const auto c = stinespring_kraus(ChannelSpec::standard(pi / 8, 2));
    const auto s = stinespring_kraus(ChannelSpec::make(Flavor::Symmetric, pi / 8, 2));
    for (const char *label : {"+i", "-i"}) {
        EXPECT_NEAR(by_label(s, label).probability, by_label(c, label).probability, 1e-12);
        EXPECT_NEAR(circular_distance_mod_pi(by_label(s, label).classification->beta,
                                             by_label(c, label).classification->beta),
                    0.0, 1e-12);
    }
}

TEST(TwoQubit, UncorrectedBranchIsRejected) {
    const auto branches = stinespring_kraus(ChannelSpec::standard(pi / 8, 2));
    try {
        (void)classify_two_qubit_branch(branches[0], {gates::I(), gates::I()});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::UnremovedLocalPart);
    }
}

TEST(SymmetricFlavor, SingleQubitBranchesAreHAndHZ) {
    for (double alpha : {0.2, pi / 8, 0.7}) {
        const auto branches = stinespring_kraus(ChannelSpec::make(Flavor::Symmetric, alpha));
        EXPECT_LT(phase_aligned_diff(*by_label(branches, "-i").unitary, gates::H()), 1e-10);
        EXPECT_LT(phase_aligned_diff(*by_label(branches, "+i").unitary, gates::H() * gates::Z()),
                  1e-10);
        EXPECT_NEAR(by_label(branches, "+i").probability, std::pow(std::sin(alpha), 2), 1e-12);
    }
}

TEST(BackAction, StandardBasisIsSymmetric) {
    const BackActionReport r = backaction(ChannelSpec::standard());
    ASSERT_EQ(r.induced_states.size(), 2u);
    EXPECT_TRUE(r.symmetric);
    EXPECT_FALSE(r.planes_perpendicular);
}

TEST(BackAction, InducedStatesAreZRotationsOfPrep) {
    // Without the ancilla-side Hadamard the conditional states are
    // R_z(-+2 alpha)|+i> up to phase.
    const double alpha = 0.37;
    const BackActionReport r = backaction(ChannelSpec::make(Flavor::ControlledBare, alpha));
    StateVector a0 = plus_i();
    StateVector a1 = plus_i();
    a0.apply(gates::rz(-2 * alpha), 0);
    a1.apply(gates::rz(2 * alpha), 0);
    EXPECT_NEAR(fidelity(r.induced_states[0], a0), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(r.induced_states[1], a1), 1.0, 1e-12);
}

TEST(BackAction, ComputationalBasisWithFullInteractionIsRejected) {
    const ChannelSpec spec = ChannelSpec::standard().with_computational_basis();
    EXPECT_FALSE(backaction(spec).symmetric);
    try {
        (void)stinespring_kraus(spec);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::NonUnitaryBranch);
        EXPECT_NE(std::string(e.what()).find("non-unitary branch"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("symmetric"), std::string::npos);
    }
}

TEST(BackAction, ComputationalBasisWithoutAncillaHadamardStaysSymmetric) {
    // The conditional states R_z(-+2 alpha)|+i> lie on the equator, so both
    // have overlap 1/sqrt(2) with |0> and |1>. The branches are unitary.
    const ChannelSpec spec = ChannelSpec::make(Flavor::ControlledBare).with_computational_basis();
    EXPECT_TRUE(backaction(spec).symmetric);
    const auto branches = stinespring_kraus(spec);
    EXPECT_NEAR(branches[0].probability, 0.5, 1e-12);
}

TEST(BackAction, TwoQubitPlanesPerpendicular) {
    const BackActionReport r = backaction(ChannelSpec::standard(pi / 8, 2));
    ASSERT_EQ(r.induced_states.size(), 4u);
    EXPECT_TRUE(r.symmetric);
    ASSERT_TRUE(r.planes_perpendicular);
    EXPECT_TRUE(*r.planes_perpendicular);
}

TEST(BackAction, TwoQubitBareInteractionIsRejected) {
    const ChannelSpec spec = ChannelSpec::make(Flavor::ControlledBare, pi / 8, 2);
    const BackActionReport r = backaction(spec);
    ASSERT_TRUE(r.planes_perpendicular);
    EXPECT_FALSE(*r.planes_perpendicular);
    EXPECT_FALSE(r.symmetric);
    EXPECT_THROW((void)stinespring_kraus(spec), Error);
}

TEST(BackAction, SymmetricIffBranchesUnitary) {
    std::vector<ChannelSpec> specs;
    for (double alpha : {0.15, pi / 8, 0.5, 1.1}) {
        for (std::size_t q : {1u, 2u}) {
            for (Flavor f : {Flavor::Controlled, Flavor::Symmetric, Flavor::ControlledBare}) {
                specs.push_back(ChannelSpec::make(f, alpha, q));
                specs.push_back(ChannelSpec::make(f, alpha, q).with_computational_basis());
            }
        }
    }
    for (const auto &spec : specs) {
        bool unitary = true;
        try {
            (void)stinespring_kraus(spec);
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), Errc::NonUnitaryBranch);
            unitary = false;
        }
        BackActionReport r;
        try {
            r = backaction(spec);
        } catch (const std::invalid_argument &) {
            // Entangling two-qubit bare specs have no induced ancilla state.
            continue;
        }
        EXPECT_EQ(r.symmetric, unitary) << spec.alpha << " " << spec.num_register_qubits;
    }
}

TEST(ChannelSpecValidation, RejectsBadInput) {
    EXPECT_THROW(ChannelSpec::standard(std::nan("")), std::invalid_argument);
    EXPECT_THROW(ChannelSpec::standard(pi / 8, 3), std::invalid_argument);
    ChannelSpec s = ChannelSpec::standard();
    s.basis[1] = plus_i();
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = ChannelSpec::standard();
    s.interaction = gates::H();
    EXPECT_THROW(s.validate(), std::invalid_argument);
}
