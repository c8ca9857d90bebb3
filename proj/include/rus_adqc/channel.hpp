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
 * @file channel.hpp
 * Measurement-induced Kraus operators K_m = <m| E |a> of a fixed
 * ancilla/register interaction E, ancilla preparation |a> and ancilla
 * measurement basis {|m>}.
 *
 * With two register qubits the ancilla interacts with q1 and then with q2,
 * each time through the full interaction (including its ancilla-side local
 * gate). The joint operator is therefore E_{a,q2} E_{a,q1}.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qcore.hpp"

namespace rus_adqc::channel {

inline StateVector plus_i() {
    const double s = 1.0 / std::numbers::sqrt2;
    return StateVector(1, {s, cplx{0.0, s}});
}

inline StateVector minus_i() {
    const double s = 1.0 / std::numbers::sqrt2;
    return StateVector(1, {s, cplx{0.0, -s}});
}

/// Which local gates surround the diagonal part of the interaction.
enum class Flavor {
    Controlled,     ///< (H (x) H) CPhase(alpha): the default scheme
    Symmetric,      ///< (H (x) H) e^{i alpha Z(x)Z}
    ControlledBare, ///< CPhase(alpha) with no local gates
};

struct ChannelSpec {
    SquareOperator interaction; ///< 4x4 on (ancilla, one register qubit)
    StateVector prep;
    std::array<StateVector, 2> basis;
    std::array<std::string, 2> labels{"+i", "-i"};
    std::size_t num_register_qubits = 1;
    double alpha = kPi / 8;
    Flavor flavor = Flavor::Controlled;

    static ChannelSpec make(Flavor flavor, double alpha = kPi / 8, std::size_t qubits = 1) {
        if (!std::isfinite(alpha)) {
            throw std::invalid_argument("ChannelSpec: non-finite alpha");
        }
        ChannelSpec s;
        switch (flavor) {
        case Flavor::Controlled: s.interaction = gates::interaction(alpha); break;
        case Flavor::Symmetric: s.interaction = gates::symmetric_interaction(alpha); break;
        case Flavor::ControlledBare: s.interaction = gates::cphase(alpha); break;
        }
        s.prep = plus_i();
        s.basis = {plus_i(), minus_i()};
        s.num_register_qubits = qubits;
        s.alpha = alpha;
        s.flavor = flavor;
        s.validate();
        return s;
    }

    static ChannelSpec standard(double alpha = kPi / 8, std::size_t qubits = 1) {
        return make(Flavor::Controlled, alpha, qubits);
    }

    /// Same interaction, ancilla measured in {|0>, |1>}.
    ChannelSpec with_computational_basis() const {
        ChannelSpec s = *this;
        s.basis = {StateVector::basis(1, 0), StateVector::basis(1, 1)};
        s.labels = {"0", "1"};
        return s;
    }

    void validate() const {
        if (interaction.dim() != 4) {
            throw std::invalid_argument("ChannelSpec: interaction must be 4x4");
        }
        if (unitarity_error(interaction) > 1e-12) {
            throw std::invalid_argument("ChannelSpec: interaction is not unitary");
        }
        if (num_register_qubits != 1 && num_register_qubits != 2) {
            throw std::invalid_argument("ChannelSpec: num_register_qubits must be 1 or 2");
        }
        if (prep.n_qubits() != 1 || basis[0].n_qubits() != 1 || basis[1].n_qubits() != 1) {
            throw std::invalid_argument("ChannelSpec: ancilla states must be single-qubit");
        }
        if (std::abs(basis[0].norm() - 1.0) > 1e-12 || std::abs(basis[1].norm() - 1.0) > 1e-12 ||
            std::abs(inner(basis[0], basis[1])) > 1e-12) {
            throw std::invalid_argument("ChannelSpec: measurement basis is not orthonormal");
        }
    }
};

/// Joint operator on (ancilla, register...): E itself for one register
/// qubit, E_{a,q2} E_{a,q1} for two.
inline SquareOperator joint_interaction(const ChannelSpec &spec) {
    if (spec.num_register_qubits == 1) {
        return spec.interaction;
    }
    return embed_two_qubit(spec.interaction, 0, 2, 3) * embed_two_qubit(spec.interaction, 0, 1, 3);
}

/// <m| U |a> as an operator on the register, for a joint operator U with the
/// ancilla as most significant factor.
inline SquareOperator ancilla_matrix_element(const SquareOperator &joint, const StateVector &m,
                                             const StateVector &a) {
    const std::size_t d = joint.dim() / 2;
    SquareOperator k(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t x = 0; x < 2; ++x) {
                for (std::size_t y = 0; y < 2; ++y) {
                    s += std::conj(m[x]) * joint(x * d + i, y * d + j) * a[y];
                }
            }
            k(i, j) = s;
        }
    }
    return k;
}

struct KrausBranch {
    std::string outcome;
    SquareOperator kraus;
    double probability = 0.0;
    /// kraus / sqrt(probability); absent for a zero-probability branch.
    std::optional<SquareOperator> unitary;
    /// Ising phases of the branch after removing H (x) H, two-qubit specs only.
    std::optional<IsingDecomposition> classification;
};

struct BackActionReport {
    /// |a_r> for each register computational state r (two entries for one
    /// register qubit, four |a_jk> for two). Each is the ancilla state
    /// immediately before measurement.
    std::vector<StateVector> induced_states;
    bool symmetric = false;
    std::optional<bool> planes_perpendicular;
};

inline std::array<double, 3> bloch(const StateVector &s) {
    const cplx c = std::conj(s[0]) * s[1];
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s[0]) - std::norm(s[1])};
}

inline BackActionReport backaction(const ChannelSpec &spec) {
    spec.validate();
    const SquareOperator joint = joint_interaction(spec);
    const std::size_t d = joint.dim() / 2;

    BackActionReport report;
    for (std::size_t r = 0; r < d; ++r) {
        // column of joint for input |a>|r>, reshaped ancilla x register
        std::vector<cplx> out(2 * d, cplx{0.0, 0.0});
        for (std::size_t row = 0; row < 2 * d; ++row) {
            out[row] = joint(row, r) * spec.prep[0] + joint(row, d + r) * spec.prep[1];
        }
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t c = 0; c < d; ++c) {
            const double n = std::norm(out[c]) + std::norm(out[d + c]);
            if (n > best_norm) {
                best_norm = n;
                best = c;
            }
        }
        const cplx w0 = out[best];
        const cplx w1 = out[d + best];
        for (std::size_t c = 0; c < d; ++c) {
            if (std::abs(out[c] * w1 - out[d + c] * w0) > 1e-10) {
                throw std::invalid_argument(
                    "backaction: interaction leaves ancilla and register entangled for a "
                    "computational register input; no induced ancilla state exists");
            }
        }
        report.induced_states.push_back(StateVector::normalized(1, {w0, w1}));
    }

    report.symmetric = true;
    for (const auto &m : spec.basis) {
        const double ref = std::abs(inner(m, report.induced_states[0]));
        for (const auto &a : report.induced_states) {
            if (std::abs(std::abs(inner(m, a)) - ref) > 1e-10) {
                report.symmetric = false;
            }
        }
    }

    if (spec.num_register_qubits == 2) {
        // Mirror-plane normals: difference of the Bloch vectors of a pair
        // related by one interaction while the other register bit is fixed.
        const auto &st = report.induced_states;
        auto diff = [](const std::array<double, 3> &p, const std::array<double, 3> &q) {
            return std::array<double, 3>{p[0] - q[0], p[1] - q[1], p[2] - q[2]};
        };
        auto dot = [](const std::array<double, 3> &p, const std::array<double, 3> &q) {
            return p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
        };
        const auto n1 = diff(bloch(st[0]), bloch(st[2])); // j varies, k = 0
        const auto n2 = diff(bloch(st[0]), bloch(st[1])); // k varies, j = 0
        const double l1 = std::sqrt(dot(n1, n1));
        const double l2 = std::sqrt(dot(n2, n2));
        report.planes_perpendicular =
            l1 > 1e-12 && l2 > 1e-12 && std::abs(dot(n1, n2)) / (l1 * l2) < 1e-10;
    }
    return report;
}

/**
 * The two measurement branches of a channel, in basis order. Each branch's
 * K^dagger K is checked to be proportional to the identity (relative
 * tolerance 1e-8) before its probability Tr(K^dagger K)/dim is accepted as
 * state independent.
 */
inline std::vector<KrausBranch> stinespring_kraus(const ChannelSpec &spec) {
    spec.validate();
    const SquareOperator joint = joint_interaction(spec);
    const std::size_t d = joint.dim() / 2;

    std::vector<KrausBranch> branches;
    SquareOperator completeness(d);
    for (std::size_t m = 0; m < 2; ++m) {
        KrausBranch b;
        b.outcome = spec.labels[m];
        b.kraus = ancilla_matrix_element(joint, spec.basis[m], spec.prep);
        const SquareOperator gram = b.kraus.adjoint() * b.kraus;
        completeness = completeness + gram;
        const double c = gram.trace().real() / static_cast<double>(d);
        const double dev = max_abs_diff(gram, cplx{c, 0.0} * SquareOperator::identity(d));
        if (dev > 1e-8 * c + 1e-14) {
            const BackActionReport ba = backaction(spec);
            std::string why;
            if (!ba.symmetric) {
                why = "the measurement basis is not symmetric with respect to the "
                      "back-action induced ancilla states";
            } else if (ba.planes_perpendicular && !*ba.planes_perpendicular) {
                why = "the symmetry planes of the two interactions are not perpendicular";
            } else {
                why = "K^dagger K is not proportional to the identity";
            }
            throw Error(Errc::NonUnitaryBranch,
                        "non-unitary branch (outcome " + b.outcome + "): " + why);
        }
        b.probability = c;
        if (c > 1e-14) {
            b.unitary = (1.0 / std::sqrt(c)) * b.kraus;
            if (d == 4) {
                const SquareOperator hh = kron(gates::H(), gates::H());
                const SquareOperator residual = hh * *b.unitary;
                bool diagonal = true;
                for (std::size_t r = 0; r < 4; ++r) {
                    for (std::size_t col = 0; col < 4; ++col) {
                        if (r != col && std::abs(residual(r, col)) > 1e-10) {
                            diagonal = false;
                        }
                    }
                }
                if (diagonal) {
                    b.classification = ising_decompose(residual);
                }
            }
        }
        branches.push_back(std::move(b));
    }
    if (max_abs_diff(completeness, SquareOperator::identity(d)) > 1e-10) {
        throw std::logic_error("stinespring_kraus: Kraus operators are not complete");
    }
    return branches;
}

/// Branches of (H (x) H) C(Z^{1/n}); their unitaries are X^j H Z^{1/2n}.
inline std::vector<KrausBranch> generalized_family(int n) {
    if (n < 1) {
        throw std::invalid_argument("generalized_family: n must be >= 1");
    }
    return stinespring_kraus(ChannelSpec::standard(kPi / (4.0 * n), 1));
}

/// Removes the local factors (ca (x) cb) from a two-qubit branch and reads
/// the Ising phases of the diagonal residual.
inline IsingDecomposition
classify_two_qubit_branch(const KrausBranch &branch,
                          const std::pair<SquareOperator, SquareOperator> &local_correction) {
    if (!branch.unitary || branch.unitary->dim() != 4) {
        throw std::invalid_argument("classify_two_qubit_branch: expects a realizable two-qubit branch");
    }
    const SquareOperator residual =
        kron(local_correction.first, local_correction.second) * *branch.unitary;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (r != c && std::abs(residual(r, c)) > 1e-9) {
                throw Error(Errc::UnremovedLocalPart,
                            "unremoved local part: residual is not diagonal after correction");
            }
        }
    }
    SquareOperator diag = residual;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (r != c) {
                diag(r, c) = 0.0;
            }
        }
    }
    return ising_decompose(diag);
}

/// (H, H): undoes the register-side Hadamards of every flavour that has them.
inline std::pair<SquareOperator, SquareOperator> hadamard_correction() {
    return {gates::H(), gates::H()};
}

} // namespace rus_adqc::channel
