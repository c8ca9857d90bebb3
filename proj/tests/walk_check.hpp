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

// Matrix-level replay of a beta walk, shared by the unit and acceptance
// tests.

#include <string>

#include "rus_adqc/channel.hpp"
#include "rus_adqc/synth2q.hpp"

namespace walk_check {

using namespace rus_adqc;

struct Result {
    double operator_error = 0.0; ///< phase-aligned max-entry error vs the scalar prediction
    double beta_error = 0.0;     ///< |beta(product) - beta(walk)| mod pi/2
};

/// Multiplies the branch unitaries named by `outcomes` (each preceded by
/// removing H (x) H) and compares the product against
/// e^{i z1 Z} (x) e^{i z2 Z} e^{i beta Z(x)Z}, where beta is the scalar walk
/// and z1, z2 accumulate the branches' own local phases.
inline Result compare(const std::string &outcomes, const synth2q::BetaWalkParams &params,
                      const std::vector<channel::KrausBranch> &branches) {
    const SquareOperator hh = kron(gates::H(), gates::H());
    const channel::KrausBranch &plus = branches[0].outcome == "+i" ? branches[0] : branches[1];
    const channel::KrausBranch &minus = branches[0].outcome == "+i" ? branches[1] : branches[0];
    const SquareOperator dp = hh * *plus.unitary;
    const SquareOperator dm = hh * *minus.unitary;

    SquareOperator product = SquareOperator::identity(4);
    double z1 = 0.0;
    double z2 = 0.0;
    for (char o : outcomes) {
        const bool p = o == '+';
        product = (p ? dp : dm) * product;
        const IsingDecomposition &c = p ? *plus.classification : *minus.classification;
        z1 += c.z1;
        z2 += c.z2;
    }
    const double beta = static_cast<double>(synth2q::replay(outcomes, params));
    const SquareOperator predicted = reconstruct({0.0, z1, z2, beta});

    Result r;
    r.operator_error = phase_aligned_diff(product, predicted);
    const IsingDecomposition d = ising_decompose(product);
    r.beta_error = std::abs(std::remainder(d.beta - beta, kPi / 2));
    return r;
}

} // namespace walk_check
