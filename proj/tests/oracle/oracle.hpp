// Copyright 2026 The loqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <span>
#include <vector>

#include "loqs/fock.hpp"
#include "loqs/interferometer.hpp"
#include "loqs/matrix.hpp"
#include "loqs/qml.hpp"

namespace loqs::oracle {

using StateVector = std::map<FockState, Complex>;

/// U acting on |t> by expanding prod_j (sum_i u_ij a_i^dag)^{t_j} over all
/// m^n photon-to-mode assignments.
StateVector evolve_fock(const ComplexMatrix& u, const FockState& t);

/// Lifted matrix [<s|U|t>] over s, t in Phi_{m,n}.
ComplexMatrix lifted_unitary(const ComplexMatrix& u, int photons);

/// Dense state-vector run of an adaptive interferometer: after U_0, mode j
/// is measured, every branch collapses and stage U_j acts on the rest.
/// Keyed by the full adaptive outcome; values are unnormalised states over
/// all m modes.
std::map<FockState, StateVector> simulate_adaptive(const AdaptiveInterferometer& a);

/// Pr_final[s] from the dense simulation.
double dense_prob_final(const AdaptiveInterferometer& a, const FockState& s);

/// <psi_p|phi_q> over the unmeasured modes from two dense simulations.
Complex dense_inner_product(const AdaptiveInterferometer& u, const FockState& p, const AdaptiveInterferometer& v,
                            const FockState& q);

struct DualSolution {
    std::vector<double> alphas;
    double objective = 0.0;
};

/// Projected-gradient ascent on the SVM dual with exact projection onto
/// {0 <= alpha <= box, sum alpha y = 0}.
DualSolution reference_dual(const RealMatrix& k, std::span<const int> labels, double box, int iterations = 200000);

/// Expected value of the overlap-estimation loop given the exact
/// adaptive-outcome probabilities and the normalised overlap.
double algorithm1_expectation(double pr_p, double pr_q, double overlap, bool same_outcome, bool raw);

/// Best training accuracy of the explicit model over a full grid of mesh
/// angles with `steps` points per angle.
double grid_search_accuracy(const VariationalModel& vm, const Dataset& data, int steps);

}  // namespace loqs::oracle
