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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "loqs/fock.hpp"
#include "loqs/interferometer.hpp"
#include "loqs/matrix.hpp"
#include "loqs/permanent.hpp"

namespace loqs {

/// Probability table keyed by Fock state, in canonical enumeration order.
struct OutputDistribution {
    /// "total" (joint adaptive + final outcomes over all m modes) or "final"
    /// (final outcomes over the m - k unmeasured modes, all sectors r).
    std::string kind;
    int modes = 0;
    int photons = 0;
    int adaptive_modes = 0;
    std::vector<std::pair<FockState, double>> entries;

    double total_probability() const;
    /// Probability of `s`, or 0 if absent.
    double probability(const FockState& s) const;
};

/// Unnormalised post-measurement state |psi_p> over the m - k unmeasured
/// modes, n - |p| photons. Its squared norm is Pr_adap[p].
struct UnnormalizedState {
    FockState adaptive_outcome;
    int modes = 0;
    int photons = 0;
    std::vector<std::pair<FockState, Complex>> amplitudes;

    double squared_norm() const;
};

struct EvalStats {
    std::uint64_t permanent_evals = 0;
};

/// Pr_total[p, s] = |Per(U^p_{(p,s),t})|^2 / (p! s!); 0 when |p| + |s| != n.
double prob_total(const AdaptiveInterferometer& a, const FockState& p, const FockState& s);

/// Pr_final[s] = sum over p in Phi_{k,r} of Pr_total[p, s], r = n - |s|.
double prob_final_exact(const AdaptiveInterferometer& a, const FockState& s);
double prob_final_exact(const AdaptiveInterferometer& a, const FockState& s, EvalStats& stats);

/// Additive estimate of Pr_final[s]: every term |Per|^2 is estimated with the
/// repeated-rows estimator at precision epsilon/3 and confidence
/// delta/|Phi_{k,r}|, so |value - Pr_final[s]| <= epsilon |Phi_{k,r}| with
/// probability >= 1 - delta.
PermanentEstimate prob_final_estimate(const AdaptiveInterferometer& a, const FockState& s, double epsilon,
                                      double delta, std::uint64_t seed);

/// Sample count prob_final_estimate would use for a sector with |Phi_{k,r}|
/// terms.
std::uint64_t prob_final_estimate_samples(std::uint64_t terms, double epsilon, double delta);

/// Amplitudes Per(U^p_{(p,s),t}) / sqrt(p! s!) for every s in Phi_{m-k, n-|p|}.
UnnormalizedState output_state(const AdaptiveInterferometer& a, const FockState& p);

/// sum_s conj(u(s)) v(s); 0 if the states live in different photon sectors.
Complex inner_product_bruteforce(const UnnormalizedState& u, const UnnormalizedState& v);

struct InnerProduct {
    Complex value;
    std::uint64_t permanent_evals = 0;
};

struct InnerProductOptions {
    /// Reuse the rectangular factors of C^{i,j} across mask pairs. Does not
    /// change the number of permanent evaluations.
    bool cache_factors = true;
};

/// <psi_p|psi_q> as a sum over binary masks i, j in {0,1}^n with
/// |i| = |j| = r of Per(A^i) Per(B^j) Per(C^{i,j}) / sqrt(p! q!), where
///   A^i     = U^{p dagger} rows i (of the first n), columns repeated by p,
///   B^j     = V^q rows repeated by q, columns j (of the first n),
///   C^{i,j} = U^{p dagger}[1-i, unmeasured] * V^q[unmeasured, 1-j].
/// Exactly 3 binomial(n, r)^2 permanents are evaluated. Returns 0 with no
/// work when |p| != |q|.
InnerProduct inner_product_lemma1(const AdaptiveInterferometer& u, const FockState& p,
                                  const AdaptiveInterferometer& v, const FockState& q,
                                  InnerProductOptions options = {});

/// Same on already composed m x m unitaries with k measured modes.
InnerProduct inner_product_lemma1(const ComplexMatrix& up, const FockState& p, const ComplexMatrix& vq,
                                  const FockState& q, int photons, InnerProductOptions options = {});

/// Pr_adap[p] = <psi_p|psi_p>, through inner_product_lemma1.
double adaptive_probability(const AdaptiveInterferometer& a, const FockState& p);

/// |<psi_p|psi_q>|^2 / (<psi_p|psi_p> <psi_q|psi_q>) in [0, 1]. Throws
/// UnreachableOutcomeError if either adaptive outcome has probability zero.
double overlap_normalized(const AdaptiveInterferometer& u, const FockState& p, const AdaptiveInterferometer& v,
                          const FockState& q);

/// Joint distribution over all (p, s) in Phi_{m,n}; state = concat(p, s).
OutputDistribution joint_distribution(const AdaptiveInterferometer& a);

/// Distribution of final outcomes s over every sector r = 0..n.
OutputDistribution final_distribution(const AdaptiveInterferometer& a);

/// Clamps a probability to [0, 1] for reporting. Throws NumericalError if the
/// raw value lies outside [-1e-9, 1 + 1e-9].
double checked_probability(double p);

}  // namespace loqs
