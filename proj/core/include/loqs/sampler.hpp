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
#include <ostream>
#include <vector>

#include "loqs/fock.hpp"
#include "loqs/interferometer.hpp"
#include "loqs/rng.hpp"
#include "loqs/strong_sim.hpp"

namespace loqs {

/// One run of an adaptive interferometer: the k adaptive outcomes and the
/// m - k final outcomes. |adaptive| + |final| == n.
struct ShotRecord {
    FockState adaptive_outcome;
    FockState final_outcome;

    friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

/// Frequency estimate with its Hoeffding confidence radius at level 1 - delta.
struct EstimateReport {
    double value = 0.0;
    std::uint64_t shots = 0;
    double hoeffding_halfwidth = 0.0;
};

/// sqrt(ln(2/delta) / (2 shots)).
double hoeffding_halfwidth(std::uint64_t shots, double delta);

/// Smallest T with hoeffding_halfwidth(T, delta) <= epsilon.
std::uint64_t hoeffding_trials(double epsilon, double delta);

inline constexpr std::uint64_t kDefaultMaxStates = 1'000'000;
inline constexpr std::uint64_t kDefaultAttemptBudget = 1'000'000;

/// Inverse-CDF sampler over the exact joint distribution of an adaptive
/// interferometer. The table is built once at construction.
class ShotSampler {
  public:
    /// Throws CapacityError if |Phi_{m,n}| exceeds `max_states`.
    explicit ShotSampler(const AdaptiveInterferometer& a, std::uint64_t max_states = kDefaultMaxStates);

    ShotRecord draw(Rng& rng) const;
    const OutputDistribution& distribution() const noexcept { return joint_; }
    int adaptive_modes() const noexcept { return joint_.adaptive_modes; }

  private:
    OutputDistribution joint_;
    std::vector<double> cumulative_;
};

/// `shots` i.i.d. draws from Pr_total. Deterministic given the seed.
std::vector<ShotRecord> sample(const AdaptiveInterferometer& a, std::uint64_t shots, std::uint64_t seed);

/// Fraction of shots whose final outcome equals `target`, marginalising over
/// adaptive outcomes.
EstimateReport estimate_prob_by_frequency(const AdaptiveInterferometer& a, const FockState& target,
                                          std::uint64_t shots, std::uint64_t seed, double delta);

/// Success probability used for the emulated projection onto |t> in the
/// overlap-estimation loop.
enum class OverlapNormalization {
    /// Projection probability |<chi|psi_target>|^2 divided by
    /// Pr_adap[target]: every accepted run succeeds with the normalised
    /// overlap, so the estimator targets that overlap.
    normalized,
    /// Raw projection probability |<chi|psi_target>|^2 with the prepared
    /// target state unnormalised, i.e. overlap * Pr_adap[target].
    raw,
};

struct OverlapEstimationOptions {
    std::uint64_t attempt_budget = kDefaultAttemptBudget;
    OverlapNormalization normalization = OverlapNormalization::normalized;
    std::uint64_t max_states = kDefaultMaxStates;
};

/// Overlap estimation loop on one adaptive interferometer. Each run draws an
/// adaptive outcome r; if r == p, one trial projects U^{q dagger}(|q> (x) |chi>)
/// onto |t>; if r == q, one trial projects U^{p dagger}(|p> (x) |chi>) onto
/// |t> (both when p == q). Runs stop once T trials were made; returns
/// successes over trials made, which exceed T by one when p == q and the
/// last run fires both branches. The projection is a Bernoulli draw with its exact
/// probability. |p| != |q| returns exactly 0 with zero shots.
/// Throws StarvationError if `attempt_budget` runs pass before T trials.
EstimateReport estimate_overlap_algorithm1(const AdaptiveInterferometer& a, const FockState& p,
                                           const FockState& q, std::uint64_t trials, std::uint64_t seed,
                                           double delta, OverlapEstimationOptions options = {});

/// Two-interferometer variant: each run executes `a` then `b`; an outcome p
/// from `a` triggers a trial against the output of `b` at q and vice versa.
EstimateReport estimate_overlap_pair(const AdaptiveInterferometer& a, const FockState& p,
                                     const AdaptiveInterferometer& b, const FockState& q, std::uint64_t trials,
                                     std::uint64_t seed, double delta, OverlapEstimationOptions options = {});

/// JSON-lines shot log: {"p":[...],"s":[...]} per line.
void write_shots_jsonl(std::ostream& out, const std::vector<ShotRecord>& shots);

}  // namespace loqs
