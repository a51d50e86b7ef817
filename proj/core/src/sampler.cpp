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

#include "loqs/sampler.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "loqs/error.hpp"

namespace loqs {

namespace {

constexpr double kReachabilityThreshold = 1e-12;

// Exact success probabilities of the two trial branches.
struct TrialProbabilities {
    double after_p = 0.0;  // arrival at p, projecting against the q state
    double after_q = 0.0;  // arrival at q, projecting against the p state
};

TrialProbabilities trial_probabilities(const AdaptiveInterferometer& a, const FockState& p,
                                       const AdaptiveInterferometer& b, const FockState& q,
                                       OverlapNormalization mode) {
    const double pp = inner_product_lemma1(a, p, a, p).value.real();
    const double pq = inner_product_lemma1(b, q, b, q).value.real();
    const double ip = std::norm(inner_product_lemma1(a, p, b, q).value);
    TrialProbabilities out;
    // |<chi|psi_target>|^2 with chi the normalised arrival state.
    if (pp > kReachabilityThreshold) out.after_p = ip / pp;
    if (pq > kReachabilityThreshold) out.after_q = ip / pq;
    if (mode == OverlapNormalization::normalized) {
        out.after_p = (pq > kReachabilityThreshold) ? out.after_p / pq : 0.0;
        out.after_q = (pp > kReachabilityThreshold) ? out.after_q / pp : 0.0;
    }
    out.after_p = std::clamp(out.after_p, 0.0, 1.0);
    out.after_q = std::clamp(out.after_q, 0.0, 1.0);
    return out;
}

void check_trials(std::uint64_t trials) {
    if (trials == 0) throw InputError("number of shots must be positive");
}

std::string starvation_message(const FockState& p, const FockState& q, std::uint64_t budget,
                               std::uint64_t done, std::uint64_t wanted) {
    return "outcome starvation: adaptive outcomes " + p.to_string() + " / " + q.to_string() + " gave " +
           std::to_string(done) + " of " + std::to_string(wanted) + " trials within " + std::to_string(budget) +
           " runs";
}

}  // namespace

double hoeffding_halfwidth(std::uint64_t shots, double delta) {
    if (shots == 0) throw InputError("hoeffding_halfwidth: shots must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(shots)));
}

std::uint64_t hoeffding_trials(double epsilon, double delta) {
    if (!(epsilon > 0.0) || !(delta > 0.0) || !(delta < 1.0)) {
        throw InputError("hoeffding_trials: need epsilon > 0 and 0 < delta < 1");
    }
    return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

ShotSampler::ShotSampler(const AdaptiveInterferometer& a, std::uint64_t max_states) {
    const Count states = count_phi(a.modes(), a.photons());
    if (states > max_states) {
        throw CapacityError("instance too large for exact sampling: |Phi_{m,n}| = " + to_string(states) +
                            " exceeds " + std::to_string(max_states));
    }
    joint_ = joint_distribution(a);
    cumulative_.reserve(joint_.entries.size());
    double running = 0.0;
    for (const auto& [state, prob] : joint_.entries) {
        running += prob;
        cumulative_.push_back(running);
    }
}

ShotRecord ShotSampler::draw(Rng& rng) const {
    const double x = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) --it;
    // Never land on a zero-probability entry at the tail.
    auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    while (idx > 0 && joint_.entries[idx].second == 0.0) --idx;
    const FockState& ps = joint_.entries[idx].first;
    const int k = joint_.adaptive_modes;
    return {ps.head(k), ps.tail(k)};
}

std::vector<ShotRecord> sample(const AdaptiveInterferometer& a, std::uint64_t shots, std::uint64_t seed) {
    check_trials(shots);
    const ShotSampler sampler(a);
    Rng rng(seed);
    std::vector<ShotRecord> out;
    out.reserve(shots);
    for (std::uint64_t i = 0; i < shots; ++i) out.push_back(sampler.draw(rng));
    return out;
}

EstimateReport estimate_prob_by_frequency(const AdaptiveInterferometer& a, const FockState& target,
                                          std::uint64_t shots, std::uint64_t seed, double delta) {
    check_trials(shots);
    if (target.modes() != a.modes() - a.adaptive_modes()) {
        throw InputError("target outcome must have length m - k");
    }
    const double halfwidth = hoeffding_halfwidth(shots, delta);
    const ShotSampler sampler(a);
    Rng rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < shots; ++i) {
        if (sampler.draw(rng).final_outcome == target) ++hits;
    }
    return {static_cast<double>(hits) / static_cast<double>(shots), shots, halfwidth};
}

EstimateReport estimate_overlap_algorithm1(const AdaptiveInterferometer& a, const FockState& p,
                                           const FockState& q, std::uint64_t trials, std::uint64_t seed,
                                           double delta, OverlapEstimationOptions options) {
    check_trials(trials);
    const double halfwidth = hoeffding_halfwidth(trials, delta);
    if (p.modes() != a.adaptive_modes() || q.modes() != a.adaptive_modes()) {
        throw InputError("adaptive outcomes must have length k");
    }
    if (p.total_photons() != q.total_photons()) return {0.0, 0, 0.0};

    const TrialProbabilities probs = trial_probabilities(a, p, a, q, options.normalization);
    const ShotSampler sampler(a, options.max_states);
    Rng rng(seed);
    std::uint64_t performed = 0;
    std::uint64_t successes = 0;
    std::uint64_t runs = 0;
    while (performed < trials) {
        if (runs == options.attempt_budget) {
            throw StarvationError(starvation_message(p, q, options.attempt_budget, performed, trials));
        }
        ++runs;
        const FockState r = sampler.draw(rng).adaptive_outcome;
        if (r == p) {
            ++performed;
            if (uniform01(rng) < probs.after_p) ++successes;
        }
        if (r == q) {
            ++performed;
            if (uniform01(rng) < probs.after_q) ++successes;
        }
    }
    // When p == q one run may complete two trials and overshoot T by one.
    return {static_cast<double>(successes) / static_cast<double>(performed), performed, halfwidth};
}

EstimateReport estimate_overlap_pair(const AdaptiveInterferometer& a, const FockState& p,
                                     const AdaptiveInterferometer& b, const FockState& q, std::uint64_t trials,
                                     std::uint64_t seed, double delta, OverlapEstimationOptions options) {
    check_trials(trials);
    const double halfwidth = hoeffding_halfwidth(trials, delta);
    if (a.modes() != b.modes() || a.photons() != b.photons() || a.adaptive_modes() != b.adaptive_modes()) {
        throw InputError("estimate_overlap_pair: interferometers must share m, n and k");
    }
    if (p.modes() != a.adaptive_modes() || q.modes() != b.adaptive_modes()) {
        throw InputError("adaptive outcomes must have length k");
    }
    if (p.total_photons() != q.total_photons()) return {0.0, 0, 0.0};

    const TrialProbabilities probs = trial_probabilities(a, p, b, q, options.normalization);
    const ShotSampler sampler_a(a, options.max_states);
    const ShotSampler sampler_b(b, options.max_states);
    Rng rng(seed);
    std::uint64_t performed = 0;
    std::uint64_t successes = 0;
    std::uint64_t runs = 0;
    while (performed < trials) {
        if (runs + 2 > options.attempt_budget) {
            throw StarvationError(starvation_message(p, q, options.attempt_budget, performed, trials));
        }
        runs += 2;
        if (sampler_a.draw(rng).adaptive_outcome == p) {
            ++performed;
            if (uniform01(rng) < probs.after_p) ++successes;
        }
        if (performed < trials && sampler_b.draw(rng).adaptive_outcome == q) {
            ++performed;
            if (uniform01(rng) < probs.after_q) ++successes;
        }
    }
    return {static_cast<double>(successes) / static_cast<double>(performed), performed, halfwidth};
}

void write_shots_jsonl(std::ostream& out, const std::vector<ShotRecord>& shots) {
    for (const ShotRecord& shot : shots) {
        nlohmann::json line;
        line["p"] = std::vector<int>(shot.adaptive_outcome.begin(), shot.adaptive_outcome.end());
        line["s"] = std::vector<int>(shot.final_outcome.begin(), shot.final_outcome.end());
        out << line.dump() << '\n';
    }
}

}  // namespace loqs
