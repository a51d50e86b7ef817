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

#include <chrono>

#include "cli.hpp"
#include "loqs/error.hpp"
#include "loqs/permanent.hpp"
#include "loqs/rng.hpp"
#include "loqs/sampler.hpp"
#include "loqs/strong_sim.hpp"

namespace loqs::cli {

std::vector<BenchGridPoint> bench_grid(const std::string& name) {
    std::vector<int> ms;
    std::vector<int> ns;
    if (name == "small") {
        ms = {4, 6};
        ns = {1, 2, 3};
    } else if (name == "default") {
        ms = {4, 6, 8, 10};
        ns = {1, 2, 3, 4};
    } else {
        throw InputError("unknown grid \"" + name + "\" (expected small or default)");
    }
    std::vector<BenchGridPoint> grid;
    for (int m : ms) {
        for (int n : ns) {
            if (n > m) continue;
            for (int k = 0; k <= 3 && k < m; ++k) {
                for (int r = 0; r <= (k == 0 ? 0 : n); ++r) grid.push_back({m, n, k, r});
            }
        }
    }
    return grid;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Json run_bench(const BenchOptions& options) {
    const auto grid = bench_grid(options.grid);
    Json rows = Json::array();
    const std::uint64_t trials = hoeffding_trials(options.epsilon, options.delta);
    for (const auto& g : grid) {
        const std::string tag = std::to_string(g.modes) + "/" + std::to_string(g.photons) + "/" +
                                std::to_string(g.adaptive_modes) + "/" + std::to_string(g.measured_photons);
        const std::uint64_t seed = derive_seed(options.seed, "bench" + tag);
        const AdaptiveInterferometer u = random_adaptive(g.modes, g.adaptive_modes, g.photons, derive_seed(seed, "u"));
        const AdaptiveInterferometer v = random_adaptive(g.modes, g.adaptive_modes, g.photons, derive_seed(seed, "v"));
        const auto outcomes = g.adaptive_modes == 0 ? std::vector<FockState>{FockState::vacuum(0)}
                                                    : enumerate_phi(g.adaptive_modes, g.measured_photons);
        const FockState& p = outcomes.front();
        const FockState& q = outcomes.back();

        auto start = Clock::now();
        const InnerProduct ip = inner_product_lemma1(u, p, v, q);
        const double overlap_time = seconds_since(start);
        Json overlap{{"kind", "overlap"},
                     {"m", g.modes},
                     {"n", g.photons},
                     {"k", g.adaptive_modes},
                     {"r", g.measured_photons},
                     {"permanent_evals", ip.permanent_evals},
                     {"expected_permanent_evals", 3 * to_u64(binomial(g.photons, g.measured_photons)) *
                                                      to_u64(binomial(g.photons, g.measured_photons))},
                     {"estimator_samples", trials}};
        if (options.timing) overlap["wall_time"] = overlap_time;
        rows.push_back(std::move(overlap));

        const FockState s = enumerate_phi(g.modes - g.adaptive_modes, g.photons - g.measured_photons).front();
        EvalStats stats;
        start = Clock::now();
        prob_final_exact(u, s, stats);
        const double prob_time = seconds_since(start);
        const std::uint64_t terms = outcomes.size();
        Json prob{{"kind", "probability"},
                  {"m", g.modes},
                  {"n", g.photons},
                  {"k", g.adaptive_modes},
                  {"r", g.measured_photons},
                  {"permanent_evals", stats.permanent_evals},
                  {"expected_permanent_evals", terms},
                  {"estimator_samples", prob_final_estimate_samples(terms, options.epsilon, options.delta)}};
        if (options.timing) prob["wall_time"] = prob_time;
        rows.push_back(std::move(prob));
    }
    return Json{{"grid", options.grid},
                {"metadata", Json{{"seed", options.seed}, {"epsilon", options.epsilon}, {"delta", options.delta}}},
                {"rows", std::move(rows)}};
}

}  // namespace loqs::cli
