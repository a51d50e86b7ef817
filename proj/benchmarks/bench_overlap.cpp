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

#include <benchmark/benchmark.h>

#include <vector>

#include "loqs/interferometer.hpp"
#include "loqs/strong_sim.hpp"

namespace {

loqs::FockState first_outcome(int k, int r) {
    std::vector<int> p(static_cast<std::size_t>(k), 0);
    p[0] = r;
    return loqs::FockState(std::move(p));
}

/// Args: modes m, photons n, adaptive modes k, measured photons r.
void BM_Lemma1(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    const int k = static_cast<int>(state.range(2));
    const int r = static_cast<int>(state.range(3));
    const auto u = loqs::random_adaptive(m, k, n, 11);
    const auto v = loqs::random_adaptive(m, k, n, 12);
    const auto p = first_outcome(k, r);
    std::uint64_t evals = 0;
    for (auto _ : state) {
        const auto ip = loqs::inner_product_lemma1(u, p, v, p);
        evals = ip.permanent_evals;
        benchmark::DoNotOptimize(ip.value);
    }
    state.counters["permanent_evals"] = static_cast<double>(evals);
}
BENCHMARK(BM_Lemma1)
    ->ArgsProduct({{12}, {6}, {1, 2, 3, 4}, {1}})
    ->ArgsProduct({{12}, {4, 6, 8, 10}, {2}, {1}})
    ->ArgsProduct({{12}, {8}, {2}, {0, 1, 2, 3, 4}});

/// Brute-force inner product over the full output space, for comparison.
void BM_Bruteforce(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    const auto u = loqs::random_adaptive(m, 1, n, 11);
    const auto v = loqs::random_adaptive(m, 1, n, 12);
    const auto p = first_outcome(1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(loqs::inner_product_bruteforce(loqs::output_state(u, p), loqs::output_state(v, p)));
    }
}
BENCHMARK(BM_Bruteforce)->ArgsProduct({{6, 8, 10}, {3, 4}});

void BM_ProbFinalExact(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const auto a = loqs::random_adaptive(m, k, 4, 13);
    std::vector<int> s(static_cast<std::size_t>(m - k), 0);
    s[0] = 2;
    s[1] = 1;
    const loqs::FockState target(std::move(s));
    for (auto _ : state) benchmark::DoNotOptimize(loqs::prob_final_exact(a, target));
}
BENCHMARK(BM_ProbFinalExact)->ArgsProduct({{8, 10}, {1, 2, 3}});

}  // namespace
