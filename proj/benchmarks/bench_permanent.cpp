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

#include "loqs/interferometer.hpp"
#include "loqs/permanent.hpp"

namespace {

loqs::ComplexMatrix haar(int n) { return loqs::random_unitary(n, 1000 + static_cast<std::uint64_t>(n)).matrix(); }

void BM_Ryser(benchmark::State& state) {
    const auto a = haar(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(loqs::permanent_ryser(a));
}
BENCHMARK(BM_Ryser)->DenseRange(4, 20, 2);

void BM_Naive(benchmark::State& state) {
    const auto a = haar(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(loqs::permanent_naive(a));
}
BENCHMARK(BM_Naive)->DenseRange(4, 9);

// Cost per run grows as 1 / eps^2 at fixed size.
void BM_Gurvits(benchmark::State& state) {
    const auto a = haar(8);
    const double eps = 1.0 / static_cast<double>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(loqs::estimate_permanent_gurvits(a, eps, 0.05, ++seed));
    state.counters["samples"] = static_cast<double>(loqs::gurvits_sample_count(eps, 0.05));
}
BENCHMARK(BM_Gurvits)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

}  // namespace
