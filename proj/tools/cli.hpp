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
#include <iosfwd>
#include <string>
#include <vector>

#include "loqs/serialize.hpp"

namespace loqs::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInputError = 2,
    kCapacityError = 3,
    kStarvation = 4,
    kNonConvergence = 5,
};

/// Parses `args` (without the program name), runs the subcommand and writes
/// results to `out` or the --out file. Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Objects one key per line; arrays of arrays or objects one element per
/// line; everything else compact.
void write_json(std::ostream& out, const Json& j);

struct BenchGridPoint {
    int modes;
    int photons;
    int adaptive_modes;
    int measured_photons;
};

/// "small": m in {4, 6}, n in {1, 2, 3}, k in {0..3}. "default": m in
/// {4, 6, 8, 10}, n in {1..4}, k in {0..3}. Both keep r <= n, n <= m, k < m
/// and r = 0 when k = 0.
std::vector<BenchGridPoint> bench_grid(const std::string& name);

struct BenchOptions {
    std::string grid = "default";
    std::uint64_t seed = 0;
    double epsilon = 0.1;
    double delta = 0.05;
    bool timing = false;
};

/// One overlap row and one probability row per grid point.
Json run_bench(const BenchOptions& options);

}  // namespace loqs::cli
