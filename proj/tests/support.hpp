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

#include "loqs/matrix.hpp"
#include "loqs/rng.hpp"

namespace loqs::test {

/// Entries i.i.d. standard complex Gaussian.
inline ComplexMatrix random_gaussian(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double re = standard_normal(rng);
            a(i, j) = Complex(re, standard_normal(rng));
        }
    }
    return a;
}

inline std::string data_path(const std::string& name) { return std::string(LOQS_DATA_DIR) + "/" + name; }

}  // namespace loqs::test
