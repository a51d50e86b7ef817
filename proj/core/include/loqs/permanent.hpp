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

#include "loqs/fock.hpp"
#include "loqs/matrix.hpp"

namespace loqs {

/// Randomised permanent estimate with its additive error bound, valid with
/// probability at least 1 - delta.
struct PermanentEstimate {
    Complex value;
    double abs_error_bound = 0.0;
    std::uint64_t samples_used = 0;
};

inline constexpr int kNaivePermanentMaxSize = 10;
inline constexpr int kRyserMaxSize = 30;

/// Sum over all permutations of the products a[i][sigma(i)]. O(n! n); test oracle.
Complex permanent_naive(const ComplexMatrix& a);

/// Ryser's inclusion-exclusion formula with Gray-code subset order. O(n 2^n).
Complex permanent_ryser(const ComplexMatrix& a);

/// Number of permanent_ryser calls made on the calling thread.
std::uint64_t ryser_call_count() noexcept;

/// Permanent of `b` with row i repeated row_reps[i] times and column j
/// repeated col_reps[j] times.
Complex permanent_repeated(const ComplexMatrix& b, const FockState& row_reps, const FockState& col_reps);

/// ceil(9 ln(2/delta) / epsilon^2): single-shot estimators averaged per estimate.
std::uint64_t gurvits_sample_count(double epsilon, double delta);

/// Mean of Glynn-type estimators prod_j x_j prod_i (A x)_i over uniform
/// x in {-1,+1}^n. |value - Per(a)| <= epsilon ||a||^n w.p. >= 1 - delta.
PermanentEstimate estimate_permanent_gurvits(const ComplexMatrix& a, double epsilon, double delta,
                                             std::uint64_t seed);

/// q!/sqrt(q^q) = prod_i q_i! / sqrt(q_i^{q_i}), with 0^0 = 1.
double repeated_rows_factor(const FockState& row_reps);

/// Estimate of |Per A|^2 where A repeats row i of the m x n matrix `b`
/// row_reps[i] times. Estimates Per A by averaging
///   (q!/sqrt(q^q)) prod_i conj(y_i)^{q_i} prod_j (sum_i sqrt(q_i) y_i b_ij)
/// over independent uniform (max q_i + 1)-th roots of unity y_i, then squares
/// the modulus. Requires ||b|| <= 1 (up to 1e-9). The reported bound is
/// 3 epsilon (q!^2/q^q) ||b||^{2n} for epsilon <= 1.
PermanentEstimate estimate_permanent_sq_repeated(const ComplexMatrix& b, const FockState& row_reps,
                                                 double epsilon, double delta, std::uint64_t seed);

}  // namespace loqs
