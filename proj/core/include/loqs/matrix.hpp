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

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "loqs/fock.hpp"

namespace loqs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Throws InputError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, const char* what);

/// max_ij |(A A^dagger - I)_ij|; +inf for non-square input.
double unitarity_defect(const ComplexMatrix& a);

/// Largest singular value by power iteration on A^dagger A, stopping when the
/// relative change of the estimate drops below `tolerance`.
double spectral_norm(const ComplexMatrix& a, double tolerance = 1e-9);

/// Repeats row i of `b` row_reps[i] times and column j col_reps[j] times.
/// A zero repetition count deletes the row or column.
ComplexMatrix expand(const ComplexMatrix& b, const FockState& row_reps, const FockState& col_reps);

/// Repeats rows only; every column is kept once.
ComplexMatrix expand_rows(const ComplexMatrix& b, const FockState& row_reps);

/// Keeps the rows and columns whose mask entry is 1.
ComplexMatrix select(const ComplexMatrix& a, std::span<const int> row_mask, std::span<const int> col_mask);

/// Direct sum 1_j (+) block.
ComplexMatrix embed_lower_right(const ComplexMatrix& block, int leading_identity);

}  // namespace loqs
