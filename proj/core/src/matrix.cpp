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

#include "loqs/matrix.hpp"

#include <cmath>
#include <limits>

#include "loqs/error.hpp"

namespace loqs {

void require_finite(const ComplexMatrix& a, const char* what) {
    if (!a.allFinite()) {
        throw InputError(std::string(what) + ": matrix has non-finite entries");
    }
}

double unitarity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    const ComplexMatrix d = a * a.adjoint() - ComplexMatrix::Identity(a.rows(), a.cols());
    return d.size() == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

double spectral_norm(const ComplexMatrix& a, double tolerance) {
    if (a.size() == 0) return 0.0;
    const ComplexMatrix gram = a.adjoint() * a;
    // Deterministic start with components along every right singular vector
    // in the generic case.
    Eigen::VectorXcd v(gram.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = Complex(1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i % 3));
    }
    v.normalize();
    double estimate = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        Eigen::VectorXcd w = gram * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        if (std::abs(norm - estimate) <= tolerance * norm) {
            estimate = norm;
            break;
        }
        estimate = norm;
    }
    return std::sqrt(estimate);
}

ComplexMatrix expand(const ComplexMatrix& b, const FockState& row_reps, const FockState& col_reps) {
    if (row_reps.modes() != b.rows() || col_reps.modes() != b.cols()) {
        throw InputError("expand: repetition vectors must match the matrix shape");
    }
    ComplexMatrix out(row_reps.total_photons(), col_reps.total_photons());
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (int ri = 0; ri < row_reps[static_cast<std::size_t>(i)]; ++ri, ++r) {
            Eigen::Index c = 0;
            for (Eigen::Index j = 0; j < b.cols(); ++j) {
                for (int cj = 0; cj < col_reps[static_cast<std::size_t>(j)]; ++cj, ++c) {
                    out(r, c) = b(i, j);
                }
            }
        }
    }
    return out;
}

ComplexMatrix expand_rows(const ComplexMatrix& b, const FockState& row_reps) {
    return expand(b, row_reps, FockState(std::vector<int>(static_cast<std::size_t>(b.cols()), 1)));
}

ComplexMatrix select(const ComplexMatrix& a, std::span<const int> row_mask, std::span<const int> col_mask) {
    if (static_cast<Eigen::Index>(row_mask.size()) > a.rows() ||
        static_cast<Eigen::Index>(col_mask.size()) > a.cols()) {
        throw InputError("select: mask longer than matrix dimension");
    }
    std::vector<Eigen::Index> rows, cols;
    for (std::size_t i = 0; i < row_mask.size(); ++i) {
        if (row_mask[i]) rows.push_back(static_cast<Eigen::Index>(i));
    }
    for (std::size_t j = 0; j < col_mask.size(); ++j) {
        if (col_mask[j]) cols.push_back(static_cast<Eigen::Index>(j));
    }
    ComplexMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(rows[i], cols[j]);
        }
    }
    return out;
}

ComplexMatrix embed_lower_right(const ComplexMatrix& block, int leading_identity) {
    if (block.rows() != block.cols()) throw InputError("embed_lower_right: block must be square");
    const Eigen::Index size = block.rows() + leading_identity;
    ComplexMatrix out = ComplexMatrix::Identity(size, size);
    out.bottomRightCorner(block.rows(), block.cols()) = block;
    return out;
}

}  // namespace loqs
