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

#include "loqs/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "loqs/error.hpp"
#include "loqs/rng.hpp"

namespace loqs {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw InputError(std::string(what) + ": matrix must be square, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
    }
}

void require_estimator_params(double epsilon, double delta) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
}

double squared_bound(double epsilon, double scale) {
    // ||z|^2 - |P|^2| <= e s (|P| + |z|) <= e s (2 s + e s), with |P| <= s.
    return epsilon * (2.0 + std::max(epsilon, 1.0)) * scale * scale;
}

thread_local std::uint64_t ryser_calls = 0;

}  // namespace

std::uint64_t ryser_call_count() noexcept { return ryser_calls; }

Complex permanent_naive(const ComplexMatrix& a) {
    require_square(a, "permanent_naive");
    require_finite(a, "permanent_naive");
    const auto n = static_cast<int>(a.rows());
    if (n > kNaivePermanentMaxSize) {
        throw CapacityError("permanent_naive is limited to size " + std::to_string(kNaivePermanentMaxSize));
    }
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        for (int i = 0; i < n; ++i) term *= a(i, sigma[static_cast<std::size_t>(i)]);
        total += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

Complex permanent_ryser(const ComplexMatrix& a) {
    require_square(a, "permanent_ryser");
    require_finite(a, "permanent_ryser");
    ++ryser_calls;
    const auto n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    if (n > kRyserMaxSize) {
        throw CapacityError("permanent_ryser is limited to size " + std::to_string(kRyserMaxSize));
    }
    // Per(A) = (-1)^n sum_{S subset cols} (-1)^{|S|} prod_i sum_{j in S} a_ij.
    std::vector<Complex> row_sums(static_cast<std::size_t>(n), 0.0);
    Complex total = 0.0;
    std::uint64_t gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < subsets; ++g) {
        const int j = std::countr_zero(g);
        gray ^= std::uint64_t{1} << j;
        const bool added = (gray >> j) & 1U;
        for (int i = 0; i < n; ++i) {
            if (added) {
                row_sums[static_cast<std::size_t>(i)] += a(i, j);
            } else {
                row_sums[static_cast<std::size_t>(i)] -= a(i, j);
            }
        }
        Complex prod = 1.0;
        for (const Complex& s : row_sums) prod *= s;
        if (std::popcount(gray) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return (n % 2 == 1) ? -total : total;
}

Complex permanent_repeated(const ComplexMatrix& b, const FockState& row_reps, const FockState& col_reps) {
    if (row_reps.modes() != b.rows() || col_reps.modes() != b.cols()) {
        throw InputError("permanent_repeated: repetition vectors must match the matrix shape");
    }
    if (row_reps.total_photons() != col_reps.total_photons()) {
        throw InputError("permanent_repeated: row and column repetitions must have equal totals");
    }
    return permanent_ryser(expand(b, row_reps, col_reps));
}

std::uint64_t gurvits_sample_count(double epsilon, double delta) {
    require_estimator_params(epsilon, delta);
    const double count = std::ceil(9.0 * std::log(2.0 / delta) / (epsilon * epsilon));
    if (count > 1e15) throw CapacityError("requested precision needs too many samples");
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(count));
}

PermanentEstimate estimate_permanent_gurvits(const ComplexMatrix& a, double epsilon, double delta,
                                             std::uint64_t seed) {
    require_square(a, "estimate_permanent_gurvits");
    require_finite(a, "estimate_permanent_gurvits");
    const std::uint64_t samples = gurvits_sample_count(epsilon, delta);
    const auto n = static_cast<Eigen::Index>(a.rows());
    if (n == 0) return {1.0, 0.0, samples};

    Rng rng(seed);
    Eigen::VectorXd x(n);
    Complex mean = 0.0;
    for (std::uint64_t t = 0; t < samples; ++t) {
        double sign = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            x[j] = (rng() >> 63) ? -1.0 : 1.0;
            sign *= x[j];
        }
        Complex prod = sign;
        for (Eigen::Index i = 0; i < n; ++i) {
            Complex row = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) row += a(i, j) * x[j];
            prod *= row;
        }
        mean += (prod - mean) / static_cast<double>(t + 1);
    }
    const double scale = std::pow(spectral_norm(a), static_cast<double>(n));
    return {mean, epsilon * scale, samples};
}

double repeated_rows_factor(const FockState& row_reps) {
    double factor = 1.0;
    for (int q : row_reps) {
        for (int f = 2; f <= q; ++f) factor *= f;
        if (q > 0) factor /= std::pow(static_cast<double>(q), 0.5 * q);
    }
    return factor;
}

PermanentEstimate estimate_permanent_sq_repeated(const ComplexMatrix& b, const FockState& row_reps,
                                                 double epsilon, double delta, std::uint64_t seed) {
    require_finite(b, "estimate_permanent_sq_repeated");
    if (row_reps.modes() != b.rows()) {
        throw InputError("estimate_permanent_sq_repeated: row_reps length must equal the row count");
    }
    if (row_reps.total_photons() != b.cols()) {
        throw InputError("estimate_permanent_sq_repeated: |row_reps| must equal the column count");
    }
    const double norm = spectral_norm(b);
    if (norm > 1.0 + 1e-9) {
        throw InputError("estimate_permanent_sq_repeated: spectral norm " + std::to_string(norm) +
                         " exceeds 1");
    }
    const std::uint64_t samples = gurvits_sample_count(epsilon, delta);
    const auto n = b.cols();
    const double factor = repeated_rows_factor(row_reps);
    const double scale = factor * std::pow(norm, static_cast<double>(n));
    if (n == 0) return {1.0, 0.0, samples};

    std::vector<Eigen::Index> rows;
    std::vector<int> reps;
    int max_rep = 0;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        const int q = row_reps[static_cast<std::size_t>(i)];
        if (q > 0) {
            rows.push_back(i);
            reps.push_back(q);
            max_rep = std::max(max_rep, q);
        }
    }
    const int order = max_rep + 1;
    std::vector<Complex> roots(static_cast<std::size_t>(order));
    for (int l = 0; l < order; ++l) {
        roots[static_cast<std::size_t>(l)] = std::polar(1.0, 2.0 * std::numbers::pi * l / order);
    }
    std::vector<double> weights(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) weights[r] = std::sqrt(static_cast<double>(reps[r]));

    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, order - 1);
    std::vector<Complex> y(rows.size());
    Complex sum = 0.0;
    for (std::uint64_t t = 0; t < samples; ++t) {
        Complex prefactor = 1.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto l = static_cast<std::size_t>(pick(rng));
            y[r] = roots[l];
            // conj(y)^q = root index -l*q mod order
            const auto inv = static_cast<std::size_t>(
                ((order - static_cast<int>(l)) % order) * reps[r] % order);
            prefactor *= roots[inv];
        }
        Complex prod = prefactor;
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex col = 0.0;
            for (std::size_t r = 0; r < rows.size(); ++r) col += weights[r] * y[r] * b(rows[r], j);
            prod *= col;
        }
        sum += prod;
    }
    const Complex z = factor * sum / static_cast<double>(samples);
    return {std::norm(z), squared_bound(epsilon, scale), samples};
}

}  // namespace loqs
