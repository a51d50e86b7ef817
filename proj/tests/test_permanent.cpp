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

#include <doctest.h>

#include <cmath>

#include "loqs/error.hpp"
#include "loqs/interferometer.hpp"
#include "loqs/permanent.hpp"
#include "support.hpp"

using namespace loqs;

namespace {

std::vector<int> complement(const std::vector<int>& mask) {
    std::vector<int> out(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) out[i] = 1 - mask[i];
    return out;
}

}  // namespace

TEST_CASE("naive permanent examples") {
    CHECK(std::abs(permanent_naive(ComplexMatrix::Identity(4, 4)) - 1.0) < 1e-15);
    ComplexMatrix a(2, 2);
    a << 1, 2, 3, 4;
    CHECK(std::abs(permanent_naive(a) - 10.0) < 1e-15);
    CHECK(permanent_naive(ComplexMatrix(0, 0)) == Complex(1.0));
    CHECK_THROWS_AS(permanent_naive(ComplexMatrix::Zero(2, 3)), InputError);
    CHECK_THROWS_AS(permanent_naive(ComplexMatrix::Identity(11, 11)), CapacityError);
}

TEST_CASE("Ryser examples") {
    CHECK(std::abs(permanent_ryser(ComplexMatrix::Identity(8, 8)) - 1.0) < 1e-12);
    CHECK(std::abs(permanent_ryser(ComplexMatrix::Ones(3, 3)) - 6.0) < 1e-12);
    CHECK(permanent_ryser(ComplexMatrix(0, 0)) == Complex(1.0));
    CHECK_THROWS_AS(permanent_ryser(ComplexMatrix::Zero(3, 2)), InputError);
    CHECK_THROWS_AS(permanent_ryser(ComplexMatrix::Identity(31, 31)), CapacityError);
    ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
    nan(0, 1) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(permanent_ryser(nan), InputError);
}

TEST_CASE("Ryser equals naive expansion on random matrices") {
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 7;
        const ComplexMatrix a = test::random_gaussian(n, n, 1000 + trial);
        const Complex naive = permanent_naive(a);
        CHECK(std::abs(permanent_ryser(a) - naive) <= 1e-9 * std::max(1.0, std::abs(naive)));
    }
}

TEST_CASE("permanent with repeated rows and columns") {
    CHECK(std::abs(permanent_repeated(ComplexMatrix::Identity(3, 3), FockState{1, 1, 1}, FockState{1, 1, 1}) - 1.0) <
          1e-15);
    ComplexMatrix bs(2, 2);
    bs << 1, 1, 1, -1;
    bs /= std::sqrt(2.0);
    CHECK(std::abs(permanent_repeated(bs, FockState{1, 1}, FockState{1, 1})) < 1e-15);

    const ComplexMatrix b = test::random_gaussian(2, 2, 7);
    ComplexMatrix twice(2, 2);
    twice.row(0) = b.row(0);
    twice.row(1) = b.row(0);
    CHECK(std::abs(permanent_repeated(b, FockState{2, 0}, FockState{1, 1}) - permanent_naive(twice)) < 1e-12);

    // Both rows and columns repeated, checked on the explicit expansion.
    const ComplexMatrix c = test::random_gaussian(3, 2, 8);
    const ComplexMatrix expanded = expand(c, FockState{1, 0, 2}, FockState{2, 1});
    CHECK(expanded.rows() == 3);
    CHECK(std::abs(permanent_repeated(c, FockState{1, 0, 2}, FockState{2, 1}) - permanent_naive(expanded)) < 1e-12);

    CHECK_THROWS_AS(permanent_repeated(b, FockState{2, 0}, FockState{1, 0}), InputError);
    CHECK_THROWS_AS(permanent_repeated(b, FockState{1, 1, 0}, FockState{1, 1}), InputError);
}

TEST_CASE("generalised Laplace expansion") {
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix w = test::random_gaussian(6, 6, 2000 + trial);
        const Complex per = permanent_ryser(w);
        for (int r = 1; r <= 3; ++r) {
            const auto masks = binary_masks(6, r);
            const auto& j = masks[static_cast<std::size_t>(trial) % masks.size()];
            Complex sum = 0.0;
            for (const auto& i : masks) {
                sum += permanent_ryser(select(w, i, j)) * permanent_ryser(select(w, complement(i), complement(j)));
            }
            CHECK(std::abs(sum - per) <= 1e-8 * std::max(1.0, std::abs(per)));
        }
    }
}

TEST_CASE("permanent composition formula") {
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m = test::random_gaussian(3, 4, 3000 + trial);
        const ComplexMatrix n = test::random_gaussian(3, 4, 4000 + trial);
        const ComplexMatrix mn = m * n.transpose();
        const ComplexMatrix nt = n.transpose();
        const auto outer = enumerate_phi(3, 2);
        const auto& u = outer[static_cast<std::size_t>(trial) % outer.size()];
        const auto& v = outer[static_cast<std::size_t>(trial / 6) % outer.size()];
        Complex sum = 0.0;
        for (const auto& s : enumerate_phi(4, 2)) {
            sum += permanent_repeated(m, u, s) * permanent_repeated(nt, s, v) / multi_factorial_real(s);
        }
        const Complex lhs = permanent_repeated(mn, u, v);
        CHECK(std::abs(sum - lhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("Gurvits sample count and simple cases") {
    CHECK(gurvits_sample_count(0.1, 0.05) == static_cast<std::uint64_t>(std::ceil(9.0 * std::log(40.0) / 0.01)));
    CHECK_THROWS_AS(gurvits_sample_count(0.0, 0.05), InputError);
    CHECK_THROWS_AS(gurvits_sample_count(0.1, 1.0), InputError);

    ComplexMatrix c(1, 1);
    c << Complex(0.3, -0.7);
    const auto est = estimate_permanent_gurvits(c, 0.5, 0.1, 1);
    CHECK(std::abs(est.value - c(0, 0)) < 1e-15);

    const auto a = estimate_permanent_gurvits(test::random_gaussian(4, 4, 5), 0.2, 0.1, 42);
    const auto b = estimate_permanent_gurvits(test::random_gaussian(4, 4, 5), 0.2, 0.1, 42);
    CHECK(a.value == b.value);
    CHECK(a.samples_used == gurvits_sample_count(0.2, 0.1));
}

TEST_CASE("Gurvits coverage on the identity and on unitaries") {
    int identity_hits = 0;
    for (int t = 0; t < 100; ++t) {
        const auto est = estimate_permanent_gurvits(ComplexMatrix::Identity(6, 6), 0.05, 0.05, 500 + t);
        CHECK(est.abs_error_bound == doctest::Approx(0.05));
        if (std::abs(est.value - 1.0) <= 0.05) ++identity_hits;
    }
    CHECK(identity_hits >= 95);

    int unitary_hits = 0;
    for (int t = 0; t < 100; ++t) {
        const ComplexMatrix u = random_unitary(8, 700 + t).matrix();
        const auto est = estimate_permanent_gurvits(u, 0.1, 0.05, 900 + t);
        if (std::abs(est.value - permanent_ryser(u)) <= 0.1) ++unitary_hits;
    }
    CHECK(unitary_hits >= 95);
}

TEST_CASE("repeated-rows squared estimator") {
    CHECK(repeated_rows_factor(FockState{2, 0}) == doctest::Approx(1.0));
    CHECK(repeated_rows_factor(FockState{3}) == doctest::Approx(6.0 / std::sqrt(27.0)));
    CHECK(repeated_rows_factor(FockState{1, 1, 1}) == doctest::Approx(1.0));

    const auto id = estimate_permanent_sq_repeated(ComplexMatrix::Identity(3, 3), FockState{1, 1, 1}, 0.1, 0.05, 3);
    CHECK(std::abs(id.value.real() - 1.0) <= id.abs_error_bound);

    int hits = 0;
    for (int t = 0; t < 40; ++t) {
        const ComplexMatrix u = random_unitary(4, 60 + t).matrix();
        const ComplexMatrix b = u.leftCols(2);
        const double exact = std::norm(permanent_ryser(u.topLeftCorner(2, 2)));
        const auto est = estimate_permanent_sq_repeated(b, FockState{1, 1, 0, 0}, 0.1, 0.05, 80 + t);
        CHECK(est.abs_error_bound == doctest::Approx(0.3));
        if (std::abs(est.value.real() - exact) <= est.abs_error_bound) ++hits;
    }
    CHECK(hits >= 38);

    // Repeated row: |Per|^2 of rows (0, 0) of a unitary's first two columns.
    const ComplexMatrix u = random_unitary(3, 11).matrix();
    const ComplexMatrix b = u.leftCols(2);
    const double exact = std::norm(permanent_repeated(b, FockState{2, 0, 0}, FockState{1, 1}));
    const auto est = estimate_permanent_sq_repeated(b, FockState{2, 0, 0}, 0.05, 0.05, 12);
    CHECK(est.abs_error_bound == doctest::Approx(0.15));
    CHECK(std::abs(est.value.real() - exact) <= est.abs_error_bound);

    CHECK_THROWS_AS(estimate_permanent_sq_repeated(2.0 * ComplexMatrix::Identity(2, 2), FockState{1, 1}, 0.1, 0.05, 1),
                    InputError);
    CHECK_THROWS_AS(estimate_permanent_sq_repeated(ComplexMatrix::Identity(2, 2), FockState{2, 1}, 0.1, 0.05, 1),
                    InputError);
}
