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

#include "loqs/fock.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "loqs/error.hpp"

namespace loqs {

namespace {

constexpr Count kCountMax = ~Count{0};

Count checked_mul(Count a, Count b) {
    if (a != 0 && b > kCountMax / a) {
        throw CapacityError("integer overflow beyond 128 bits");
    }
    return a * b;
}

Count gcd(Count a, Count b) {
    while (b != 0) {
        Count t = a % b;
        a = b;
        b = t;
    }
    return a;
}

void enumerate_into(int mode, int remaining, std::vector<int>& current, std::vector<FockState>& out) {
    const int m = static_cast<int>(current.size());
    if (mode == m - 1) {
        current[mode] = remaining;
        out.emplace_back(current);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        current[mode] = v;
        enumerate_into(mode + 1, remaining - v, current, out);
    }
}

}  // namespace

std::string to_string(Count value) {
    if (value == 0) return "0";
    std::string digits;
    while (value != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::uint64_t to_u64(Count value) {
    if (value > std::numeric_limits<std::uint64_t>::max()) {
        throw CapacityError("count " + to_string(value) + " does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(value);
}

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
    for (int v : occ_) {
        if (v < 0) throw InputError("Fock state occupations must be non-negative");
        total_ += v;
    }
}

FockState::FockState(std::initializer_list<int> occupations)
    : FockState(std::vector<int>(occupations)) {}

FockState FockState::vacuum(int modes) {
    if (modes < 0) throw InputError("negative mode count");
    return FockState(std::vector<int>(static_cast<std::size_t>(modes), 0));
}

FockState FockState::input_pattern(int modes, int photons) {
    if (photons < 0 || photons > modes) {
        throw InputError("input pattern needs 0 <= n <= m");
    }
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    std::fill_n(occ.begin(), photons, 1);
    return FockState(std::move(occ));
}

FockState FockState::concat(const FockState& head, const FockState& tail) {
    std::vector<int> occ(head.occ_);
    occ.insert(occ.end(), tail.occ_.begin(), tail.occ_.end());
    return FockState(std::move(occ));
}

FockState FockState::head(int count) const {
    if (count < 0 || count > modes()) throw InputError("head() out of range");
    return FockState(std::vector<int>(occ_.begin(), occ_.begin() + count));
}

FockState FockState::tail(int first) const {
    if (first < 0 || first > modes()) throw InputError("tail() out of range");
    return FockState(std::vector<int>(occ_.begin() + first, occ_.end()));
}

std::string FockState::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < occ_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(occ_[i]);
    }
    return s + ")";
}

std::vector<FockState> enumerate_phi(int m, int n) {
    if (m < 1) throw InputError("enumerate_phi: m must be >= 1");
    if (n < 0) throw InputError("enumerate_phi: n must be >= 0");
    std::vector<FockState> out;
    out.reserve(static_cast<std::size_t>(to_u64(count_phi(m, n))));
    std::vector<int> current(static_cast<std::size_t>(m), 0);
    enumerate_into(0, n, current, out);
    return out;
}

Count binomial(int a, int b) {
    if (a < 0 || b < 0) throw InputError("binomial: negative argument");
    if (b > a) return 0;
    b = std::min(b, a - b);
    Count result = 1;
    for (int i = 0; i < b; ++i) {
        // result * (a - i) is divisible by (i + 1); reduce first so the
        // intermediate product stays in range whenever the result does.
        Count num = static_cast<Count>(a - i);
        Count den = static_cast<Count>(i + 1);
        Count g = gcd(result, den);
        result /= g;
        den /= g;
        num /= den;
        result = checked_mul(result, num);
    }
    return result;
}

Count count_phi(int m, int n) {
    if (m < 1) throw InputError("count_phi: m must be >= 1");
    if (n < 0) throw InputError("count_phi: n must be >= 0");
    return binomial(m + n - 1, n);
}

Count count_adaptive_outcomes(int k, int n) {
    if (k < 1) throw InputError("count_adaptive_outcomes: k must be >= 1");
    if (n < 0) throw InputError("count_adaptive_outcomes: n must be >= 0");
    return binomial(n + k, n);
}

Count multi_factorial(const FockState& s) {
    Count result = 1;
    for (int v : s) {
        for (int f = 2; f <= v; ++f) result = checked_mul(result, static_cast<Count>(f));
    }
    return result;
}

double multi_factorial_real(const FockState& s) {
    double result = 1.0;
    for (int v : s) {
        for (int f = 2; f <= v; ++f) result *= f;
    }
    return result;
}

std::vector<std::vector<int>> binary_masks(int n, int r) {
    if (n < 0 || r < 0 || r > n) throw InputError("binary_masks: need 0 <= r <= n");
    std::vector<std::vector<int>> out;
    std::vector<int> mask(static_cast<std::size_t>(n), 0);
    std::fill(mask.end() - r, mask.end(), 1);
    do {
        out.push_back(mask);
    } while (std::next_permutation(mask.begin(), mask.end()));
    return out;
}

}  // namespace loqs
