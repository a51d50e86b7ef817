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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace loqs {

// Exact wide count. Holds binomial(127, 64) and 34!.
__extension__ typedef unsigned __int128 Count;

std::string to_string(Count value);

// Narrows to 64 bits; throws CapacityError if the value does not fit.
std::uint64_t to_u64(Count value);

/// Occupation numbers of a multimode Fock state, one entry per mode.
class FockState {
  public:
    FockState() = default;
    explicit FockState(std::vector<int> occupations);
    FockState(std::initializer_list<int> occupations);

    static FockState vacuum(int modes);
    /// (1^n, 0^(m-n)): single photons in the first n of m modes.
    static FockState input_pattern(int modes, int photons);
    static FockState concat(const FockState& head, const FockState& tail);

    int modes() const noexcept { return static_cast<int>(occ_.size()); }
    int total_photons() const noexcept { return total_; }
    int operator[](std::size_t mode) const { return occ_[mode]; }
    std::span<const int> occupations() const noexcept { return occ_; }
    auto begin() const noexcept { return occ_.begin(); }
    auto end() const noexcept { return occ_.end(); }

    /// First `count` modes.
    FockState head(int count) const;
    /// Modes from `first` to the end.
    FockState tail(int first) const;

    /// "(1,0,2)"
    std::string to_string() const;

    friend bool operator==(const FockState& a, const FockState& b) { return a.occ_ == b.occ_; }
    friend std::strong_ordering operator<=>(const FockState& a, const FockState& b) {
        return a.occ_ <=> b.occ_;
    }

  private:
    std::vector<int> occ_;
    int total_ = 0;
};

/// All states of `m` modes holding `n` photons, in reverse-lexicographic
/// order: (n,0,...,0) first, (0,...,0,n) last.
std::vector<FockState> enumerate_phi(int m, int n);

Count binomial(int a, int b);

/// |Phi_{m,n}| = binomial(m + n - 1, n).
Count count_phi(int m, int n);

/// Number of adaptive outcomes over k measured modes with at most n photons,
/// binomial(n + k, n).
Count count_adaptive_outcomes(int k, int n);

/// s_1! * ... * s_m!; throws CapacityError past 128 bits.
Count multi_factorial(const FockState& s);

/// Floating-point s! for use in probability normalisation.
double multi_factorial_real(const FockState& s);

/// Binary masks of length n with exactly r ones, lexicographically ascending
/// on the tuple (i_1, ..., i_n).
std::vector<std::vector<int>> binary_masks(int n, int r);

}  // namespace loqs
