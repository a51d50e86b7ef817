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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "loqs/fock.hpp"
#include "loqs/matrix.hpp"

namespace loqs {

inline constexpr double kUnitarityTolerance = 1e-10;

/// An m-mode passive linear interferometer. The matrix maps input creation
/// operators to output ones: column j is the output amplitude pattern of a
/// photon entering mode j. Immutable after construction.
class Interferometer {
  public:
    /// Throws InputError unless `matrix` is square and unitary to 1e-10.
    explicit Interferometer(ComplexMatrix matrix);

    static Interferometer identity(int modes);

    int modes() const noexcept { return static_cast<int>(u_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return u_; }
    Interferometer adjoint() const;

  private:
    ComplexMatrix u_;
};

/// <s|U|t> = Per(U_{s,t}) / sqrt(s! t!), and exactly 0 when |s| != |t|.
Complex amplitude(const Interferometer& u, const FockState& s, const FockState& t);

/// Parameter count of the triangular mesh: two angles per beamsplitter block,
/// m(m-1)/2 blocks, plus m trailing phases. Equals m^2.
int variational_parameter_count(int modes);

/// Reck-style triangular mesh. Blocks act on adjacent modes (j, j+1); block b
/// reads (theta[2b], theta[2b+1]) = (mixing angle, phase) and applies
///   [[e^{i phi} cos t, -sin t], [e^{i phi} sin t, cos t]].
/// The last m entries are per-mode output phases. All-zero angles give the
/// identity.
Interferometer build_variational(int modes, std::span<const double> theta);

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix
/// with the diagonal of R made real positive. Deterministic given the seed.
Interferometer random_unitary(int modes, std::uint64_t seed);

/// Stage-generator callback: for the prefix (p_1, ..., p_j) returns the
/// (m - j) x (m - j) unitary U_j. Must be pure.
using StageGenerator = std::function<ComplexMatrix(const FockState& prefix)>;

/// An adaptive interferometer over m modes with n input photons (1^n 0^(m-n))
/// and k adaptively measured leading modes. For an outcome p over the k
/// measured modes it resolves to the nonadaptive unitary
///   U^p = [1_k (+) U_k(p_1..p_k)] ... [1_1 (+) U_1(p_1)] U_0.
/// Stages are given either as a lookup table keyed by outcome prefix (missing
/// prefixes fall back to the identity) or as a callback.
class AdaptiveInterferometer {
  public:
    using StageTable = std::map<FockState, ComplexMatrix>;

    /// Nonadaptive (k = 0) wrapper.
    AdaptiveInterferometer(Interferometer base, int photons);
    AdaptiveInterferometer(Interferometer base, int adaptive_modes, int photons, StageTable stages);
    AdaptiveInterferometer(Interferometer base, int adaptive_modes, int photons, StageGenerator generator);

    int modes() const noexcept { return base_.modes(); }
    int adaptive_modes() const noexcept { return k_; }
    int photons() const noexcept { return n_; }
    const Interferometer& base() const noexcept { return base_; }
    FockState input_state() const { return FockState::input_pattern(modes(), n_); }

    /// Stage unitary U_j for the prefix (p_1..p_j), j = prefix.modes() >= 1.
    ComplexMatrix stage(const FockState& prefix) const;

    /// Table covering every prefix of every outcome p in Phi_{k,r}, r <= n.
    /// Entries equal to the identity are omitted.
    StageTable tabulate() const;

    /// Returns a copy whose last stage is followed by `tail` acting on the
    /// m - k unmeasured modes: U'^p = (1_k (+) tail) U^p.
    AdaptiveInterferometer then_apply(const Interferometer& tail) const;

  private:
    Interferometer base_;
    int k_ = 0;
    int n_ = 0;
    StageGenerator generator_;
    std::optional<StageTable> table_;
};

/// U^p for the adaptive outcome p (length k, |p| <= n).
Interferometer compose_adaptive(const AdaptiveInterferometer& a, const FockState& p);

/// Haar-random U_0 and a Haar-random stage for every prefix, each seeded by
/// hashing (seed, prefix).
AdaptiveInterferometer random_adaptive(int modes, int adaptive_modes, int photons, std::uint64_t seed);

}  // namespace loqs
