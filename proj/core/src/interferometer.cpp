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

#include "loqs/interferometer.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "loqs/error.hpp"
#include "loqs/permanent.hpp"
#include "loqs/rng.hpp"

namespace loqs {

Interferometer::Interferometer(ComplexMatrix matrix) : u_(std::move(matrix)) {
    if (u_.rows() != u_.cols() || u_.rows() < 1) {
        throw InputError("interferometer matrix must be square and non-empty");
    }
    require_finite(u_, "interferometer");
    const double defect = unitarity_defect(u_);
    if (defect > kUnitarityTolerance) {
        throw InputError("interferometer matrix is not unitary (max |UU^dagger - I| = " +
                         std::to_string(defect) + ")");
    }
}

Interferometer Interferometer::identity(int modes) {
    return Interferometer(ComplexMatrix::Identity(modes, modes));
}

Interferometer Interferometer::adjoint() const {
    return Interferometer(u_.adjoint());
}

Complex amplitude(const Interferometer& u, const FockState& s, const FockState& t) {
    if (s.modes() != u.modes() || t.modes() != u.modes()) {
        throw InputError("amplitude: Fock states must have one entry per mode");
    }
    if (s.total_photons() != t.total_photons()) return 0.0;
    const Complex per = permanent_repeated(u.matrix(), s, t);
    return per / std::sqrt(multi_factorial_real(s) * multi_factorial_real(t));
}

int variational_parameter_count(int modes) {
    if (modes < 1) throw InputError("variational mesh needs at least one mode");
    return modes * modes;
}

Interferometer build_variational(int modes, std::span<const double> theta) {
    const int expected = variational_parameter_count(modes);
    if (static_cast<int>(theta.size()) != expected) {
        throw InputError("build_variational: expected " + std::to_string(expected) + " angles for " +
                         std::to_string(modes) + " modes, got " + std::to_string(theta.size()));
    }
    ComplexMatrix u = ComplexMatrix::Identity(modes, modes);
    std::size_t b = 0;
    for (int diag = 1; diag < modes; ++diag) {
        for (int j = diag - 1; j >= 0; --j, ++b) {
            const double t = theta[2 * b];
            const Complex phase = std::polar(1.0, theta[2 * b + 1]);
            const double c = std::cos(t);
            const double s = std::sin(t);
            // Left-multiply by the block on rows (j, j+1).
            for (int col = 0; col < modes; ++col) {
                const Complex top = u(j, col);
                const Complex bottom = u(j + 1, col);
                u(j, col) = phase * c * top - s * bottom;
                u(j + 1, col) = phase * s * top + c * bottom;
            }
        }
    }
    const std::size_t phase_offset = 2 * b;
    for (int i = 0; i < modes; ++i) {
        u.row(i) *= std::polar(1.0, theta[phase_offset + static_cast<std::size_t>(i)]);
    }
    return Interferometer(std::move(u));
}

Interferometer random_unitary(int modes, std::uint64_t seed) {
    if (modes < 1) throw InputError("random_unitary: m must be >= 1");
    Rng rng(seed);
    ComplexMatrix z(modes, modes);
    for (int i = 0; i < modes; ++i) {
        for (int j = 0; j < modes; ++j) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            z(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < modes; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0);
    }
    return Interferometer(std::move(q));
}

namespace {

void check_stage(const ComplexMatrix& u, int modes, const FockState& prefix) {
    const int size = modes - prefix.modes();
    if (u.rows() != size || u.cols() != size) {
        throw InputError("stage for prefix " + prefix.to_string() + " must be " + std::to_string(size) + "x" +
                         std::to_string(size));
    }
    require_finite(u, "stage");
    if (unitarity_defect(u) > kUnitarityTolerance) {
        throw InputError("stage for prefix " + prefix.to_string() + " is not unitary");
    }
}

void check_shape(int modes, int k, int n) {
    if (k < 0 || k > modes) throw InputError("adaptive modes k must satisfy 0 <= k <= m");
    if (n < 0 || n > modes) throw InputError("photon number n must satisfy 0 <= n <= m");
}

}  // namespace

AdaptiveInterferometer::AdaptiveInterferometer(Interferometer base, int photons)
    : AdaptiveInterferometer(std::move(base), 0, photons, StageTable{}) {}

AdaptiveInterferometer::AdaptiveInterferometer(Interferometer base, int adaptive_modes, int photons,
                                               StageTable stages)
    : base_(std::move(base)), k_(adaptive_modes), n_(photons), table_(std::move(stages)) {
    check_shape(modes(), k_, n_);
    for (const auto& [prefix, u] : *table_) {
        if (prefix.modes() < 1 || prefix.modes() > k_) {
            throw InputError("stage prefix " + prefix.to_string() + " must have length between 1 and k");
        }
        check_stage(u, modes(), prefix);
    }
}

AdaptiveInterferometer::AdaptiveInterferometer(Interferometer base, int adaptive_modes, int photons,
                                               StageGenerator generator)
    : base_(std::move(base)), k_(adaptive_modes), n_(photons), generator_(std::move(generator)) {
    check_shape(modes(), k_, n_);
    if (!generator_) throw InputError("stage generator must be callable");
}

ComplexMatrix AdaptiveInterferometer::stage(const FockState& prefix) const {
    const int j = prefix.modes();
    if (j < 1 || j > k_) throw InputError("stage prefix length must be between 1 and k");
    if (table_) {
        auto it = table_->find(prefix);
        if (it == table_->end()) return ComplexMatrix::Identity(modes() - j, modes() - j);
        return it->second;
    }
    ComplexMatrix u = generator_(prefix);
    check_stage(u, modes(), prefix);
    return u;
}

AdaptiveInterferometer::StageTable AdaptiveInterferometer::tabulate() const {
    StageTable out;
    for (int j = 1; j <= k_; ++j) {
        const ComplexMatrix id = ComplexMatrix::Identity(modes() - j, modes() - j);
        for (int r = 0; r <= n_; ++r) {
            for (const FockState& prefix : enumerate_phi(j, r)) {
                ComplexMatrix u = stage(prefix);
                if (u != id) out.emplace(prefix, std::move(u));
            }
        }
    }
    return out;
}

AdaptiveInterferometer AdaptiveInterferometer::then_apply(const Interferometer& tail) const {
    if (tail.modes() != modes() - k_) {
        throw InputError("then_apply: tail must act on the m - k unmeasured modes");
    }
    if (k_ == 0) {
        return AdaptiveInterferometer(Interferometer(tail.matrix() * base_.matrix()), n_);
    }
    auto inner = std::make_shared<const AdaptiveInterferometer>(*this);
    ComplexMatrix tail_matrix = tail.matrix();
    const int k = k_;
    return AdaptiveInterferometer(base_, k_, n_, [inner, tail_matrix, k](const FockState& prefix) {
        ComplexMatrix u = inner->stage(prefix);
        return prefix.modes() == k ? ComplexMatrix(tail_matrix * u) : u;
    });
}

Interferometer compose_adaptive(const AdaptiveInterferometer& a, const FockState& p) {
    const int k = a.adaptive_modes();
    if (p.modes() != k) {
        throw InputError("compose_adaptive: outcome " + p.to_string() + " must have length k = " +
                         std::to_string(k));
    }
    if (p.total_photons() > a.photons()) {
        throw InputError("compose_adaptive: outcome carries more photons than the input");
    }
    ComplexMatrix u = a.base().matrix();
    for (int j = 1; j <= k; ++j) {
        u = embed_lower_right(a.stage(p.head(j)), j) * u;
    }
    return Interferometer(std::move(u));
}

AdaptiveInterferometer random_adaptive(int modes, int adaptive_modes, int photons, std::uint64_t seed) {
    Interferometer base = random_unitary(modes, derive_seed(seed, "u0"));
    if (adaptive_modes == 0) return AdaptiveInterferometer(std::move(base), photons);
    StageGenerator gen = [modes, seed](const FockState& prefix) {
        if (prefix.modes() == modes) return ComplexMatrix(0, 0);
        return random_unitary(modes - prefix.modes(), derive_seed(seed, "stage" + prefix.to_string())).matrix();
    };
    return AdaptiveInterferometer(std::move(base), adaptive_modes, photons, std::move(gen));
}

}  // namespace loqs
