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

#include "loqs/strong_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "loqs/error.hpp"
#include "loqs/rng.hpp"

namespace loqs {

namespace {

constexpr double kReachabilityThreshold = 1e-12;

// Phi_{modes, photons}, allowing zero modes (only the empty state, and only
// when photons == 0).
std::vector<FockState> sector(int modes, int photons) {
    if (photons < 0) return {};
    if (modes == 0) {
        return photons == 0 ? std::vector<FockState>{FockState{}} : std::vector<FockState>{};
    }
    return enumerate_phi(modes, photons);
}

void check_split(const AdaptiveInterferometer& a, const FockState& p, const FockState& s) {
    if (p.modes() != a.adaptive_modes()) {
        throw InputError("adaptive outcome " + p.to_string() + " must have length k = " +
                         std::to_string(a.adaptive_modes()));
    }
    if (s.modes() != a.modes() - a.adaptive_modes()) {
        throw InputError("final outcome " + s.to_string() + " must have length m - k = " +
                         std::to_string(a.modes() - a.adaptive_modes()));
    }
}

// |Per(U_{(p,s),t})|^2 / (p! s!) for an already composed U^p.
double total_from_composed(const ComplexMatrix& up, const FockState& ps, const FockState& t) {
    const Complex per = permanent_repeated(up, ps, t);
    return std::norm(per) / multi_factorial_real(ps);
}

// Rows of `src` repeated by `row_reps` (a prefix of the rows; remaining rows
// dropped), columns kept where `col_mask` is 1 (a prefix of the columns).
ComplexMatrix repeat_rows_mask_cols(const ComplexMatrix& src, const FockState& row_reps,
                                    std::span<const int> col_mask) {
    std::vector<int> full_rows(static_cast<std::size_t>(src.rows()), 0);
    std::copy(row_reps.begin(), row_reps.end(), full_rows.begin());
    std::vector<int> full_cols(static_cast<std::size_t>(src.cols()), 0);
    std::copy(col_mask.begin(), col_mask.end(), full_cols.begin());
    return expand(src, FockState(std::move(full_rows)), FockState(std::move(full_cols)));
}

std::vector<int> complement(std::span<const int> mask) {
    std::vector<int> out(mask.size());
    std::transform(mask.begin(), mask.end(), out.begin(), [](int b) { return 1 - b; });
    return out;
}

}  // namespace

double OutputDistribution::total_probability() const {
    double total = 0.0;
    for (const auto& [state, prob] : entries) total += prob;
    return total;
}

double OutputDistribution::probability(const FockState& s) const {
    for (const auto& [state, prob] : entries) {
        if (state == s) return prob;
    }
    return 0.0;
}

double UnnormalizedState::squared_norm() const {
    double total = 0.0;
    for (const auto& [state, amp] : amplitudes) total += std::norm(amp);
    return total;
}

double checked_probability(double p) {
    if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
        throw NumericalError("exact probability " + std::to_string(p) + " lies outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

double prob_total(const AdaptiveInterferometer& a, const FockState& p, const FockState& s) {
    check_split(a, p, s);
    if (p.total_photons() + s.total_photons() != a.photons()) return 0.0;
    const Interferometer up = compose_adaptive(a, p);
    return total_from_composed(up.matrix(), FockState::concat(p, s), a.input_state());
}

double prob_final_exact(const AdaptiveInterferometer& a, const FockState& s) {
    EvalStats stats;
    return prob_final_exact(a, s, stats);
}

double prob_final_exact(const AdaptiveInterferometer& a, const FockState& s, EvalStats& stats) {
    const int k = a.adaptive_modes();
    check_split(a, FockState::vacuum(k), s);
    const int r = a.photons() - s.total_photons();
    const FockState t = a.input_state();
    double total = 0.0;
    for (const FockState& p : sector(k, r)) {
        const Interferometer up = compose_adaptive(a, p);
        total += total_from_composed(up.matrix(), FockState::concat(p, s), t);
        ++stats.permanent_evals;
    }
    return total;
}

std::uint64_t prob_final_estimate_samples(std::uint64_t terms, double epsilon, double delta) {
    if (terms == 0) return 0;
    return terms * gurvits_sample_count(epsilon / 3.0, delta / static_cast<double>(terms));
}

PermanentEstimate prob_final_estimate(const AdaptiveInterferometer& a, const FockState& s, double epsilon,
                                      double delta, std::uint64_t seed) {
    const int k = a.adaptive_modes();
    check_split(a, FockState::vacuum(k), s);
    const int n = a.photons();
    const int r = n - s.total_photons();
    const std::vector<FockState> terms = sector(k, r);
    PermanentEstimate out{0.0, 0.0, 0};
    if (terms.empty()) return out;

    const double term_delta = delta / static_cast<double>(terms.size());
    double value = 0.0;
    for (std::size_t idx = 0; idx < terms.size(); ++idx) {
        const FockState& p = terms[idx];
        const Interferometer up = compose_adaptive(a, p);
        const ComplexMatrix columns = up.matrix().leftCols(n);
        const FockState reps = FockState::concat(p, s);
        const PermanentEstimate est =
            estimate_permanent_sq_repeated(columns, reps, epsilon / 3.0, term_delta, derive_seed(seed, idx));
        const double weight = 1.0 / multi_factorial_real(reps);
        value += weight * est.value.real();
        out.abs_error_bound += weight * est.abs_error_bound;
        out.samples_used += est.samples_used;
    }
    out.value = value;
    return out;
}

UnnormalizedState output_state(const AdaptiveInterferometer& a, const FockState& p) {
    const int k = a.adaptive_modes();
    check_split(a, p, FockState::vacuum(a.modes() - k));
    const int rest = a.photons() - p.total_photons();
    if (rest < 0) throw InputError("output_state: adaptive outcome carries more photons than the input");
    const Interferometer up = compose_adaptive(a, p);
    const FockState t = a.input_state();
    UnnormalizedState out{p, a.modes() - k, rest, {}};
    for (const FockState& s : sector(a.modes() - k, rest)) {
        const FockState ps = FockState::concat(p, s);
        const Complex per = permanent_repeated(up.matrix(), ps, t);
        out.amplitudes.emplace_back(s, per / std::sqrt(multi_factorial_real(ps)));
    }
    return out;
}

Complex inner_product_bruteforce(const UnnormalizedState& u, const UnnormalizedState& v) {
    if (u.modes != v.modes) throw InputError("inner_product_bruteforce: states have different mode counts");
    if (u.photons != v.photons) return 0.0;
    std::map<FockState, Complex> lookup(v.amplitudes.begin(), v.amplitudes.end());
    Complex total = 0.0;
    for (const auto& [s, amp] : u.amplitudes) {
        auto it = lookup.find(s);
        if (it != lookup.end()) total += std::conj(amp) * it->second;
    }
    return total;
}

InnerProduct inner_product_lemma1(const ComplexMatrix& up, const FockState& p, const ComplexMatrix& vq,
                                  const FockState& q, int photons, InnerProductOptions options) {
    const int k = p.modes();
    const auto m = static_cast<int>(up.rows());
    if (q.modes() != k) throw InputError("inner_product_lemma1: p and q must have the same length");
    if (vq.rows() != m || up.cols() != m || vq.cols() != m) {
        throw InputError("inner_product_lemma1: interferometers must share the mode count");
    }
    if (photons < 0 || photons > m) throw InputError("inner_product_lemma1: need 0 <= n <= m");
    if (p.total_photons() != q.total_photons()) return {0.0, 0};
    const int n = photons;
    const int r = p.total_photons();
    if (r > n) throw InputError("inner_product_lemma1: adaptive outcome carries more photons than the input");

    const ComplexMatrix ud = up.adjoint();
    const auto masks = binary_masks(n, r);
    const std::vector<int> all_unmeasured = [&] {
        std::vector<int> v(static_cast<std::size_t>(m), 1);
        std::fill_n(v.begin(), k, 0);
        return v;
    }();

    // A^i: rows i of the first n rows of U^{p dagger}, columns repeated by p.
    auto build_a = [&](const std::vector<int>& i) {
        const ComplexMatrix rows = select(ud, i, std::vector<int>(static_cast<std::size_t>(m), 1));
        std::vector<int> col_reps(static_cast<std::size_t>(m), 0);
        std::copy(p.begin(), p.end(), col_reps.begin());
        return expand(rows, FockState(std::vector<int>(static_cast<std::size_t>(r), 1)),
                      FockState(std::move(col_reps)));
    };
    // B^j: rows of V^q repeated by q, columns j of the first n.
    auto build_b = [&](const std::vector<int>& j) { return repeat_rows_mask_cols(vq, q, j); };
    // Rectangular factors of C^{i,j}.
    auto build_ut = [&](const std::vector<int>& i) { return select(ud, complement(i), all_unmeasured); };
    auto build_vt = [&](const std::vector<int>& j) { return select(vq, all_unmeasured, complement(j)); };

    std::vector<ComplexMatrix> ut_cache, vt_cache;
    if (options.cache_factors) {
        for (const auto& i : masks) ut_cache.push_back(build_ut(i));
        for (const auto& j : masks) vt_cache.push_back(build_vt(j));
    }

    InnerProduct out{0.0, 0};
    for (std::size_t ii = 0; ii < masks.size(); ++ii) {
        for (std::size_t jj = 0; jj < masks.size(); ++jj) {
            const ComplexMatrix a_i = build_a(masks[ii]);
            const ComplexMatrix b_j = build_b(masks[jj]);
            const ComplexMatrix c_ij = options.cache_factors
                                           ? ComplexMatrix(ut_cache[ii] * vt_cache[jj])
                                           : ComplexMatrix(build_ut(masks[ii]) * build_vt(masks[jj]));
            out.value += permanent_ryser(a_i) * permanent_ryser(b_j) * permanent_ryser(c_ij);
            out.permanent_evals += 3;
        }
    }
    out.value /= std::sqrt(multi_factorial_real(p) * multi_factorial_real(q));
    return out;
}

InnerProduct inner_product_lemma1(const AdaptiveInterferometer& u, const FockState& p,
                                  const AdaptiveInterferometer& v, const FockState& q,
                                  InnerProductOptions options) {
    if (u.modes() != v.modes() || u.photons() != v.photons() || u.adaptive_modes() != v.adaptive_modes()) {
        throw InputError("inner_product_lemma1: interferometers must share m, n and k");
    }
    if (p.total_photons() != q.total_photons()) return {0.0, 0};
    const Interferometer up = compose_adaptive(u, p);
    const Interferometer vq = compose_adaptive(v, q);
    return inner_product_lemma1(up.matrix(), p, vq.matrix(), q, u.photons(), options);
}

double adaptive_probability(const AdaptiveInterferometer& a, const FockState& p) {
    return checked_probability(inner_product_lemma1(a, p, a, p).value.real());
}

double overlap_normalized(const AdaptiveInterferometer& u, const FockState& p, const AdaptiveInterferometer& v,
                          const FockState& q) {
    if (p.total_photons() != q.total_photons()) return 0.0;
    const double pp = adaptive_probability(u, p);
    const double pq = adaptive_probability(v, q);
    if (pp <= kReachabilityThreshold) {
        throw UnreachableOutcomeError("adaptive outcome " + p.to_string() + " is unreachable");
    }
    if (pq <= kReachabilityThreshold) {
        throw UnreachableOutcomeError("adaptive outcome " + q.to_string() + " is unreachable");
    }
    const Complex ip = inner_product_lemma1(u, p, v, q).value;
    return std::clamp(std::norm(ip) / (pp * pq), 0.0, 1.0);
}

OutputDistribution joint_distribution(const AdaptiveInterferometer& a) {
    const int m = a.modes();
    const int k = a.adaptive_modes();
    const int n = a.photons();
    const FockState t = a.input_state();
    OutputDistribution out{"total", m, n, k, {}};
    std::map<FockState, ComplexMatrix> composed;
    for (const FockState& ps : enumerate_phi(m, n)) {
        const FockState p = ps.head(k);
        auto it = composed.find(p);
        if (it == composed.end()) it = composed.emplace(p, compose_adaptive(a, p).matrix()).first;
        out.entries.emplace_back(ps, checked_probability(total_from_composed(it->second, ps, t)));
    }
    return out;
}

OutputDistribution final_distribution(const AdaptiveInterferometer& a) {
    const int m = a.modes();
    const int k = a.adaptive_modes();
    const int n = a.photons();
    const OutputDistribution joint = joint_distribution(a);
    std::map<FockState, double> marginal;
    for (const auto& [ps, prob] : joint.entries) marginal[ps.tail(k)] += prob;

    OutputDistribution out{"final", m, n, k, {}};
    const int max_r = (k == 0) ? 0 : n;
    for (int r = 0; r <= max_r; ++r) {
        for (const FockState& s : sector(m - k, n - r)) {
            out.entries.emplace_back(s, checked_probability(marginal[s]));
        }
    }
    return out;
}

}  // namespace loqs
