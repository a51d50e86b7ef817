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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loqs/fock.hpp"
#include "loqs/interferometer.hpp"
#include "loqs/matrix.hpp"
#include "loqs/sampler.hpp"

namespace loqs {

/// Labelled points x_l in R^d with y_l in {-1, +1}.
struct Dataset {
    std::string name;
    std::vector<std::vector<double>> points;
    std::vector<int> labels;

    std::size_t size() const noexcept { return points.size(); }
    std::size_t dimension() const noexcept { return points.empty() ? 0 : points.front().size(); }
    /// Throws InputError on ragged points, label count mismatch or labels
    /// outside {-1, +1}.
    void validate() const;
};

/// A data point encoded as an adaptive interferometer plus the adaptive
/// outcome p_x its state is post-selected on.
struct FeatureEncoding {
    AdaptiveInterferometer circuit;
    FockState designated_outcome;
};

struct FeatureMapSpec {
    int modes = 0;
    int photons = 0;
    int adaptive_modes = 0;
    /// Pure: equal inputs give equal encodings.
    std::function<FeatureEncoding(std::span<const double>)> encode;
};

struct FeatureMapOptions {
    /// Angle = (scale * x_i) mod 2 pi.
    double scale = 1.0;
    /// Defaults to (1, 0, ..., 0) over the k adaptive modes.
    std::optional<FockState> designated_outcome;
    /// Stage j mixes the first two remaining modes by angle * p_j.
    double feedforward_angle = 0.7853981633974483;
};

/// Angle encoding into a triangular mesh. Components of x fill mesh slots in
/// this order: mixing angles of blocks clear of the first k modes, their
/// phases, output phases of modes >= k, then the remaining slots. Unused slots
/// stay 0, so x = 0 gives the identity as U_0. Throws InputError if d
/// exceeds m^2.
FeatureMapSpec default_feature_map(int dimension, int modes, int photons, int adaptive_modes,
                                   FeatureMapOptions options = {});

/// Normalised overlap of the two post-selected encoded states.
double kernel_entry_exact(const FeatureMapSpec& fm, std::span<const double> x1, std::span<const double> x2);

struct GramMatrix {
    RealMatrix entries;
    /// "exact" or "estimated".
    std::string provenance = "exact";
    /// Trials per entry for estimated matrices.
    std::uint64_t shots = 0;
};

/// Upper triangle computed and mirrored; unit diagonal set after checking
/// every designated outcome is reachable.
GramMatrix gram_exact(const FeatureMapSpec& fm, const Dataset& data, unsigned threads = 1);

/// Every upper-triangle entry from estimate_overlap_pair with `trials`
/// trials and a seed derived from (seed, pair index). Starvation errors name
/// the offending entry.
GramMatrix gram_estimated(const FeatureMapSpec& fm, const Dataset& data, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads = 1,
                          OverlapEstimationOptions options = {});

/// Kernel values kappa(x_l, x) for every training point.
std::vector<double> kernel_row(const FeatureMapSpec& fm, const Dataset& train, std::span<const double> x);

double min_eigenvalue(const RealMatrix& symmetric);

struct SvmOptions {
    double tolerance = 1e-4;
    std::uint64_t max_pair_updates = 100000;
};

struct SvmModel {
    std::vector<double> alphas;
    double bias = 0.0;
    double lambda = 0.0;
    std::vector<int> labels;
    /// Maximal KKT violation at termination.
    double kkt_violation = 0.0;
    std::uint64_t pair_updates = 0;

    /// Box constraint 1 / (2 |T| lambda).
    double box() const;
};

/// Box constraint for a training set of `size` points.
double svm_box(std::size_t size, double lambda);

/// Dual objective sum(alpha) - 1/2 sum alpha_l alpha_l' y_l y_l' K_ll'.
double svm_dual_objective(const RealMatrix& k, std::span<const int> labels, std::span<const double> alphas);

/// Largest violation of the first-order optimality conditions of the dual,
/// max over I_up of -y G minus min over I_low of -y G (clipped at 0).
double svm_kkt_violation(const RealMatrix& k, std::span<const int> labels, std::span<const double> alphas,
                         double box);

/// Projects the Gram matrix onto the PSD cone when its smallest eigenvalue is
/// negative; returns it unchanged otherwise.
RealMatrix clip_negative_eigenvalues(const RealMatrix& k);

/// SMO on the soft-margin dual with maximal-violating-pair selection. All
/// labels equal gives alpha = 0 and bias = that label. Throws
/// ConvergenceError after max_pair_updates updates.
SvmModel svm_train(const GramMatrix& gram, std::span<const int> labels, double lambda, SvmOptions options = {});

/// sum_l alpha_l y_l kappa_l + b.
double svm_decision(const SvmModel& model, std::span<const double> kernel_row);

/// sign of svm_decision with sign(0) = +1.
int svm_predict(const SvmModel& model, std::span<const double> kernel_row);

/// g(s) in {-1, +1} over final outcomes (m - k modes).
using BinningFunction = std::function<int(const FockState&)>;

/// +1 if the first unmeasured mode holds an even number of photons.
BinningFunction parity_binning();

/// Feature map followed by the trainable mesh BS(theta) on the m - k
/// unmeasured modes, with outcomes binned by g.
struct VariationalModel {
    std::vector<double> theta;
    BinningFunction binning;
    FeatureMapSpec feature_map;
};

/// Zero angles for the mesh on m - k modes.
VariationalModel make_variational_model(FeatureMapSpec fm, BinningFunction binning = parity_binning());

struct LabelProbabilities {
    double plus = 0.0;
    double minus = 0.0;
    /// Post-selected shots used; 0 for exact evaluation.
    std::uint64_t shots = 0;
};

/// Exact Pr(y | p_x): the post-selected output distribution of the composed
/// circuit binned by g. Throws UnreachableOutcomeError for Pr_adap[p_x] = 0.
LabelProbabilities explicit_predict_prob_exact(const VariationalModel& vm, std::span<const double> x);

/// Shot estimate T_{y|x} / T_x from runs post-selected on p_x, stopping after
/// `shots` accepted runs. Throws StarvationError after `attempt_budget` runs.
LabelProbabilities explicit_predict_prob(const VariationalModel& vm, std::span<const double> x,
                                         std::uint64_t shots, std::uint64_t seed,
                                         std::uint64_t attempt_budget = kDefaultAttemptBudget);

/// argmax_y Pr(y | p_x), ties to +1.
int explicit_label(const LabelProbabilities& probs);

struct ExplicitTrainConfig {
    enum class Mode { exact, shots };
    Mode mode = Mode::exact;
    int max_iterations = 100;
    /// Stop when the cost moved by less than this over `window` iterations.
    double convergence_tolerance = 1e-4;
    int convergence_window = 10;
    /// Cross-entropy smoothing: -log((Pr + eta) / (1 + 2 eta)).
    double smoothing = 1e-3;
    /// Candidate steps per coordinate in exact mode, evenly spaced over
    /// (-pi, pi].
    int line_search_points = 16;
    std::uint64_t shots = 1000;
    std::uint64_t attempt_budget = kDefaultAttemptBudget;
    double spsa_a = 0.3;
    double spsa_c = 0.2;
    double spsa_alpha = 0.602;
    double spsa_gamma = 0.101;
    std::vector<double> initial_theta;
};

struct ExplicitTrainResult {
    VariationalModel model;
    /// Surrogate cost after every iteration, starting with the initial value.
    std::vector<double> cost_trace;
    std::vector<double> risk_trace;
    double empirical_risk = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Iteration cap reached; `model` holds the best parameters seen.
    bool hit_iteration_cap = false;
};

/// Explicit-method training. Exact mode runs coordinate line searches that
/// accept only improvements, so the cost trace never increases; shot mode
/// runs simultaneous-perturbation stochastic approximation. Stops early once
/// the empirical risk is 0.
ExplicitTrainResult explicit_train(const VariationalModel& vm, const Dataset& data,
                                   const ExplicitTrainConfig& config, std::uint64_t seed);

}  // namespace loqs
