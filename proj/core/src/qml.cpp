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

#include "loqs/qml.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "loqs/error.hpp"
#include "loqs/rng.hpp"
#include "loqs/strong_sim.hpp"

namespace loqs {

namespace {

constexpr double kReachabilityThreshold = 1e-12;

// Runs body(i) for i in [0, count) on up to `threads` workers. Rethrows the
// exception of the lowest failing index.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::exception_ptr> errors(count);
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<FeatureEncoding> encode_all(const FeatureMapSpec& fm, const Dataset& data) {
    std::vector<FeatureEncoding> out;
    out.reserve(data.size());
    for (const auto& x : data.points) out.push_back(fm.encode(x));
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
}

std::string entry_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

void Dataset::validate() const {
    if (points.size() != labels.size()) throw InputError("dataset: point and label counts differ");
    const std::size_t d = dimension();
    for (std::size_t l = 0; l < points.size(); ++l) {
        if (points[l].size() != d) {
            throw InputError("dataset: point " + std::to_string(l) + " has dimension " +
                             std::to_string(points[l].size()) + ", expected " + std::to_string(d));
        }
        if (labels[l] != 1 && labels[l] != -1) {
            throw InputError("dataset: label of point " + std::to_string(l) + " must be -1 or +1");
        }
    }
}

namespace {

// Slot order for default_feature_map; block indices follow build_variational.
std::vector<std::size_t> encoding_slots(int modes, int adaptive_modes) {
    std::vector<std::size_t> clear_blocks;
    std::vector<std::size_t> touching_blocks;
    std::size_t b = 0;
    for (int diag = 1; diag < modes; ++diag) {
        for (int j = diag - 1; j >= 0; --j, ++b) (j >= adaptive_modes ? clear_blocks : touching_blocks).push_back(b);
    }
    std::vector<std::size_t> slots;
    for (std::size_t c : clear_blocks) slots.push_back(2 * c);
    for (std::size_t c : clear_blocks) slots.push_back(2 * c + 1);
    for (int i = adaptive_modes; i < modes; ++i) slots.push_back(2 * b + static_cast<std::size_t>(i));
    for (std::size_t c : touching_blocks) {
        slots.push_back(2 * c);
        slots.push_back(2 * c + 1);
    }
    for (int i = 0; i < adaptive_modes; ++i) slots.push_back(2 * b + static_cast<std::size_t>(i));
    return slots;
}

}  // namespace

FeatureMapSpec default_feature_map(int dimension, int modes, int photons, int adaptive_modes,
                                   FeatureMapOptions options) {
    const int params = variational_parameter_count(modes);
    if (dimension < 0 || dimension > params) {
        throw InputError("default_feature_map: dimension " + std::to_string(dimension) + " exceeds the " +
                         std::to_string(params) + " mesh angles of " + std::to_string(modes) + " modes");
    }
    if (adaptive_modes < 0 || adaptive_modes > modes) throw InputError("default_feature_map: need 0 <= k <= m");
    if (photons < 0 || photons > modes) throw InputError("default_feature_map: need 0 <= n <= m");
    FockState designated = options.designated_outcome.value_or([&] {
        std::vector<int> p(static_cast<std::size_t>(adaptive_modes), 0);
        if (adaptive_modes > 0 && photons > 0) p[0] = 1;
        return FockState(std::move(p));
    }());
    if (designated.modes() != adaptive_modes || designated.total_photons() > photons) {
        throw InputError("default_feature_map: designated outcome " + designated.to_string() +
                         " must have k entries and at most n photons");
    }

    const std::vector<std::size_t> slots = encoding_slots(modes, adaptive_modes);
    const double scale = options.scale;
    const double ff = options.feedforward_angle;
    StageGenerator feedforward = [modes, ff](const FockState& prefix) {
        const int size = modes - prefix.modes();
        ComplexMatrix u = ComplexMatrix::Identity(size, size);
        if (size >= 2) {
            const double t = ff * prefix[static_cast<std::size_t>(prefix.modes() - 1)];
            u(0, 0) = std::cos(t);
            u(0, 1) = -std::sin(t);
            u(1, 0) = std::sin(t);
            u(1, 1) = std::cos(t);
        }
        return u;
    };

    FeatureMapSpec fm;
    fm.modes = modes;
    fm.photons = photons;
    fm.adaptive_modes = adaptive_modes;
    fm.encode = [=](std::span<const double> x) {
        if (static_cast<int>(x.size()) != dimension) {
            throw InputError("feature map expects " + std::to_string(dimension) + " components, got " +
                             std::to_string(x.size()));
        }
        std::vector<double> angles(static_cast<std::size_t>(params), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double a = std::fmod(scale * x[i], 2.0 * std::numbers::pi);
            if (a < 0.0) a += 2.0 * std::numbers::pi;
            angles[slots[i]] = a;
        }
        Interferometer u0 = build_variational(modes, angles);
        if (adaptive_modes == 0) {
            return FeatureEncoding{AdaptiveInterferometer(std::move(u0), photons), designated};
        }
        return FeatureEncoding{AdaptiveInterferometer(std::move(u0), adaptive_modes, photons, feedforward),
                               designated};
    };
    return fm;
}

double kernel_entry_exact(const FeatureMapSpec& fm, std::span<const double> x1, std::span<const double> x2) {
    const FeatureEncoding a = fm.encode(x1);
    const FeatureEncoding b = fm.encode(x2);
    return overlap_normalized(a.circuit, a.designated_outcome, b.circuit, b.designated_outcome);
}

GramMatrix gram_exact(const FeatureMapSpec& fm, const Dataset& data, unsigned threads) {
    data.validate();
    if (data.size() == 0) throw InputError("gram_exact: dataset is empty");
    const auto enc = encode_all(fm, data);
    const auto n = static_cast<Eigen::Index>(data.size());
    GramMatrix gram{RealMatrix::Zero(n, n), "exact", 0};
    for (std::size_t l = 0; l < enc.size(); ++l) {
        if (adaptive_probability(enc[l].circuit, enc[l].designated_outcome) <= kReachabilityThreshold) {
            throw UnreachableOutcomeError("point " + std::to_string(l) + ": designated outcome " +
                                          enc[l].designated_outcome.to_string() + " is unreachable");
        }
    }
    const auto pairs = upper_pairs(data.size());
    parallel_for(pairs.size(), threads, [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        if (i == j) {
            gram.entries(ii, ii) = 1.0;
            return;
        }
        const double v = overlap_normalized(enc[i].circuit, enc[i].designated_outcome, enc[j].circuit,
                                            enc[j].designated_outcome);
        gram.entries(ii, jj) = v;
        gram.entries(jj, ii) = v;
    });
    return gram;
}

GramMatrix gram_estimated(const FeatureMapSpec& fm, const Dataset& data, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads, OverlapEstimationOptions options) {
    data.validate();
    if (data.size() == 0) throw InputError("gram_estimated: dataset is empty");
    const auto enc = encode_all(fm, data);
    const auto n = static_cast<Eigen::Index>(data.size());
    GramMatrix gram{RealMatrix::Zero(n, n), "estimated", trials};
    const auto pairs = upper_pairs(data.size());
    parallel_for(pairs.size(), threads, [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        double v = 0.0;
        try {
            v = estimate_overlap_pair(enc[i].circuit, enc[i].designated_outcome, enc[j].circuit,
                                      enc[j].designated_outcome, trials, derive_seed(seed, idx), 0.05, options)
                    .value;
        } catch (const StarvationError& e) {
            throw StarvationError("kernel entry " + entry_name(i, j) + ": " + e.what());
        }
        gram.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        gram.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    });
    return gram;
}

std::vector<double> kernel_row(const FeatureMapSpec& fm, const Dataset& train, std::span<const double> x) {
    const FeatureEncoding target = fm.encode(x);
    std::vector<double> row;
    row.reserve(train.size());
    for (const auto& xl : train.points) {
        const FeatureEncoding e = fm.encode(xl);
        row.push_back(overlap_normalized(e.circuit, e.designated_outcome, target.circuit, target.designated_outcome));
    }
    return row;
}

double min_eigenvalue(const RealMatrix& symmetric) {
    if (symmetric.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(symmetric, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------- SVM

double svm_box(std::size_t size, double lambda) {
    if (!(lambda > 0.0)) throw InputError("lambda must be positive");
    if (size == 0) throw InputError("training set is empty");
    return 1.0 / (2.0 * static_cast<double>(size) * lambda);
}

double SvmModel::box() const { return svm_box(alphas.size(), lambda); }

double svm_dual_objective(const RealMatrix& k, std::span<const int> labels, std::span<const double> alphas) {
    const auto n = static_cast<Eigen::Index>(alphas.size());
    double linear = 0.0;
    double quad = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        linear += alphas[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            quad += alphas[static_cast<std::size_t>(i)] * alphas[static_cast<std::size_t>(j)] *
                    labels[static_cast<std::size_t>(i)] * labels[static_cast<std::size_t>(j)] * k(i, j);
        }
    }
    return linear - 0.5 * quad;
}

namespace {

bool in_up(int y, double a, double box) { return (y == 1 && a < box) || (y == -1 && a > 0.0); }
bool in_low(int y, double a, double box) { return (y == 1 && a > 0.0) || (y == -1 && a < box); }

// G = Q alpha - e with Q_ij = y_i y_j K_ij.
Eigen::VectorXd dual_gradient(const RealMatrix& k, std::span<const int> y, std::span<const double> alphas) {
    const auto n = static_cast<Eigen::Index>(alphas.size());
    Eigen::VectorXd g = Eigen::VectorXd::Constant(n, -1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g[i] += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * k(i, j) *
                    alphas[static_cast<std::size_t>(j)];
        }
    }
    return g;
}

}  // namespace

double svm_kkt_violation(const RealMatrix& k, std::span<const int> labels, std::span<const double> alphas,
                         double box) {
    const Eigen::VectorXd g = dual_gradient(k, labels, alphas);
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double v = -labels[i] * g[static_cast<Eigen::Index>(i)];
        if (in_up(labels[i], alphas[i], box)) up = std::max(up, v);
        if (in_low(labels[i], alphas[i], box)) low = std::min(low, v);
    }
    if (!std::isfinite(up) || !std::isfinite(low)) return 0.0;
    return std::max(0.0, up - low);
}

RealMatrix clip_negative_eigenvalues(const RealMatrix& k) {
    if (k.size() == 0) return k;
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(k);
    if (solver.eigenvalues().minCoeff() >= 0.0) return k;
    const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
    RealMatrix out = solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().transpose();
    return 0.5 * (out + out.transpose());
}

SvmModel svm_train(const GramMatrix& gram, std::span<const int> labels, double lambda, SvmOptions options) {
    const auto n = static_cast<std::size_t>(gram.entries.rows());
    if (gram.entries.cols() != gram.entries.rows()) throw InputError("svm_train: Gram matrix must be square");
    if (labels.size() != n) throw InputError("svm_train: label count must match the Gram matrix size");
    for (int y : labels) {
        if (y != 1 && y != -1) throw InputError("svm_train: labels must be -1 or +1");
    }
    const double box = svm_box(n, lambda);
    const RealMatrix k = clip_negative_eigenvalues(gram.entries);

    SvmModel model;
    model.alphas.assign(n, 0.0);
    model.lambda = lambda;
    model.labels.assign(labels.begin(), labels.end());

    const bool one_class = std::all_of(labels.begin(), labels.end(), [&](int y) { return y == labels[0]; });
    if (one_class) {
        // sum alpha_l y_l = 0 with equal signs forces alpha = 0.
        model.bias = labels[0];
        return model;
    }

    std::vector<double>& a = model.alphas;
    const std::span<const int> y = labels;
    Eigen::VectorXd g = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), -1.0);
    auto q = [&](std::size_t i, std::size_t j) {
        return y[i] * y[j] * k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };
    constexpr double kTau = 1e-12;

    while (true) {
        // Maximal violating pair.
        double up = -std::numeric_limits<double>::infinity();
        double low = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * g[static_cast<Eigen::Index>(t)];
            if (in_up(y[t], a[t], box) && v > up) {
                up = v;
                i = t;
            }
            if (in_low(y[t], a[t], box) && v < low) {
                low = v;
                j = t;
            }
        }
        const double violation = (i == n || j == n) ? 0.0 : up - low;
        model.kkt_violation = std::max(0.0, violation);
        if (violation <= options.tolerance) break;
        if (model.pair_updates >= options.max_pair_updates) {
            throw ConvergenceError("SMO did not converge within " + std::to_string(options.max_pair_updates) +
                                       " pair updates (KKT violation " + std::to_string(violation) + ")",
                                   violation);
        }
        ++model.pair_updates;

        const double old_ai = a[i];
        const double old_aj = a[j];
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        if (y[i] != y[j]) {
            double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
            if (quad <= 0.0) quad = kTau;
            const double delta = (-g[ii] - g[jj]) / quad;
            const double diff = a[i] - a[j];
            a[i] += delta;
            a[j] += delta;
            if (diff > 0.0) {
                if (a[j] < 0.0) {
                    a[j] = 0.0;
                    a[i] = diff;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = -diff;
            }
            if (diff > 0.0) {
                if (a[i] > box) {
                    a[i] = box;
                    a[j] = box - diff;
                }
            } else if (a[j] > box) {
                a[j] = box;
                a[i] = box + diff;
            }
        } else {
            double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
            if (quad <= 0.0) quad = kTau;
            const double delta = (g[ii] - g[jj]) / quad;
            const double sum = a[i] + a[j];
            a[i] -= delta;
            a[j] += delta;
            if (sum > box) {
                if (a[i] > box) {
                    a[i] = box;
                    a[j] = sum - box;
                }
            } else if (a[j] < 0.0) {
                a[j] = 0.0;
                a[i] = sum;
            }
            if (sum > box) {
                if (a[j] > box) {
                    a[j] = box;
                    a[i] = sum - box;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = sum;
            }
        }
        const double dai = a[i] - old_ai;
        const double daj = a[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            g[static_cast<Eigen::Index>(t)] += q(t, i) * dai + q(t, j) * daj;
        }
    }

    // Bias from free multipliers, or the midpoint of the feasible interval.
    double free_sum = 0.0;
    int free_count = 0;
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * g[static_cast<Eigen::Index>(t)];
        if (a[t] >= box) {
            if (y[t] == -1) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else if (a[t] <= 0.0) {
            if (y[t] == 1) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else {
            free_sum += yg;
            ++free_count;
        }
    }
    const double rho = free_count > 0 ? free_sum / free_count : 0.5 * (ub + lb);
    model.bias = -rho;
    return model;
}

double svm_decision(const SvmModel& model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.alphas.size()) {
        throw InputError("svm_decision: kernel row has " + std::to_string(kernel_row.size()) + " entries, model has " +
                         std::to_string(model.alphas.size()));
    }
    double f = model.bias;
    for (std::size_t l = 0; l < kernel_row.size(); ++l) f += model.alphas[l] * model.labels[l] * kernel_row[l];
    return f;
}

int svm_predict(const SvmModel& model, std::span<const double> kernel_row) {
    return svm_decision(model, kernel_row) >= 0.0 ? 1 : -1;
}

// ---------------------------------------------------------------- explicit method

BinningFunction parity_binning() {
    return [](const FockState& s) {
        if (s.modes() == 0) return 1;
        return (s[0] % 2 == 0) ? 1 : -1;
    };
}

VariationalModel make_variational_model(FeatureMapSpec fm, BinningFunction binning) {
    const int free_modes = fm.modes - fm.adaptive_modes;
    if (free_modes < 1) throw InputError("variational model needs at least one unmeasured mode");
    VariationalModel vm;
    vm.theta.assign(static_cast<std::size_t>(variational_parameter_count(free_modes)), 0.0);
    vm.binning = std::move(binning);
    vm.feature_map = std::move(fm);
    return vm;
}

namespace {

struct PreparedPoint {
    AdaptiveInterferometer circuit;
    FockState designated;
};

PreparedPoint prepare(const VariationalModel& vm, std::span<const double> x) {
    const int free_modes = vm.feature_map.modes - vm.feature_map.adaptive_modes;
    FeatureEncoding enc = vm.feature_map.encode(x);
    return {enc.circuit.then_apply(build_variational(free_modes, vm.theta)), enc.designated_outcome};
}

}  // namespace

LabelProbabilities explicit_predict_prob_exact(const VariationalModel& vm, std::span<const double> x) {
    const PreparedPoint pt = prepare(vm, x);
    const UnnormalizedState psi = output_state(pt.circuit, pt.designated);
    const double norm = psi.squared_norm();
    if (norm <= kReachabilityThreshold) {
        throw UnreachableOutcomeError("designated outcome " + pt.designated.to_string() + " is unreachable");
    }
    double plus = 0.0;
    for (const auto& [s, amp] : psi.amplitudes) {
        if (vm.binning(s) == 1) plus += std::norm(amp);
    }
    plus = std::clamp(plus / norm, 0.0, 1.0);
    return {plus, 1.0 - plus, 0};
}

LabelProbabilities explicit_predict_prob(const VariationalModel& vm, std::span<const double> x,
                                         std::uint64_t shots, std::uint64_t seed, std::uint64_t attempt_budget) {
    if (shots == 0) throw InputError("shots must be positive");
    const PreparedPoint pt = prepare(vm, x);
    const ShotSampler sampler(pt.circuit);
    Rng rng(seed);
    std::uint64_t accepted = 0;
    std::uint64_t plus = 0;
    std::uint64_t runs = 0;
    while (accepted < shots) {
        if (runs == attempt_budget) {
            throw StarvationError("outcome starvation: designated outcome " + pt.designated.to_string() +
                                  " accepted " + std::to_string(accepted) + " of " + std::to_string(shots) +
                                  " runs within " + std::to_string(attempt_budget) + " attempts");
        }
        ++runs;
        const ShotRecord shot = sampler.draw(rng);
        if (shot.adaptive_outcome != pt.designated) continue;
        ++accepted;
        if (vm.binning(shot.final_outcome) == 1) ++plus;
    }
    const double p = static_cast<double>(plus) / static_cast<double>(shots);
    return {p, 1.0 - p, shots};
}

int explicit_label(const LabelProbabilities& probs) { return probs.plus >= probs.minus ? 1 : -1; }

namespace {

struct CostValue {
    double cost = 0.0;
    double risk = 0.0;
};

CostValue evaluate_cost(const VariationalModel& vm, const Dataset& data, const ExplicitTrainConfig& config,
                        std::uint64_t seed) {
    CostValue out;
    const double eta = config.smoothing;
    for (std::size_t l = 0; l < data.size(); ++l) {
        const LabelProbabilities probs =
            config.mode == ExplicitTrainConfig::Mode::exact
                ? explicit_predict_prob_exact(vm, data.points[l])
                : explicit_predict_prob(vm, data.points[l], config.shots, derive_seed(seed, l),
                                        config.attempt_budget);
        const double correct = data.labels[l] == 1 ? probs.plus : probs.minus;
        out.cost -= std::log((correct + eta) / (1.0 + 2.0 * eta));
        if (explicit_label(probs) != data.labels[l]) out.risk += 1.0;
    }
    out.cost /= static_cast<double>(data.size());
    out.risk /= static_cast<double>(data.size());
    return out;
}

bool window_converged(const std::vector<double>& trace, const ExplicitTrainConfig& config) {
    const auto w = static_cast<std::size_t>(std::max(1, config.convergence_window));
    if (trace.size() <= w) return false;
    return std::abs(trace.back() - trace[trace.size() - 1 - w]) < config.convergence_tolerance;
}

}  // namespace

ExplicitTrainResult explicit_train(const VariationalModel& vm, const Dataset& data,
                                   const ExplicitTrainConfig& config, std::uint64_t seed) {
    data.validate();
    if (data.size() == 0) throw InputError("explicit_train: dataset is empty");
    ExplicitTrainResult result{vm, {}, {}, 0.0, 0, false, false};
    VariationalModel& model = result.model;
    if (!config.initial_theta.empty()) {
        if (config.initial_theta.size() != model.theta.size()) {
            throw InputError("explicit_train: initial theta has the wrong length");
        }
        model.theta = config.initial_theta;
    }

    const bool exact = config.mode == ExplicitTrainConfig::Mode::exact;
    Rng rng(derive_seed(seed, "spsa"));
    CostValue current = evaluate_cost(model, data, config, derive_seed(seed, std::uint64_t{0}));
    result.cost_trace.push_back(current.cost);
    result.risk_trace.push_back(current.risk);
    std::vector<double> best_theta = model.theta;
    CostValue best = current;

    for (int it = 1; it <= config.max_iterations; ++it) {
        if (best.risk == 0.0) {
            result.converged = true;
            break;
        }
        if (window_converged(result.cost_trace, config)) {
            result.converged = true;
            break;
        }
        result.iterations = it;
        if (exact) {
            for (std::size_t c = 0; c < model.theta.size(); ++c) {
                const double origin = model.theta[c];
                double best_value = origin;
                for (int step = 1; step <= config.line_search_points; ++step) {
                    const double offset =
                        -std::numbers::pi + 2.0 * std::numbers::pi * step / config.line_search_points;
                    if (offset == 0.0) continue;
                    model.theta[c] = origin + offset;
                    const CostValue trial = evaluate_cost(model, data, config, 0);
                    if (trial.cost < current.cost) {
                        current = trial;
                        best_value = model.theta[c];
                    }
                }
                model.theta[c] = best_value;
            }
        } else {
            const double ak = config.spsa_a / std::pow(static_cast<double>(it), config.spsa_alpha);
            const double ck = config.spsa_c / std::pow(static_cast<double>(it), config.spsa_gamma);
            std::vector<double> delta(model.theta.size());
            for (double& d : delta) d = (rng() >> 63) ? 1.0 : -1.0;
            VariationalModel plus = model;
            VariationalModel minus = model;
            for (std::size_t c = 0; c < delta.size(); ++c) {
                plus.theta[c] += ck * delta[c];
                minus.theta[c] -= ck * delta[c];
            }
            const std::uint64_t it_seed = derive_seed(seed, static_cast<std::uint64_t>(it));
            const CostValue jp = evaluate_cost(plus, data, config, derive_seed(it_seed, "plus"));
            const CostValue jm = evaluate_cost(minus, data, config, derive_seed(it_seed, "minus"));
            for (std::size_t c = 0; c < delta.size(); ++c) {
                model.theta[c] -= ak * (jp.cost - jm.cost) / (2.0 * ck * delta[c]);
            }
            current = {0.5 * (jp.cost + jm.cost), std::min(jp.risk, jm.risk)};
            if (jp.cost <= jm.cost && jp.cost < best.cost) {
                best = jp;
                best_theta = plus.theta;
            } else if (jm.cost < best.cost) {
                best = jm;
                best_theta = minus.theta;
            }
        }
        if (exact && current.cost <= best.cost) {
            best = current;
            best_theta = model.theta;
        }
        result.cost_trace.push_back(current.cost);
        result.risk_trace.push_back(current.risk);
        if (it == config.max_iterations) result.hit_iteration_cap = true;
    }
    if (result.hit_iteration_cap && best.risk == 0.0) result.converged = true;
    model.theta = best_theta;
    result.empirical_risk = best.risk;
    return result;
}

}  // namespace loqs
