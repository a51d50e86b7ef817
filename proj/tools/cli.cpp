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

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "loqs/error.hpp"
#include "loqs/qml.hpp"
#include "loqs/rng.hpp"
#include "loqs/sampler.hpp"
#include "loqs/strong_sim.hpp"

namespace loqs::cli {

namespace {

struct Flags {
    std::vector<std::string> inputs;
    std::string out;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    double epsilon = 0.1;
    double delta = 0.05;
    unsigned threads = 1;
    bool exact = false;
    bool estimate = false;
    std::string grid = "default";
    bool timing = false;

    bool joint = false;
    std::string state;
    std::string p;
    std::string q;
    std::string normalization = "normalized";

    int modes = 4;
    int photons = 2;
    int adaptive_modes = 1;
    double scale = 1.0;
    std::string designated;

    std::string gram;
    std::string model;
    std::string train;
    double lambda = 0.01;
    std::uint64_t max_pair_updates = SvmOptions{}.max_pair_updates;
    std::uint64_t attempt_budget = kDefaultAttemptBudget;
    int max_iterations = 100;
};

void add_io(CLI::App* sub, Flags& f, const char* input_help) {
    sub->add_option("--input", f.inputs, input_help)->required();
    sub->add_option("--out", f.out, "Write results to this path instead of stdout");
}

void add_seed(CLI::App* sub, Flags& f) { sub->add_option("--seed", f.seed, "Master seed"); }

void add_mode(CLI::App* sub, Flags& f) {
    auto* exact = sub->add_flag("--exact", f.exact, "Exact evaluation (default)");
    auto* estimate = sub->add_flag("--estimate", f.estimate, "Randomised estimation");
    exact->excludes(estimate);
}

void add_feature_map(CLI::App* sub, Flags& f) {
    sub->add_option("--modes", f.modes, "Modes m of the feature map")->capture_default_str();
    sub->add_option("--photons", f.photons, "Photons n of the feature map")->capture_default_str();
    sub->add_option("--adaptive-modes", f.adaptive_modes, "Adaptively measured modes k")->capture_default_str();
    sub->add_option("--scale", f.scale, "Angle scale applied to every feature")->capture_default_str();
    sub->add_option("--designated", f.designated, "Designated adaptive outcome, e.g. [1]");
}

FockState parse_state(const std::string& text, const char* what) {
    std::string t = text;
    if (t.empty() || t.front() != '[') t = "[" + t + "]";
    return fock_from_json(parse_json(t, what));
}

FeatureMapSpec feature_map_from(const Flags& f, int dimension) {
    FeatureMapOptions opts;
    opts.scale = f.scale;
    if (!f.designated.empty()) opts.designated_outcome = parse_state(f.designated, "--designated");
    return default_feature_map(dimension, f.modes, f.photons, f.adaptive_modes, opts);
}

Json feature_map_json(const Flags& f, int dimension) {
    Json j{{"dimension", dimension},
           {"modes", f.modes},
           {"photons", f.photons},
           {"adaptive_modes", f.adaptive_modes},
           {"scale", f.scale}};
    if (!f.designated.empty()) j["designated"] = to_json(parse_state(f.designated, "--designated"));
    return j;
}

FeatureMapSpec feature_map_from_json(const Json& j, Flags& f) {
    if (!j.is_object()) throw InputError("model: \"feature_map\" must be an object");
    try {
        f.modes = j.at("modes").get<int>();
        f.photons = j.at("photons").get<int>();
        f.adaptive_modes = j.at("adaptive_modes").get<int>();
        f.scale = j.at("scale").get<double>();
        f.designated = j.contains("designated") ? j.at("designated").dump() : "";
        return feature_map_from(f, j.at("dimension").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("model.feature_map: ") + e.what());
    }
}

AdaptiveInterferometer load_circuit(const std::string& path) { return adaptive_from_json(read_json_file(path)); }

std::vector<FockState> final_outcomes(const AdaptiveInterferometer& a) {
    const int free_modes = a.modes() - a.adaptive_modes();
    const int n = a.photons();
    std::vector<FockState> out;
    const int max_r = a.adaptive_modes() == 0 ? 0 : n;
    for (int r = 0; r <= max_r; ++r) {
        if (free_modes == 0) {
            if (r == n) out.push_back(FockState::vacuum(0));
            continue;
        }
        for (auto& s : enumerate_phi(free_modes, n - r)) out.push_back(std::move(s));
    }
    return out;
}

Json context_json(const AdaptiveInterferometer& a, const std::string& kind) {
    return Json{{"kind", kind}, {"m", a.modes()}, {"n", a.photons()}, {"k", a.adaptive_modes()}};
}

Json cmd_simulate(const Flags& f) {
    const auto a = load_circuit(f.inputs.front());
    return to_json(f.joint ? joint_distribution(a) : final_distribution(a));
}

Json cmd_prob(const Flags& f) {
    const auto a = load_circuit(f.inputs.front());
    std::vector<FockState> targets;
    if (!f.state.empty()) targets.push_back(parse_state(f.state, "--state"));
    else targets = final_outcomes(a);

    Json ctx = context_json(a, "final");
    Json entries = Json::array();
    if (!f.estimate) {
        ctx["method"] = "exact";
        for (const auto& s : targets) {
            entries.push_back(Json{{"state", to_json(s)}, {"prob", checked_probability(prob_final_exact(a, s))}});
        }
    } else {
        ctx["method"] = "estimate";
        ctx["epsilon"] = f.epsilon;
        ctx["delta"] = f.delta;
        ctx["seed"] = f.seed;
        for (const auto& s : targets) {
            const auto est = prob_final_estimate(a, s, f.epsilon, f.delta, derive_seed(f.seed, "prob" + s.to_string()));
            entries.push_back(Json{{"state", to_json(s)},
                                   {"prob", est.value.real()},
                                   {"error_bound", est.abs_error_bound},
                                   {"samples", est.samples_used}});
        }
    }
    return Json{{"context", std::move(ctx)}, {"entries", std::move(entries)}};
}

Json cmd_overlap(const Flags& f) {
    if (f.inputs.size() > 2) throw InputError("overlap takes one or two --input files");
    const auto a = load_circuit(f.inputs.front());
    const auto b = f.inputs.size() == 2 ? load_circuit(f.inputs.back()) : a;
    if (f.p.empty()) throw InputError("overlap: --p is required");
    const FockState p = parse_state(f.p, "--p");
    const FockState q = f.q.empty() ? p : parse_state(f.q, "--q");
    Json j{{"p", to_json(p)}, {"q", to_json(q)}};
    if (!f.estimate) {
        const InnerProduct ip = inner_product_lemma1(a, p, b, q);
        j["method"] = "exact";
        j["inner_product"] = Json{{"re", ip.value.real()}, {"im", ip.value.imag()}};
        j["permanent_evals"] = ip.permanent_evals;
        j["overlap"] = overlap_normalized(a, p, b, q);
        return j;
    }
    OverlapEstimationOptions opts;
    opts.attempt_budget = f.attempt_budget;
    if (f.normalization == "raw") opts.normalization = OverlapNormalization::raw;
    else if (f.normalization != "normalized") throw InputError("--normalization must be raw or normalized");
    const std::uint64_t trials = f.shots > 0 ? f.shots : hoeffding_trials(f.epsilon, f.delta);
    const std::uint64_t seed = derive_seed(f.seed, "overlap");
    const EstimateReport rep = f.inputs.size() == 2
                                   ? estimate_overlap_pair(a, p, b, q, trials, seed, f.delta, opts)
                                   : estimate_overlap_algorithm1(a, p, q, trials, seed, f.delta, opts);
    j["method"] = "estimate";
    j["normalization"] = f.normalization;
    j["overlap"] = rep.value;
    j["trials"] = rep.shots;
    j["hoeffding_halfwidth"] = rep.hoeffding_halfwidth;
    return j;
}

Dataset load_dataset(const std::string& path) {
    Dataset d = read_dataset_csv(path);
    d.validate();
    if (d.size() == 0) throw InputError(path + ": dataset is empty");
    return d;
}

GramMatrix compute_gram(const Flags& f, const FeatureMapSpec& fm, const Dataset& data) {
    if (!f.estimate) return gram_exact(fm, data, f.threads);
    const std::uint64_t trials = f.shots > 0 ? f.shots : hoeffding_trials(f.epsilon, f.delta);
    OverlapEstimationOptions opts;
    opts.attempt_budget = f.attempt_budget;
    return gram_estimated(fm, data, trials, derive_seed(f.seed, "kernel"), f.threads, opts);
}

Json cmd_kernel(const Flags& f) {
    const Dataset data = load_dataset(f.inputs.front());
    const auto fm = feature_map_from(f, static_cast<int>(data.dimension()));
    return to_json(compute_gram(f, fm, data));
}

Json cmd_svm_train(const Flags& f) {
    const Dataset data = load_dataset(f.inputs.front());
    const int d = static_cast<int>(data.dimension());
    const auto fm = feature_map_from(f, d);
    GramMatrix gram = f.gram.empty() ? compute_gram(f, fm, data) : gram_from_json(read_json_file(f.gram));
    if (static_cast<std::size_t>(gram.entries.rows()) != data.size()) {
        throw InputError("svm-train: Gram matrix is " + std::to_string(gram.entries.rows()) + "x" +
                         std::to_string(gram.entries.cols()) + " but the dataset has " +
                         std::to_string(data.size()) + " points");
    }
    SvmOptions svm_opts;
    svm_opts.max_pair_updates = f.max_pair_updates;
    const SvmModel model = svm_train(gram, data.labels, f.lambda, svm_opts);
    std::size_t correct = 0;
    for (std::size_t l = 0; l < data.size(); ++l) {
        std::vector<double> row(data.size());
        for (std::size_t c = 0; c < data.size(); ++c) {
            row[c] = gram.entries(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(c));
        }
        if (svm_predict(model, row) == data.labels[l]) ++correct;
    }
    Json j = to_json(model);
    j["feature_map"] = feature_map_json(f, d);
    j["training"] = Json{{"kkt_violation", model.kkt_violation},
                         {"pair_updates", model.pair_updates},
                         {"accuracy", static_cast<double>(correct) / static_cast<double>(data.size())},
                         {"gram_provenance", gram.provenance}};
    return j;
}

Json cmd_svm_predict(Flags f) {
    if (f.model.empty() || f.train.empty()) throw InputError("svm-predict: --model and --train are required");
    const Json mj = read_json_file(f.model);
    const SvmModel model = model_from_json(mj);
    if (!mj.contains("feature_map")) throw InputError(f.model + ": missing field \"feature_map\"");
    const auto fm = feature_map_from_json(mj["feature_map"], f);
    const Dataset train = load_dataset(f.train);
    if (train.size() != model.alphas.size()) {
        throw InputError("svm-predict: model has " + std::to_string(model.alphas.size()) +
                         " multipliers but the training set has " + std::to_string(train.size()) + " points");
    }
    const Dataset test = load_dataset(f.inputs.front());
    Json preds = Json::array();
    std::size_t correct = 0;
    for (std::size_t l = 0; l < test.size(); ++l) {
        const auto row = kernel_row(fm, train, test.points[l]);
        const double decision = svm_decision(model, row);
        const int label = decision >= 0.0 ? 1 : -1;
        if (label == test.labels[l]) ++correct;
        preds.push_back(Json{{"index", l}, {"decision", decision}, {"label", label}});
    }
    return Json{{"predictions", std::move(preds)},
                {"accuracy", static_cast<double>(correct) / static_cast<double>(test.size())}};
}

Json cmd_explicit_train(const Flags& f, std::ostream& err) {
    const Dataset data = load_dataset(f.inputs.front());
    const int d = static_cast<int>(data.dimension());
    const VariationalModel vm = make_variational_model(feature_map_from(f, d));
    ExplicitTrainConfig config;
    config.mode = f.estimate ? ExplicitTrainConfig::Mode::shots : ExplicitTrainConfig::Mode::exact;
    config.max_iterations = f.max_iterations;
    if (f.shots > 0) config.shots = f.shots;
    const ExplicitTrainResult res = explicit_train(vm, data, config, derive_seed(f.seed, "explicit"));
    if (res.hit_iteration_cap && !res.converged) {
        err << "warning: iteration cap reached; returning the best parameters seen\n";
    }
    return Json{{"theta", res.model.theta},
                {"binning", "parity"},
                {"feature_map", feature_map_json(f, d)},
                {"mode", f.estimate ? "shots" : "exact"},
                {"empirical_risk", res.empirical_risk},
                {"iterations", res.iterations},
                {"converged", res.converged},
                {"hit_iteration_cap", res.hit_iteration_cap},
                {"cost_trace", res.cost_trace},
                {"risk_trace", res.risk_trace}};
}

bool nested(const Json& v) {
    return v.is_array() && !v.empty() && (v.front().is_array() || v.front().is_object());
}

}  // namespace

void write_json(std::ostream& out, const Json& j) {
    if (!j.is_object()) {
        out << j.dump() << '\n';
        return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
        out << "  " << Json(key).dump() << ": ";
        if (nested(value)) {
            out << "[\n";
            for (std::size_t e = 0; e < value.size(); ++e) {
                out << "    " << value[e].dump() << (e + 1 < value.size() ? ",\n" : "\n");
            }
            out << "  ]";
        } else {
            out << value.dump();
        }
        out << (++i < j.size() ? ",\n" : "\n");
    }
    out << "}\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adaptive linear-optics simulation and photonic kernel tools", "loqs"};
    app.require_subcommand(1);
    Flags f;

    auto* simulate = app.add_subcommand("simulate", "Exact output distribution of an interferometer");
    add_io(simulate, f, "Interferometer JSON");
    add_seed(simulate, f);
    simulate->add_flag("--joint", f.joint, "Joint distribution over all modes instead of final outcomes");

    auto* prob = app.add_subcommand("prob", "Final-outcome probabilities, exact or estimated");
    add_io(prob, f, "Interferometer JSON");
    add_seed(prob, f);
    add_mode(prob, f);
    prob->add_option("--state", f.state, "Final outcome, e.g. [1,0]; all outcomes if omitted");
    prob->add_option("--epsilon", f.epsilon, "Additive precision")->capture_default_str();
    prob->add_option("--delta", f.delta, "Failure probability")->capture_default_str();

    auto* overlap = app.add_subcommand("overlap", "Overlap of post-selected states");
    add_io(overlap, f, "One or two interferometer JSON files");
    add_seed(overlap, f);
    add_mode(overlap, f);
    overlap->add_option("--p", f.p, "Adaptive outcome of the first state");
    overlap->add_option("--q", f.q, "Adaptive outcome of the second state (defaults to --p)");
    overlap->add_option("--shots", f.shots, "Trials T (default from --epsilon and --delta)");
    overlap->add_option("--epsilon", f.epsilon, "Target precision")->capture_default_str();
    overlap->add_option("--delta", f.delta, "Failure probability")->capture_default_str();
    overlap->add_option("--attempt-budget", f.attempt_budget, "Runs allowed before giving up")->capture_default_str();
    overlap->add_option("--normalization", f.normalization, "normalized or raw")->capture_default_str();

    auto* sample_cmd = app.add_subcommand("sample", "Draw shots as JSON lines");
    add_io(sample_cmd, f, "Interferometer JSON");
    add_seed(sample_cmd, f);
    sample_cmd->add_option("--shots", f.shots, "Number of shots (default 1000)");

    auto* kernel = app.add_subcommand("kernel", "Gram matrix of a dataset");
    add_io(kernel, f, "Dataset CSV");
    add_seed(kernel, f);
    add_mode(kernel, f);
    add_feature_map(kernel, f);
    kernel->add_option("--shots", f.shots, "Trials per entry (default from --epsilon and --delta)");
    kernel->add_option("--epsilon", f.epsilon, "Target precision per entry")->capture_default_str();
    kernel->add_option("--delta", f.delta, "Failure probability per entry")->capture_default_str();
    kernel->add_option("--attempt-budget", f.attempt_budget, "Runs allowed before giving up")->capture_default_str();
    kernel->add_option("--threads", f.threads, "Worker threads")->capture_default_str();

    auto* svm_train_cmd = app.add_subcommand("svm-train", "Train a kernel SVM");
    add_io(svm_train_cmd, f, "Training dataset CSV");
    add_seed(svm_train_cmd, f);
    add_mode(svm_train_cmd, f);
    add_feature_map(svm_train_cmd, f);
    svm_train_cmd->add_option("--gram", f.gram, "Precomputed Gram matrix JSON");
    svm_train_cmd->add_option("--lambda", f.lambda, "Regularisation strength")->capture_default_str();
    svm_train_cmd->add_option("--max-pair-updates", f.max_pair_updates, "SMO update cap")->capture_default_str();
    svm_train_cmd->add_option("--shots", f.shots, "Trials per Gram entry with --estimate");
    svm_train_cmd->add_option("--epsilon", f.epsilon, "Target precision per entry")->capture_default_str();
    svm_train_cmd->add_option("--delta", f.delta, "Failure probability per entry")->capture_default_str();
    svm_train_cmd->add_option("--attempt-budget", f.attempt_budget, "Runs allowed before giving up")->capture_default_str();
    svm_train_cmd->add_option("--threads", f.threads, "Worker threads")->capture_default_str();

    auto* svm_predict_cmd = app.add_subcommand("svm-predict", "Classify points with a trained SVM");
    add_io(svm_predict_cmd, f, "Test dataset CSV");
    add_seed(svm_predict_cmd, f);
    svm_predict_cmd->add_option("--model", f.model, "Model JSON from svm-train")->required();
    svm_predict_cmd->add_option("--train", f.train, "Training dataset CSV")->required();

    auto* explicit_cmd = app.add_subcommand("explicit-train", "Train the explicit variational classifier");
    add_io(explicit_cmd, f, "Training dataset CSV");
    add_seed(explicit_cmd, f);
    add_mode(explicit_cmd, f);
    add_feature_map(explicit_cmd, f);
    explicit_cmd->add_option("--shots", f.shots, "Post-selected shots per point with --estimate");
    explicit_cmd->add_option("--max-iterations", f.max_iterations, "Iteration cap")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Permanent-count and cost scaling over a parameter grid");
    bench->add_option("--out", f.out, "Write results to this path instead of stdout");
    add_seed(bench, f);
    bench->add_option("--grid", f.grid, "small or default")->capture_default_str();
    bench->add_option("--epsilon", f.epsilon, "Precision used for sample counts")->capture_default_str();
    bench->add_option("--delta", f.delta, "Failure probability used for sample counts")->capture_default_str();
    bench->add_flag("--timing", f.timing, "Include wall-clock times (not reproducible)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        std::ostringstream buffer;
        if (*simulate) write_json(buffer, cmd_simulate(f));
        else if (*prob) write_json(buffer, cmd_prob(f));
        else if (*overlap) write_json(buffer, cmd_overlap(f));
        else if (*sample_cmd) {
            const auto a = load_circuit(f.inputs.front());
            write_shots_jsonl(buffer, sample(a, f.shots > 0 ? f.shots : 1000, derive_seed(f.seed, "sample")));
        } else if (*kernel) write_json(buffer, cmd_kernel(f));
        else if (*svm_train_cmd) write_json(buffer, cmd_svm_train(f));
        else if (*svm_predict_cmd) write_json(buffer, cmd_svm_predict(f));
        else if (*explicit_cmd) write_json(buffer, cmd_explicit_train(f, err));
        else if (*bench) {
            write_json(buffer, run_bench(BenchOptions{f.grid, f.seed, f.epsilon, f.delta, f.timing}));
        }

        if (f.out.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(f.out, std::ios::binary);
            if (!file) throw InputError("cannot write \"" + f.out + "\"");
            file << buffer.str();
        }
        return kOk;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const UnreachableOutcomeError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return kCapacityError;
    } catch (const StarvationError& e) {
        err << "starvation: " << e.what() << '\n';
        return kStarvation;
    } catch (const ConvergenceError& e) {
        err << "non-convergence: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace loqs::cli
