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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "loqs/interferometer.hpp"
#include "loqs/permanent.hpp"
#include "loqs/qml.hpp"
#include "loqs/sampler.hpp"
#include "loqs/serialize.hpp"
#include "loqs/strong_sim.hpp"
#include "oracle/oracle.hpp"
#include "support.hpp"

using namespace loqs;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::vector<int> complement(const std::vector<int>& mask) {
    std::vector<int> out(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) out[i] = 1 - mask[i];
    return out;
}

AdaptiveInterferometer load(const std::string& name) { return adaptive_from_json(read_json_file(test::data_path(name))); }

Outcome ryser_vs_naive() {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int n = 5 + t % 3;
        const ComplexMatrix a = test::random_gaussian(n, n, 100 + t);
        const Complex naive = permanent_naive(a);
        worst = std::max(worst, std::abs(permanent_ryser(a) - naive) / std::abs(naive));
    }
    return {worst <= 1e-9, "max relative error " + fmt("%.2e", worst)};
}

Outcome permanent_identities() {
    double laplace = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + t % 5;
        const int r = 1 + t % (n - 1);
        const ComplexMatrix w = test::random_gaussian(n, n, 5000 + t);
        const auto masks = binary_masks(n, r);
        const auto& j = masks[static_cast<std::size_t>(t) % masks.size()];
        Complex sum = 0.0;
        for (const auto& i : masks) {
            sum += permanent_ryser(select(w, i, j)) * permanent_ryser(select(w, complement(i), complement(j)));
        }
        const Complex per = permanent_naive(w);
        laplace = std::max(laplace, std::abs(sum - per) / std::max(1.0, std::abs(per)));
    }
    double composition = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int rows = 2 + t % 3;
        const int inner = 2 + (t / 3) % 3;
        const int photons = 1 + t % 3;
        const ComplexMatrix m = test::random_gaussian(rows, inner, 6000 + t);
        const ComplexMatrix nt = test::random_gaussian(inner, rows, 7000 + t);
        const auto outer = enumerate_phi(rows, photons);
        const auto& u = outer[static_cast<std::size_t>(t) % outer.size()];
        const auto& v = outer[static_cast<std::size_t>(t * 7 + 3) % outer.size()];
        Complex sum = 0.0;
        for (const auto& s : enumerate_phi(inner, photons)) {
            sum += permanent_repeated(m, u, s) * permanent_repeated(nt, s, v) / multi_factorial_real(s);
        }
        const Complex lhs = permanent_repeated(m * nt, u, v);
        composition = std::max(composition, std::abs(sum - lhs) / std::max(1.0, std::abs(lhs)));
    }
    return {laplace <= 1e-8 && composition <= 1e-8,
            "laplace " + fmt("%.2e", laplace) + ", composition " + fmt("%.2e", composition)};
}

Outcome lemma1_vs_bruteforce() {
    double worst = 0.0;
    int comparisons = 0;
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const int k = 1 + t % 3;
        const int m = k + 1 + static_cast<int>(uniform01(rng) * (7 - k));
        const int n = 1 + static_cast<int>(uniform01(rng) * std::min(4, m));
        const AdaptiveInterferometer u = random_adaptive(m, k, n, 40000 + t);
        const AdaptiveInterferometer v = random_adaptive(m, k, n, 50000 + t);
        for (int r = 0; r <= n; ++r) {
            const auto outcomes = enumerate_phi(k, r);
            const auto pick = [&] { return outcomes[static_cast<std::size_t>(uniform01(rng) * outcomes.size())]; };
            const FockState p = pick();
            const FockState q = pick();
            const Complex lemma = inner_product_lemma1(u, p, v, q).value;
            const Complex brute = inner_product_bruteforce(output_state(u, p), output_state(v, q));
            worst = std::max(worst, std::abs(lemma - brute));
            ++comparisons;
        }
    }
    return {worst <= 1e-8, std::to_string(comparisons) + " comparisons, max error " + fmt("%.2e", worst)};
}

Outcome k_independence() {
    std::string counts;
    bool pass = true;
    for (int k = 1; k <= 3; ++k) {
        const AdaptiveInterferometer a = random_adaptive(6, k, 3, 60 + k);
        const AdaptiveInterferometer b = random_adaptive(6, k, 3, 70 + k);
        std::vector<int> p(static_cast<std::size_t>(k), 0);
        p.back() = 1;
        const std::uint64_t before = ryser_call_count();
        const InnerProduct ip = inner_product_lemma1(a, FockState(p), b, FockState(p));
        const std::uint64_t calls = ryser_call_count() - before;
        pass = pass && calls == 27 && ip.permanent_evals == 27;
        counts += (k > 1 ? ", " : "") + std::string("k=") + std::to_string(k) + ": " + std::to_string(calls);
    }
    return {pass, "permanent calls " + counts};
}

Outcome normalization() {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int k = t % 3;
        const int m = k + 1 + t % (6 - k);
        const int n = 1 + t % std::min(3, m);
        const AdaptiveInterferometer a = random_adaptive(m, k, n, 80000 + t);
        double total = 0.0;
        for (int photons = (k == 0 ? n : 0); photons <= n; ++photons) {
            for (const auto& s : enumerate_phi(m - k, photons)) total += prob_final_exact(a, s);
        }
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return {worst <= 1e-8, "max |sum - 1| " + fmt("%.2e", worst)};
}

Outcome hom_fixture() {
    const AdaptiveInterferometer a = load("hom.json");
    const double p11 = prob_final_exact(a, FockState{1, 1});
    const double p20 = prob_final_exact(a, FockState{2, 0});
    const double p02 = prob_final_exact(a, FockState{0, 2});
    const bool exact_ok = std::abs(p11) <= 1e-12 && std::abs(p20 - 0.5) <= 1e-12 && std::abs(p02 - 0.5) <= 1e-12;
    double f11 = 0.0;
    double f20 = 0.0;
    double f02 = 0.0;
    for (const auto& shot : sample(a, 10000, 2024)) {
        if (shot.final_outcome == FockState{1, 1}) f11 += 1e-4;
        if (shot.final_outcome == FockState{2, 0}) f20 += 1e-4;
        if (shot.final_outcome == FockState{0, 2}) f02 += 1e-4;
    }
    const bool sampled_ok = f11 <= 0.02 && std::abs(f20 - 0.5) <= 0.02 && std::abs(f02 - 0.5) <= 0.02;
    return {exact_ok && sampled_ok, "exact (" + fmt("%.1e", p11) + ", " + fmt("%.15f", p20) + ", " +
                                        fmt("%.15f", p02) + "), sampled (" + fmt("%.4f", f11) + ", " +
                                        fmt("%.4f", f20) + ", " + fmt("%.4f", f02) + ")"};
}

Outcome gurvits_coverage() {
    int failures = 0;
    for (int t = 0; t < 200; ++t) {
        const ComplexMatrix u = random_unitary(8, 90000 + t).matrix();
        const PermanentEstimate est = estimate_permanent_gurvits(u, 0.1, 0.05, 91000 + t);
        if (std::abs(est.value - permanent_ryser(u)) > 0.1) ++failures;
    }
    const double rate = failures / 200.0;
    const double ratio = static_cast<double>(gurvits_sample_count(0.05, 0.05)) /
                         static_cast<double>(gurvits_sample_count(0.1, 0.05));
    return {rate <= 0.10 && ratio >= 2.0 && ratio <= 8.0,
            "failure rate " + fmt("%.3f", rate) + ", sample ratio at eps/2 " + fmt("%.3f", ratio)};
}

Outcome probability_bound() {
    int hits = 0;
    for (int t = 0; t < 100; ++t) {
        const AdaptiveInterferometer a = random_adaptive(6, 2, 2, 100000 + t);
        std::vector<FockState> outcomes;
        for (int photons = 0; photons <= 2; ++photons) {
            for (const auto& s : enumerate_phi(4, photons)) outcomes.push_back(s);
        }
        const FockState& s = outcomes[static_cast<std::size_t>(t * 7) % outcomes.size()];
        const int r = 2 - s.total_photons();
        const double terms = static_cast<double>(to_u64(count_phi(2, r)));
        const PermanentEstimate est = prob_final_estimate(a, s, 0.1, 0.05, 110000 + t);
        if (std::abs(est.value.real() - prob_final_exact(a, s)) <= 0.1 * terms) ++hits;
    }
    return {hits >= 95, std::to_string(hits) + "/100 runs within eps |Phi_{k,r}|"};
}

Outcome algorithm1() {
    const AdaptiveInterferometer a = load("adaptive.json");
    const FockState p{1};
    const double exact = overlap_normalized(a, p, a, p);
    const EstimateReport est = estimate_overlap_algorithm1(a, p, p, 10000, 7, 0.05);
    const EstimateReport zero = estimate_overlap_algorithm1(a, p, FockState{2}, 10000, 7, 0.05);
    const EstimateReport zero2 = estimate_overlap_algorithm1(a, FockState{0}, p, 10000, 7, 0.05);
    const double err = std::abs(est.value - exact);
    return {err <= 0.05 && zero.value == 0.0 && zero2.value == 0.0,
            "|estimate - exact| " + fmt("%.4f", err) + ", |p| != |q| gives " + fmt("%g", zero.value)};
}

Outcome kernel_pipeline() {
    const Dataset toy = read_dataset_csv(test::data_path("toy.csv"));
    const FeatureMapSpec fm = default_feature_map(static_cast<int>(toy.dimension()), 4, 2, 1);
    const GramMatrix g = gram_exact(fm, toy);
    bool structure = g.entries == g.entries.transpose();
    for (Eigen::Index i = 0; i < g.entries.rows(); ++i) structure = structure && g.entries(i, i) == 1.0;
    const double min_eig = min_eigenvalue(g.entries);
    const GramMatrix est = gram_estimated(fm, toy, 10000, 12);
    const double est_err = (est.entries - g.entries).cwiseAbs().maxCoeff();

    const Dataset blobs = read_dataset_csv(test::data_path("blobs.csv"));
    const GramMatrix bg = gram_exact(default_feature_map(static_cast<int>(blobs.dimension()), 4, 2, 1), blobs);
    const double lambda = 0.001;
    const SvmModel model = svm_train(bg, blobs.labels, lambda);
    const RealMatrix k = clip_negative_eigenvalues(bg.entries);
    const double box = svm_box(blobs.size(), lambda);
    const double kkt = svm_kkt_violation(k, blobs.labels, model.alphas, box);
    const auto ref = oracle::reference_dual(k, blobs.labels, box);
    const double gap = std::abs(svm_dual_objective(k, blobs.labels, model.alphas) - ref.objective) /
                       std::max(1.0, std::abs(ref.objective));
    std::size_t correct = 0;
    for (std::size_t l = 0; l < blobs.size(); ++l) {
        std::vector<double> row(blobs.size());
        for (std::size_t c = 0; c < blobs.size(); ++c) {
            row[c] = bg.entries(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(c));
        }
        if (svm_predict(model, row) == blobs.labels[l]) ++correct;
    }
    const double accuracy = static_cast<double>(correct) / static_cast<double>(blobs.size());
    const bool pass = structure && min_eig >= -1e-8 && est_err <= 0.05 && kkt <= 1e-4 && gap <= 1e-4 &&
                      accuracy == 1.0;
    return {pass, std::string(structure ? "symmetric unit diagonal" : "structure broken") + ", min eig " +
                      fmt("%.2e", min_eig) + ", estimate error " + fmt("%.4f", est_err) + ", KKT " +
                      fmt("%.1e", kkt) + ", objective gap " + fmt("%.1e", gap) + ", accuracy " +
                      fmt("%.2f", accuracy)};
}

Outcome determinism() {
    test::ScratchDir dir("acceptance");
    const std::string hom = test::data_path("hom.json");
    const std::string adaptive = test::data_path("adaptive.json");
    const std::string toy = test::data_path("toy.csv");
    const std::string blobs = test::data_path("blobs.csv");
    const std::string model = dir.file("model.json");
    if (test::run({"svm-train", "--input", blobs, "--seed", "5", "--out", model}).code != 0) {
        return {false, "svm-train failed"};
    }
    const std::vector<std::vector<std::string>> commands{
        {"simulate", "--input", adaptive, "--seed", "5"},
        {"simulate", "--input", adaptive, "--joint", "--seed", "5"},
        {"prob", "--input", adaptive, "--seed", "5"},
        {"prob", "--input", adaptive, "--estimate", "--state", "[1,0,0]", "--seed", "5"},
        {"overlap", "--input", adaptive, "--p", "[1]", "--seed", "5"},
        {"overlap", "--input", adaptive, "--p", "[1]", "--estimate", "--seed", "5"},
        {"overlap", "--input", hom, "--input", hom, "--p", "[]", "--estimate", "--seed", "5"},
        {"sample", "--input", adaptive, "--shots", "500", "--seed", "5"},
        {"kernel", "--input", toy, "--seed", "5"},
        {"kernel", "--input", toy, "--estimate", "--shots", "2000", "--threads", "4", "--seed", "5"},
        {"svm-train", "--input", blobs, "--seed", "5"},
        {"svm-train", "--input", toy, "--estimate", "--shots", "2000", "--seed", "5"},
        {"svm-predict", "--input", blobs, "--train", blobs, "--model", model, "--seed", "5"},
        {"explicit-train", "--input", toy, "--max-iterations", "5", "--seed", "5"},
        {"explicit-train", "--input", toy, "--estimate", "--shots", "200", "--max-iterations", "5", "--seed", "5"},
        {"bench", "--grid", "small", "--seed", "5"},
    };
    std::size_t identical = 0;
    std::string first_failure;
    for (const auto& args : commands) {
        const test::CliRun a = test::run(args);
        const test::CliRun b = test::run(args);
        if (a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out) {
            ++identical;
        } else if (first_failure.empty()) {
            first_failure = ", first mismatch: " + args.front() + " (exit " + std::to_string(a.code) + ")";
        }
    }
    return {identical == commands.size(),
            std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical" +
                first_failure};
}

struct Criterion {
    int id;
    const char* name;
    double time_limit;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "permanents: Ryser equals naive expansion", 5.0, ryser_vs_naive},
        {2, "permanent Laplace and composition identities", 10.0, permanent_identities},
        {3, "inner product: mask expansion equals brute force", 60.0, lemma1_vs_bruteforce},
        {4, "overlap permanent count independent of k", 0.0, k_independence},
        {5, "final distribution normalisation", 0.0, normalization},
        {6, "HOM fixture", 0.0, hom_fixture},
        {7, "Gurvits coverage and sample scaling", 0.0, gurvits_coverage},
        {8, "probability estimate error bound", 0.0, probability_bound},
        {9, "overlap estimation loop", 0.0, algorithm1},
        {10, "kernel pipeline", 0.0, kernel_pipeline},
        {11, "CLI determinism", 0.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && seconds >= c.time_limit) {
            o.pass = false;
            o.detail += ", over the " + fmt("%g", c.time_limit) + " s limit";
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.name << ": " << o.detail << " ("
                  << fmt("%.2f", seconds) << " s)" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
