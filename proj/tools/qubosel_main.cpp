// Copyright 2026 The qubosel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end: generate -> solve/label -> train -> predict -> evaluate,
// plus reporting exports.  All outputs are plain files written atomically
// (temp + rename); every command prints the seed it ran with.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qubosel/manifest.hpp"
#include "qubosel/ml/validation.hpp"
#include "qubosel/problem_gen.hpp"
#include "qubosel/qubo_io.hpp"
#include "qubosel/scoring.hpp"
#include "qubosel/solvers/run.hpp"

namespace fs = std::filesystem;
using namespace qubosel;

namespace {

std::uint64_t env_default_seed() {
    if (const char* env = std::getenv("QUBOSEL_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

template <typename Writer>
void atomic_output(const fs::path& path, Writer&& writer) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    writer(tmp);
    fs::rename(tmp, path);
}

std::vector<Family> parse_families(const std::string& csv) {
    std::vector<Family> families;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) families.push_back(family_from_name(token));
    }
    if (families.empty()) throw SpecError("no families given");
    return families;
}

std::pair<int, int> parse_size_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int n = std::stoi(text);
        return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

/// Solver-parameter flags shared by `solve`; zero keeps the scaled default.
void add_solver_flags(CLI::App* cmd, SolverConfig* config) {
    cmd->add_option("--qaoa-reps", config->qaoa.reps, "QAOA layer count (default ceil(2 sqrt N))");
    cmd->add_option("--qaoa-shots", config->qaoa.shots, "QAOA readout shots");
    cmd->add_option("--qaoa-max-evals", config->qaoa.optimizer.max_evals,
                    "QAOA optimizer evaluation budget (0 = auto)");
    cmd->add_option("--qaoa-tol", config->qaoa.optimizer.tol, "QAOA optimizer tolerance");
    cmd->add_option("--vqe-layers", config->vqe.layers, "VQE ansatz layers");
    cmd->add_option("--vqe-shots", config->vqe.shots, "VQE readout shots");
    cmd->add_option("--vqe-max-evals", config->vqe.optimizer.max_evals,
                    "VQE optimizer evaluation budget (0 = auto)");
    cmd->add_option("--vqe-tol", config->vqe.optimizer.tol, "VQE optimizer tolerance");
    cmd->add_option("--gas-threshold", config->gas.threshold,
                    "GAS stop threshold (default 2N consecutive misses)");
    cmd->add_option("--gas-precision", config->gas.precision, "GAS rounding precision");
    cmd->add_option("--gas-value-qubits", config->gas.value_qubits,
                    "GAS value register override (0 = sized from bounds)");
    cmd->add_option("--gas-max-iterations", config->gas.max_iterations,
                    "GAS iteration cap (0 = auto)");
    cmd->add_option("--qa-slices", config->qa_proxy.trotter_slices, "QA proxy Trotter replicas");
    cmd->add_option("--qa-sweeps", config->qa_proxy.sweeps,
                    "QA proxy sweeps (default round(10^{0.7 sqrt N}))");
    cmd->add_option("--qa-gamma-start", config->qa_proxy.gamma_start,
                    "QA proxy opening transverse field");
    cmd->add_option("--qa-gamma-end", config->qa_proxy.gamma_end,
                    "QA proxy closing transverse field");
    cmd->add_option("--qa-temperature", config->qa_proxy.temperature,
                    "QA proxy temperature (0 = 0.1 max|coeff|)");
    cmd->add_option("--sa-sweeps", config->sa.sweeps,
                    "SA sweeps (default round(10^{0.5 sqrt N}))");
    cmd->add_option("--sa-temp-start", config->sa.temp_start, "SA opening temperature");
    cmd->add_option("--sa-temp-end", config->sa.temp_end, "SA closing temperature");
}

int cmd_generate(int count, const std::string& families_csv, const std::string& size_range,
                 std::uint64_t seed, const std::string& out_dir) {
    const auto families = parse_families(families_csv);
    const auto [size_lo, size_hi] = parse_size_range(size_range);
    const auto suite = generate_suite(count, size_lo, size_hi, families, seed);

    fs::create_directories(out_dir);
    std::vector<ManifestEntry> entries;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "qubo_%04zu.json", i);
        atomic_output(fs::path(out_dir) / name,
                      [&](const fs::path& tmp) { save_qubo(suite[i].second, tmp); });
        entries.push_back({suite[i].first, name});
    }
    atomic_output(fs::path(out_dir) / "manifest.json",
                  [&](const fs::path& tmp) { save_manifest(entries, tmp); });
    std::cout << "seed: " << seed << "\n"
              << "wrote " << suite.size() << " problems + manifest.json to " << out_dir << "\n";
    return 0;
}

int cmd_solve(const std::string& qubo_file, const std::string& solver, int runs,
              std::uint64_t seed, const std::string& out_prefix, const SolverConfig& config,
              int jobs) {
    const QuboProblem problem = load_qubo(qubo_file);
    std::vector<SolverKind> kinds;
    if (solver == "all") {
        kinds.assign(kAllSolvers.begin(), kAllSolvers.end());
    } else {
        kinds.push_back(solver_from_name(solver));
    }

    std::vector<std::pair<std::string, std::vector<double>>> columns;
    std::vector<std::string> log_lines;
    for (SolverKind kind : kinds) {
        const RunDistribution dist = run_many(problem, kind, config, runs, seed, jobs);
        for (std::size_t i = 0; i < dist.values.size(); ++i) {
            log_lines.push_back(std::to_string(derive_seed(seed, i)) + "," + solver_name(kind) +
                                "," + detail::format_double(dist.values[i]));
        }
        double best = dist.values[0], mean = 0.0;
        for (double v : dist.values) {
            best = std::min(best, v);
            mean += v;
        }
        mean /= static_cast<double>(dist.values.size());
        std::cout << solver_name(kind) << ": best " << best << ", mean " << mean << "\n";
        columns.emplace_back(solver_name(kind), dist.values);
    }

    atomic_output(fs::path(out_prefix + "_runs.csv"), [&](const fs::path& tmp) {
        std::ofstream out(tmp);
        out << "seed,solver,objective\n";
        for (const std::string& line : log_lines) out << line << '\n';
    });
    atomic_output(fs::path(out_prefix + "_cumulative.csv"),
                  [&](const fs::path& tmp) { write_cumulative_csv(columns, tmp); });
    std::cout << "seed: " << seed << "\n"
              << "wrote " << out_prefix << "_runs.csv and " << out_prefix << "_cumulative.csv\n";
    return 0;
}

int cmd_label(const std::string& manifest_file, int runs, std::uint64_t seed,
              const ScoreWeights& weights, bool raw_score, int jobs, const std::string& out_csv) {
    const auto entries = load_manifest(manifest_file);
    const fs::path base = fs::path(manifest_file).parent_path();

    std::vector<QuboProblem> problems;
    problems.reserve(entries.size());
    for (const ManifestEntry& e : entries) problems.push_back(load_qubo(base / e.file));

    std::vector<DatasetRecord> records(entries.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= entries.size()) return;
            const std::string id = fs::path(entries[i].file).stem().string();
            records[i] = label_problem(problems[i], id, runs, weights,
                                       derive_seed(seed, i), !raw_score);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::future<void>> futures;
        for (int t = 0; t < jobs; ++t) futures.push_back(std::async(std::launch::async, worker));
        for (auto& f : futures) f.get();
    }

    atomic_output(fs::path(out_csv), [&](const fs::path& tmp) { save_dataset(records, tmp); });

    std::map<std::string, int> histogram;
    for (const DatasetRecord& r : records) histogram[solver_name(r.label)]++;
    std::cout << "seed: " << seed << "\nlabel distribution:";
    for (SolverKind k : kAllSolvers) std::cout << " " << solver_name(k) << "=" << histogram[solver_name(k)];
    std::cout << "\nwrote " << records.size() << " records to " << out_csv << "\n";
    return 0;
}

int cmd_train(const std::string& dataset_csv, const std::string& classifier,
              const std::string& preproc, const ml::PipelineSpec& base, std::uint64_t seed,
              const std::string& out_model) {
    const auto records = load_dataset(dataset_csv);
    ml::PipelineSpec spec = ml::PipelineSpec::with_preprocessing(preproc, base);
    spec.classifier = ml::classifier_from_name(classifier);

    const ml::Matrix x = ml::detail::feature_matrix(records);
    const std::vector<int> y = ml::detail::label_ids(records);
    const ml::TrainedModel model =
        ml::train(x, y, spec, seed, ml::detail::solver_class_names());
    atomic_output(fs::path(out_model), [&](const fs::path& tmp) { save_model(model, tmp); });
    std::cout << "seed: " << seed << "\ntrained " << classifier << " (" << preproc << ") on "
              << records.size() << " records -> " << out_model << "\n";
    return 0;
}

int cmd_predict(const std::string& model_file, const std::string& qubo_file) {
    const ml::TrainedModel model = ml::load_model(model_file);
    const QuboProblem problem = load_qubo(qubo_file);
    const FeatureVector features = extract_features(problem);
    const auto raw = features.as_array();
    ml::Vector x(9);
    for (int j = 0; j < 9; ++j) x[j] = raw[static_cast<std::size_t>(j)];

    const std::vector<double> proba = model.predict_proba(x);
    const int predicted = model.predict(x);
    std::cout << "predicted: " << model.class_names[static_cast<std::size_t>(predicted)] << "\n";
    for (SolverKind k : kAllSolvers) {
        double p = 0.0;
        for (std::size_t c = 0; c < model.class_names.size(); ++c) {
            if (model.class_names[c] == solver_name(k)) p = proba[c];
        }
        std::cout << "p(" << solver_name(k) << ") = " << p << "\n";
    }
    return 0;
}

int cmd_evaluate(const std::string& dataset_csv, const std::string& classifiers_csv,
                 const std::string& preprocs_csv, int folds, std::uint64_t seed, int trees,
                 const std::string& out_csv) {
    const auto records = load_dataset(dataset_csv);

    std::vector<ml::ClassifierKind> classifiers;
    {
        std::stringstream ss(classifiers_csv);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (!token.empty()) classifiers.push_back(ml::classifier_from_name(token));
        }
    }
    std::vector<std::string> preprocs;
    {
        std::stringstream ss(preprocs_csv);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (!token.empty()) preprocs.push_back(token);
        }
    }

    ml::PipelineSpec base;
    base.forest.n_trees = trees;
    const auto rows = ml::evaluate_grid(records, classifiers, preprocs, folds, seed, base);
    atomic_output(fs::path(out_csv), [&](const fs::path& tmp) { ml::save_grid_csv(rows, tmp); });

    const ml::GridRow* best = &rows.front();
    for (const ml::GridRow& r : rows) {
        if (r.accuracy > best->accuracy) best = &r;
    }
    std::cout << "seed: " << seed << "\nwrote " << rows.size() << " rows to " << out_csv
              << "\nbest: " << best->model << " (" << best->preprocessing << ") accuracy "
              << 100.0 * best->accuracy << "%\n";
    return 0;
}

int cmd_report(const std::string& dataset_csv, const std::string& out_csv) {
    const auto records = load_dataset(dataset_csv);
    std::map<int, std::vector<const DatasetRecord*>> by_size;
    for (const DatasetRecord& r : records) by_size[r.features.n_vars].push_back(&r);

    atomic_output(fs::path(out_csv), [&](const fs::path& tmp) {
        std::ofstream out(tmp);
        out << "n_vars,problems,mean_ps_best,mean_ps_all\n";
        for (const auto& [size, rows] : by_size) {
            double best_sum = 0.0, all_sum = 0.0;
            for (const DatasetRecord* r : rows) {
                best_sum += r->ps[static_cast<std::size_t>(r->label)];
                for (double p : r->ps) all_sum += p;
            }
            const double n = static_cast<double>(rows.size());
            out << size << ',' << rows.size() << ',' << detail::format_double(best_sum / n)
                << ',' << detail::format_double(all_sum / (5.0 * n)) << '\n';
        }
    });

    std::map<std::string, int> histogram;
    for (const DatasetRecord& r : records) histogram[solver_name(r.label)]++;
    std::cout << "label distribution:";
    for (SolverKind k : kAllSolvers) std::cout << " " << solver_name(k) << "=" << histogram[solver_name(k)];
    std::cout << "\nwrote " << out_csv << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QUBO workbench: benchmark generation, five heuristic solvers, "
                 "scored labeling, and solver-selection models"};
    app.require_subcommand(1);
    const std::uint64_t default_seed = env_default_seed();

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a benchmark suite + manifest");
    int gen_count = 100;
    std::string gen_families = "max_cut,min_vertex_cover,set_packing,k_clique,"
                               "number_partitioning,random_qubo,portfolio";
    std::string gen_sizes = "3..10";
    std::uint64_t gen_seed = default_seed;
    std::string gen_out = "suite";
    generate->add_option("--count", gen_count, "Number of problems");
    generate->add_option("--families", gen_families, "Comma-separated families");
    generate->add_option("--n", gen_sizes, "Size range lo..hi");
    generate->add_option("--seed", gen_seed, "Suite seed");
    generate->add_option("--out", gen_out, "Output directory");

    // solve
    auto* solve = app.add_subcommand("solve", "Run one solver (or all) on a QUBO file");
    std::string solve_qubo, solve_solver = "sa", solve_out = "solve";
    int solve_runs = 100, solve_jobs = 1;
    std::uint64_t solve_seed = default_seed;
    SolverConfig solve_config;
    solve->add_option("--qubo", solve_qubo, "QUBO JSON file")->required();
    solve->add_option("--solver", solve_solver, "qaoa|vqe|gas|qa|sa|all");
    solve->add_option("--runs", solve_runs, "Independent runs");
    solve->add_option("--seed", solve_seed, "Base seed");
    solve->add_option("--jobs", solve_jobs, "Parallel workers");
    solve->add_option("--out", solve_out, "Output file prefix");
    add_solver_flags(solve, &solve_config);

    // label
    auto* label = app.add_subcommand("label", "Score all five solvers over a suite");
    std::string label_manifest, label_out = "dataset.csv";
    int label_runs = 100, label_jobs = 1;
    std::uint64_t label_seed = default_seed;
    bool label_raw = false;
    ScoreWeights weights;
    label->add_option("--manifest", label_manifest, "Suite manifest")->required();
    label->add_option("--runs", label_runs, "Runs per solver per problem");
    label->add_option("--seed", label_seed, "Base seed");
    label->add_option("--jobs", label_jobs, "Parallel workers across problems");
    label->add_option("--out", label_out, "Dataset CSV path");
    label->add_option("--alpha", weights.alpha, "Weight of the optimal-hit fraction");
    label->add_option("--beta", weights.beta, "Weight of the best-value gap");
    label->add_option("--gamma", weights.gamma, "Weight of the mean gap");
    label->add_option("--delta", weights.delta, "Weight of the variance");
    label->add_option("--eta", weights.eta, "Weight of the constraint fraction");
    label->add_flag("--raw-score", label_raw, "Skip bound-width normalization");

    // train
    auto* train_cmd = app.add_subcommand("train", "Fit a solver-selection model");
    std::string train_dataset, train_out = "model.json";
    std::string train_classifier = "random_forest", train_preproc = "none";
    std::uint64_t train_seed = default_seed;
    ml::PipelineSpec train_base;
    train_cmd->add_option("--dataset", train_dataset, "Dataset CSV")->required();
    train_cmd->add_option("--classifier", train_classifier, "random_forest|decision_tree|knn|gaussian_nb");
    train_cmd->add_option("--preproc", train_preproc, "none|pca<k>|lda<k>");
    train_cmd->add_option("--trees", train_base.forest.n_trees, "Forest size");
    train_cmd->add_option("--max-depth", train_base.forest.tree.max_depth, "Tree depth cap");
    train_cmd->add_option("--min-leaf", train_base.forest.tree.min_samples_leaf,
                          "Minimum samples per leaf");
    train_cmd->add_option("--min-split", train_base.forest.tree.min_samples_split,
                          "Minimum samples per split");
    train_cmd->add_option("--knn-k", train_base.knn_k, "Neighbour count for knn");
    train_cmd->add_option("--seed", train_seed, "Training seed");
    train_cmd->add_option("--out", train_out, "Model JSON path");

    // predict
    auto* predict = app.add_subcommand("predict", "Predict the best solver for a QUBO file");
    std::string predict_model, predict_qubo;
    predict->add_option("--model", predict_model, "Model JSON")->required();
    predict->add_option("--qubo", predict_qubo, "QUBO JSON file")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Cross-validate the classifier grid");
    std::string eval_dataset, eval_out = "evaluation.csv";
    std::string eval_classifiers = "random_forest,decision_tree,knn,gaussian_nb";
    std::string eval_preprocs = "none,pca2,pca3,pca4,pca9,lda2,lda3,lda4";
    int eval_folds = 5, eval_trees = 100;
    std::uint64_t eval_seed = default_seed;
    evaluate->add_option("--dataset", eval_dataset, "Dataset CSV")->required();
    evaluate->add_option("--classifiers", eval_classifiers, "Comma-separated classifiers");
    evaluate->add_option("--preprocs", eval_preprocs, "Comma-separated preprocessing specs");
    evaluate->add_option("--folds", eval_folds, "Cross-validation folds");
    evaluate->add_option("--trees", eval_trees, "Forest size");
    evaluate->add_option("--seed", eval_seed, "Fold/model seed");
    evaluate->add_option("--out", eval_out, "Table CSV path");

    // report
    auto* report = app.add_subcommand("report", "Size-vs-success-probability summary");
    std::string report_dataset, report_out = "report.csv";
    report->add_option("--dataset", report_dataset, "Dataset CSV")->required();
    report->add_option("--out", report_out, "Report CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            return cmd_generate(gen_count, gen_families, gen_sizes, gen_seed, gen_out);
        }
        if (solve->parsed()) {
            return cmd_solve(solve_qubo, solve_solver, solve_runs, solve_seed, solve_out,
                             solve_config, solve_jobs);
        }
        if (label->parsed()) {
            return cmd_label(label_manifest, label_runs, label_seed, weights, label_raw,
                             label_jobs, label_out);
        }
        if (train_cmd->parsed()) {
            return cmd_train(train_dataset, train_classifier, train_preproc, train_base,
                             train_seed, train_out);
        }
        if (predict->parsed()) return cmd_predict(predict_model, predict_qubo);
        if (evaluate->parsed()) {
            return cmd_evaluate(eval_dataset, eval_classifiers, eval_preprocs, eval_folds,
                                eval_seed, eval_trees, eval_out);
        }
        if (report->parsed()) return cmd_report(report_dataset, report_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
