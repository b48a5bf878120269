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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qubosel/ml/pipeline.hpp"
#include "qubosel/rng.hpp"
#include "qubosel/scoring.hpp"

namespace qubosel::ml {

struct FoldAssignment {
    std::vector<std::vector<int>> folds;  // disjoint index lists covering 0..n-1
    std::vector<std::string> warnings;    // classes with fewer members than folds
};

/**
 * Stratified k-fold split: within every class the (seeded, shuffled) members
 * are dealt to folds so per-fold class counts deviate from proportionality
 * by at most one.  Classes smaller than k are spread best-effort and noted
 * in `warnings`.
 */
inline FoldAssignment stratified_kfold(const std::vector<int>& y, int k, std::uint64_t seed) {
    if (k < 2) throw Error("stratified_kfold: k must be >= 2");
    int num_classes = 0;
    for (int label : y) num_classes = std::max(num_classes, label + 1);

    FoldAssignment out;
    out.folds.assign(static_cast<std::size_t>(k), {});
    Rng rng(seed);
    int next_fold = 0;  // carried across classes to balance fold sizes
    for (int c = 0; c < num_classes; ++c) {
        std::vector<int> members;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == c) members.push_back(static_cast<int>(i));
        }
        if (members.empty()) continue;
        if (static_cast<int>(members.size()) < k) {
            out.warnings.push_back("class " + std::to_string(c) + " has only " +
                                   std::to_string(members.size()) + " members for " +
                                   std::to_string(k) + " folds");
        }
        std::shuffle(members.begin(), members.end(), rng);
        for (int idx : members) {
            out.folds[static_cast<std::size_t>(next_fold)].push_back(idx);
            next_fold = (next_fold + 1) % k;
        }
    }
    for (auto& fold : out.folds) std::sort(fold.begin(), fold.end());
    return out;
}

struct FoldMetrics {
    double accuracy = 0.0;
    double top2_rate = 0.0;
    double avg_ps_error = 0.0;
    int test_size = 0;
};

struct EvalReport {
    std::vector<FoldMetrics> folds;
    double accuracy = 0.0;      // pooled over all test items
    double top2_rate = 0.0;
    double avg_ps_error = 0.0;
    std::array<std::array<int, 5>, 5> confusion{};  // [true label][prediction]
};

namespace detail {

inline Matrix feature_matrix(const std::vector<DatasetRecord>& records) {
    Matrix x(static_cast<Eigen::Index>(records.size()), 9);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto row = records[i].features.as_array();
        for (int j = 0; j < 9; ++j) x(static_cast<Eigen::Index>(i), j) = row[static_cast<std::size_t>(j)];
    }
    return x;
}

inline std::vector<int> label_ids(const std::vector<DatasetRecord>& records) {
    std::vector<int> y(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        y[i] = static_cast<int>(records[i].label);
    }
    return y;
}

/// Ground-truth best and runner-up solver ids by (score, priority).
inline std::pair<int, int> top_two_by_score(const DatasetRecord& r) {
    std::array<int, 5> order = {0, 1, 2, 3, 4};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return r.scores[static_cast<std::size_t>(a)] < r.scores[static_cast<std::size_t>(b)];
    });
    return {order[0], order[1]};
}

inline std::vector<std::string> solver_class_names() {
    std::vector<std::string> names;
    for (SolverKind k : kAllSolvers) names.push_back(solver_name(k));
    return names;
}

}  // namespace detail

/**
 * Stratified k-fold cross-validation of a pipeline on a labeled dataset.
 * Metrics: accuracy; top-2 rate (prediction lies within the two best solvers
 * by stored score); average |p_s(labeled best) - p_s(predicted)| from the
 * stored per-solver success probabilities.
 */
inline EvalReport cross_validate(const std::vector<DatasetRecord>& records,
                                 const PipelineSpec& spec, int k = 5, std::uint64_t seed = 0) {
    if (records.size() < 2) throw Error("cross_validate: need at least two records");
    const Matrix x = detail::feature_matrix(records);
    const std::vector<int> y = detail::label_ids(records);
    const FoldAssignment assignment = stratified_kfold(y, k, seed);

    EvalReport report;
    int total = 0, correct = 0, top2 = 0;
    double ps_error_sum = 0.0;

    for (std::size_t f = 0; f < assignment.folds.size(); ++f) {
        const std::vector<int>& test_idx = assignment.folds[f];
        if (test_idx.empty()) continue;
        std::vector<int> train_idx;
        for (std::size_t g = 0; g < assignment.folds.size(); ++g) {
            if (g == f) continue;
            train_idx.insert(train_idx.end(), assignment.folds[g].begin(),
                             assignment.folds[g].end());
        }
        std::sort(train_idx.begin(), train_idx.end());

        Matrix train_x(static_cast<Eigen::Index>(train_idx.size()), x.cols());
        std::vector<int> train_y(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) {
            train_x.row(static_cast<Eigen::Index>(i)) = x.row(train_idx[i]);
            train_y[i] = y[static_cast<std::size_t>(train_idx[i])];
        }
        const TrainedModel model = train(train_x, train_y, spec,
                                         derive_seed(seed, f), detail::solver_class_names());

        FoldMetrics fm;
        fm.test_size = static_cast<int>(test_idx.size());
        double fold_ps_error = 0.0;
        for (int idx : test_idx) {
            const DatasetRecord& r = records[static_cast<std::size_t>(idx)];
            const int predicted = model.predict(x.row(idx).transpose());
            const int truth = y[static_cast<std::size_t>(idx)];
            report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(predicted)]++;
            const auto [first, second] = detail::top_two_by_score(r);
            const bool hit = predicted == truth;
            const bool in_top2 = predicted == first || predicted == second;
            const double ps_err = std::abs(r.ps[static_cast<std::size_t>(truth)] -
                                           r.ps[static_cast<std::size_t>(predicted)]);
            fm.accuracy += hit ? 1.0 : 0.0;
            fm.top2_rate += in_top2 ? 1.0 : 0.0;
            fold_ps_error += ps_err;
            ++total;
            correct += hit ? 1 : 0;
            top2 += in_top2 ? 1 : 0;
            ps_error_sum += ps_err;
        }
        fm.avg_ps_error = fold_ps_error / fm.test_size;
        fm.accuracy /= fm.test_size;
        fm.top2_rate /= fm.test_size;
        report.folds.push_back(fm);
    }

    report.accuracy = static_cast<double>(correct) / total;
    report.top2_rate = static_cast<double>(top2) / total;
    report.avg_ps_error = ps_error_sum / total;
    return report;
}

/// One row of the classifier x preprocessing comparison table.
struct GridRow {
    std::string model;
    std::string preprocessing;
    double accuracy = 0.0;
    double top2_rate = 0.0;
    double avg_ps_error = 0.0;
};

inline constexpr std::array<ClassifierKind, 4> kGridClassifiers = {
    ClassifierKind::RandomForest, ClassifierKind::DecisionTree, ClassifierKind::Knn,
    ClassifierKind::GaussianNb};

inline constexpr std::array<const char*, 8> kGridPreprocs = {
    "none", "pca2", "pca3", "pca4", "pca9", "lda2", "lda3", "lda4"};

inline std::vector<GridRow> evaluate_grid(const std::vector<DatasetRecord>& records,
                                          const std::vector<ClassifierKind>& classifiers,
                                          const std::vector<std::string>& preprocs, int k,
                                          std::uint64_t seed, const PipelineSpec& base = {}) {
    std::vector<GridRow> rows;
    for (ClassifierKind clf : classifiers) {
        for (const std::string& pre : preprocs) {
            PipelineSpec spec = PipelineSpec::with_preprocessing(pre, base);
            spec.classifier = clf;
            const EvalReport report = cross_validate(records, spec, k, seed);
            rows.push_back({classifier_name(clf), pre, report.accuracy, report.top2_rate,
                            report.avg_ps_error});
        }
    }
    return rows;
}

/// Table-style CSV: model, preprocessing, and the three metrics in percent.
inline void save_grid_csv(const std::vector<GridRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_grid_csv: cannot open " + path.string());
    out << "model,preprocessing,accuracy_pct,top_two_pct,ps_error_pct\n";
    char buf[128];
    for (const GridRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%.2f,%.2f,%.2f", r.model.c_str(),
                      r.preprocessing.c_str(), 100.0 * r.accuracy, 100.0 * r.top2_rate,
                      100.0 * r.avg_ps_error);
        out << buf << '\n';
    }
}

}  // namespace qubosel::ml
