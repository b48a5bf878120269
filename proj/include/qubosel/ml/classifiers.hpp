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
#include <cmath>
#include <numbers>
#include <vector>

#include "qubosel/ml/decision_tree.hpp"
#include "qubosel/ml/preprocessing.hpp"
#include "qubosel/rng.hpp"

namespace qubosel::ml {

struct ForestParams {
    int n_trees = 100;
    TreeParams tree;  // max_features = 0 selects the sqrt(d) rule
};

/// Bagged CART ensemble; probabilities are the tree vote fractions.
class RandomForest {
  public:
    void fit(const Matrix& x, const std::vector<int>& y, int num_classes,
             const ForestParams& params, std::uint64_t seed) {
        if (params.n_trees < 1) throw Error("RandomForest: need at least one tree");
        num_classes_ = num_classes;
        TreeParams tree_params = params.tree;
        if (tree_params.max_features <= 0) {
            tree_params.max_features = std::max(
                1, static_cast<int>(std::llround(std::sqrt(static_cast<double>(x.cols())))));
        }
        trees_.assign(static_cast<std::size_t>(params.n_trees), DecisionTree{});
        const int n = static_cast<int>(x.rows());
        for (int t = 0; t < params.n_trees; ++t) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
            std::vector<int> bootstrap(static_cast<std::size_t>(n));
            for (int& idx : bootstrap) idx = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            trees_[static_cast<std::size_t>(t)].fit(x, y, num_classes, tree_params, rng, bootstrap);
        }
    }

    std::vector<double> predict_proba(const Vector& x) const {
        std::vector<double> votes(static_cast<std::size_t>(num_classes_), 0.0);
        for (const DecisionTree& tree : trees_) votes[static_cast<std::size_t>(tree.predict(x))] += 1.0;
        for (double& v : votes) v /= static_cast<double>(trees_.size());
        return votes;
    }

    const std::vector<DecisionTree>& trees() const { return trees_; }
    int num_classes() const { return num_classes_; }
    void restore(std::vector<DecisionTree> trees, int num_classes) {
        trees_ = std::move(trees);
        num_classes_ = num_classes;
    }

  private:
    int num_classes_ = 0;
    std::vector<DecisionTree> trees_;
};

/// k-nearest neighbours with Euclidean distance; probabilities are the
/// neighbour label fractions.  Distance ties break on the training index.
class KnnClassifier {
  public:
    void fit(const Matrix& x, const std::vector<int>& y, int num_classes, int k) {
        if (k < 1) throw Error("Knn: k must be positive");
        x_ = x;
        y_ = y;
        num_classes_ = num_classes;
        k_ = k;
    }

    std::vector<double> predict_proba(const Vector& x) const {
        if (x.size() != x_.cols()) throw DimensionError("Knn: feature dimension mismatch");
        std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(x_.rows()));
        for (Eigen::Index i = 0; i < x_.rows(); ++i) {
            dist[static_cast<std::size_t>(i)] = {(x_.row(i).transpose() - x).squaredNorm(),
                                                 static_cast<int>(i)};
        }
        const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k_), dist.size());
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take),
                          dist.end());
        std::vector<double> proba(static_cast<std::size_t>(num_classes_), 0.0);
        for (std::size_t i = 0; i < take; ++i) {
            proba[static_cast<std::size_t>(y_[static_cast<std::size_t>(dist[i].second)])] += 1.0;
        }
        for (double& p : proba) p /= static_cast<double>(take);
        return proba;
    }

    int k() const { return k_; }
    const Matrix& train_x() const { return x_; }
    const std::vector<int>& train_y() const { return y_; }
    int num_classes() const { return num_classes_; }
    void restore(Matrix x, std::vector<int> y, int num_classes, int k) {
        x_ = std::move(x);
        y_ = std::move(y);
        num_classes_ = num_classes;
        k_ = k;
    }

  private:
    Matrix x_;
    std::vector<int> y_;
    int num_classes_ = 0;
    int k_ = 5;
};

/// Gaussian naive Bayes with per-feature variances and sklearn-style
/// variance smoothing.
class GaussianNb {
  public:
    void fit(const Matrix& x, const std::vector<int>& y, int num_classes) {
        num_classes_ = num_classes;
        const Eigen::Index d = x.cols();
        priors_.assign(static_cast<std::size_t>(num_classes), 0.0);
        means_ = Matrix::Zero(num_classes, d);
        vars_ = Matrix::Zero(num_classes, d);

        std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const int c = y[static_cast<std::size_t>(i)];
            ++counts[static_cast<std::size_t>(c)];
            means_.row(c) += x.row(i);
        }
        for (int c = 0; c < num_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                means_.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const int c = y[static_cast<std::size_t>(i)];
            vars_.row(c) += (x.row(i) - means_.row(c)).array().square().matrix();
        }
        double max_var = 0.0;
        const Vector mean_all = x.colwise().mean();
        for (Eigen::Index j = 0; j < d; ++j) {
            const double v = (x.col(j).array() - mean_all[j]).square().mean();
            max_var = std::max(max_var, v);
        }
        const double smoothing = 1e-9 * std::max(max_var, 1e-12);
        for (int c = 0; c < num_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                vars_.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
            vars_.row(c) = vars_.row(c).array() + smoothing;
            priors_[static_cast<std::size_t>(c)] =
                static_cast<double>(counts[static_cast<std::size_t>(c)]) /
                static_cast<double>(x.rows());
        }
    }

    std::vector<double> predict_proba(const Vector& x) const {
        if (x.size() != means_.cols()) throw DimensionError("GaussianNb: dimension mismatch");
        std::vector<double> log_post(static_cast<std::size_t>(num_classes_),
                                     -std::numeric_limits<double>::infinity());
        for (int c = 0; c < num_classes_; ++c) {
            if (priors_[static_cast<std::size_t>(c)] == 0.0) continue;
            double lp = std::log(priors_[static_cast<std::size_t>(c)]);
            for (Eigen::Index j = 0; j < x.size(); ++j) {
                const double var = vars_(c, j);
                const double diff = x[j] - means_(c, j);
                lp += -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
            }
            log_post[static_cast<std::size_t>(c)] = lp;
        }
        const double peak = *std::max_element(log_post.begin(), log_post.end());
        std::vector<double> proba(log_post.size(), 0.0);
        double total = 0.0;
        for (std::size_t c = 0; c < proba.size(); ++c) {
            if (std::isfinite(log_post[c])) {
                proba[c] = std::exp(log_post[c] - peak);
                total += proba[c];
            }
        }
        for (double& p : proba) p /= total;
        return proba;
    }

    const std::vector<double>& priors() const { return priors_; }
    const Matrix& means() const { return means_; }
    const Matrix& vars() const { return vars_; }
    int num_classes() const { return num_classes_; }
    void restore(std::vector<double> priors, Matrix means, Matrix vars, int num_classes) {
        priors_ = std::move(priors);
        means_ = std::move(means);
        vars_ = std::move(vars);
        num_classes_ = num_classes;
    }

  private:
    int num_classes_ = 0;
    std::vector<double> priors_;
    Matrix means_, vars_;
};

}  // namespace qubosel::ml
