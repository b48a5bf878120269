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
#include <limits>
#include <vector>

#include "qubosel/errors.hpp"
#include "qubosel/ml/preprocessing.hpp"
#include "qubosel/rng.hpp"

namespace qubosel::ml {

struct TreeParams {
    int max_depth = 50;
    int min_samples_leaf = 1;
    int min_samples_split = 2;
    int max_features = 0;  // 0 = consider every feature at each split
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> class_counts;  // populated at leaves
};

/// CART classifier splitting on Gini impurity with midpoint thresholds.
class DecisionTree {
  public:
    void fit(const Matrix& x, const std::vector<int>& y, int num_classes,
             const TreeParams& params, Rng& rng, const std::vector<int>& sample_indices) {
        if (sample_indices.empty()) throw Error("DecisionTree: no training samples");
        num_classes_ = num_classes;
        num_features_ = static_cast<int>(x.cols());
        params_ = params;
        nodes_.clear();
        build(x, y, sample_indices, 0, rng);
    }

    void fit(const Matrix& x, const std::vector<int>& y, int num_classes,
             const TreeParams& params, Rng& rng) {
        std::vector<int> all(static_cast<std::size_t>(x.rows()));
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        fit(x, y, num_classes, params, rng, all);
    }

    const std::vector<double>& leaf_counts(const Vector& x) const {
        if (x.size() != num_features_) {
            throw DimensionError("DecisionTree: expected " + std::to_string(num_features_) +
                                 " features, got " + std::to_string(x.size()));
        }
        int node = 0;
        while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
            const TreeNode& n = nodes_[static_cast<std::size_t>(node)];
            node = x[n.feature] <= n.threshold ? n.left : n.right;
        }
        return nodes_[static_cast<std::size_t>(node)].class_counts;
    }

    std::vector<double> predict_proba(const Vector& x) const {
        const std::vector<double>& counts = leaf_counts(x);
        double total = 0.0;
        for (double c : counts) total += c;
        std::vector<double> proba(counts.size(), 0.0);
        for (std::size_t c = 0; c < counts.size(); ++c) proba[c] = counts[c] / total;
        return proba;
    }

    int predict(const Vector& x) const {
        const std::vector<double>& counts = leaf_counts(x);
        int best = 0;
        for (std::size_t c = 1; c < counts.size(); ++c) {
            if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
        }
        return best;
    }

    int depth() const {
        return nodes_.empty() ? 0 : depth_of(0);
    }

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    int num_classes() const { return num_classes_; }
    int num_features() const { return num_features_; }
    void restore(std::vector<TreeNode> nodes, int num_classes, int num_features) {
        nodes_ = std::move(nodes);
        num_classes_ = num_classes;
        num_features_ = num_features;
    }

  private:
    int depth_of(int node) const {
        const TreeNode& n = nodes_[static_cast<std::size_t>(node)];
        if (n.feature < 0) return 0;
        return 1 + std::max(depth_of(n.left), depth_of(n.right));
    }

    static double gini(const std::vector<double>& counts, double total) {
        double g = 1.0;
        for (double c : counts) {
            const double p = c / total;
            g -= p * p;
        }
        return g;
    }

    int make_leaf(const std::vector<double>& counts) {
        TreeNode leaf;
        leaf.class_counts = counts;
        nodes_.push_back(std::move(leaf));
        return static_cast<int>(nodes_.size()) - 1;
    }

    std::vector<int> candidate_features(Rng& rng) const {
        std::vector<int> features(static_cast<std::size_t>(num_features_));
        for (int f = 0; f < num_features_; ++f) features[static_cast<std::size_t>(f)] = f;
        if (params_.max_features <= 0 || params_.max_features >= num_features_) return features;
        // Partial Fisher-Yates, then sorted so the scan order is stable.
        for (int i = 0; i < params_.max_features; ++i) {
            const int j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                   num_features_ - i));
            std::swap(features[static_cast<std::size_t>(i)], features[static_cast<std::size_t>(j)]);
        }
        features.resize(static_cast<std::size_t>(params_.max_features));
        std::sort(features.begin(), features.end());
        return features;
    }

    int build(const Matrix& x, const std::vector<int>& y, const std::vector<int>& samples,
              int depth, Rng& rng) {
        std::vector<double> counts(static_cast<std::size_t>(num_classes_), 0.0);
        for (int i : samples) counts[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])] += 1.0;
        const double total = static_cast<double>(samples.size());

        const bool pure = std::count_if(counts.begin(), counts.end(),
                                        [](double c) { return c > 0.0; }) <= 1;
        if (pure || depth >= params_.max_depth ||
            static_cast<int>(samples.size()) < params_.min_samples_split) {
            return make_leaf(counts);
        }

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_impurity = std::numeric_limits<double>::infinity();
        std::vector<std::pair<double, int>> column(samples.size());

        for (int f : candidate_features(rng)) {
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const int row = samples[i];
                column[i] = {x(row, f), y[static_cast<std::size_t>(row)]};
            }
            std::sort(column.begin(), column.end());

            std::vector<double> left(static_cast<std::size_t>(num_classes_), 0.0);
            std::vector<double> right = counts;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                const auto& [value, label] = column[i];
                left[static_cast<std::size_t>(label)] += 1.0;
                right[static_cast<std::size_t>(label)] -= 1.0;
                if (value == column[i + 1].first) continue;  // no boundary here
                const double nl = static_cast<double>(i + 1);
                const double nr = total - nl;
                if (nl < params_.min_samples_leaf || nr < params_.min_samples_leaf) continue;
                const double impurity = (nl * gini(left, nl) + nr * gini(right, nr)) / total;
                if (impurity < best_impurity) {
                    best_impurity = impurity;
                    best_feature = f;
                    best_threshold = (value + column[i + 1].first) / 2.0;
                }
            }
        }

        if (best_feature < 0) return make_leaf(counts);

        std::vector<int> left_samples, right_samples;
        for (int i : samples) {
            if (x(i, best_feature) <= best_threshold) left_samples.push_back(i);
            else right_samples.push_back(i);
        }

        const int node = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[static_cast<std::size_t>(node)].feature = best_feature;
        nodes_[static_cast<std::size_t>(node)].threshold = best_threshold;
        const int left = build(x, y, left_samples, depth + 1, rng);
        const int right = build(x, y, right_samples, depth + 1, rng);
        nodes_[static_cast<std::size_t>(node)].left = left;
        nodes_[static_cast<std::size_t>(node)].right = right;
        return node;
    }

    int num_classes_ = 0;
    int num_features_ = 0;
    TreeParams params_;
    std::vector<TreeNode> nodes_;
};

}  // namespace qubosel::ml
