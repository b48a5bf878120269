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

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qubosel/errors.hpp"
#include "qubosel/ml/classifiers.hpp"
#include "qubosel/ml/decision_tree.hpp"
#include "qubosel/ml/preprocessing.hpp"

namespace qubosel::ml {

enum class ClassifierKind { RandomForest, DecisionTree, Knn, GaussianNb };
enum class ProjectionKind { None, Pca, Lda };

inline std::string classifier_name(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::RandomForest: return "random_forest";
        case ClassifierKind::DecisionTree: return "decision_tree";
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::GaussianNb: return "gaussian_nb";
    }
    throw Error("classifier_name: unknown classifier");
}

inline ClassifierKind classifier_from_name(const std::string& name) {
    if (name == "random_forest" || name == "rf") return ClassifierKind::RandomForest;
    if (name == "decision_tree" || name == "dt") return ClassifierKind::DecisionTree;
    if (name == "knn") return ClassifierKind::Knn;
    if (name == "gaussian_nb" || name == "nb") return ClassifierKind::GaussianNb;
    throw Error("unknown classifier: " + name);
}

/// Preprocessing + classifier recipe.  The projection step is "none",
/// "pca<k>", or "lda<k>"; transform order is scale, project, classify.
struct PipelineSpec {
    ProjectionKind projection = ProjectionKind::None;
    int components = 0;
    ClassifierKind classifier = ClassifierKind::RandomForest;
    ForestParams forest;
    TreeParams tree;
    int knn_k = 5;

    std::string preprocessing_name() const {
        switch (projection) {
            case ProjectionKind::None: return "none";
            case ProjectionKind::Pca: return "pca" + std::to_string(components);
            case ProjectionKind::Lda: return "lda" + std::to_string(components);
        }
        throw Error("preprocessing_name: unknown projection");
    }

    static PipelineSpec with_preprocessing(const std::string& name, PipelineSpec base);
    static PipelineSpec with_preprocessing(const std::string& name) {
        return with_preprocessing(name, PipelineSpec{});
    }
};

inline PipelineSpec PipelineSpec::with_preprocessing(const std::string& name, PipelineSpec base) {
    if (name == "none") {
        base.projection = ProjectionKind::None;
        base.components = 0;
        return base;
    }
    if (name.starts_with("pca") || name.starts_with("lda")) {
        base.projection = name.starts_with("pca") ? ProjectionKind::Pca : ProjectionKind::Lda;
        try {
            base.components = std::stoi(name.substr(3));
        } catch (const std::exception&) {
            throw Error("bad preprocessing spec: " + name);
        }
        if (base.components < 1) throw Error("bad preprocessing spec: " + name);
        return base;
    }
    throw Error("unknown preprocessing: " + name + " (expected none|pca<k>|lda<k>)");
}

/// Fitted scale -> project -> classify pipeline over raw feature vectors.
class TrainedModel {
  public:
    MinMaxScaler scaler;
    ProjectionKind projection_kind = ProjectionKind::None;
    Pca pca;
    Lda lda;
    ClassifierKind classifier_kind = ClassifierKind::RandomForest;
    RandomForest forest;
    DecisionTree tree;
    KnnClassifier knn;
    GaussianNb gnb;
    std::vector<std::string> class_names;
    int input_dim = 0;

    Vector preprocess(const Vector& raw) const {
        if (raw.size() != input_dim) {
            throw DimensionError("predict: model expects " + std::to_string(input_dim) +
                                 " features, got " + std::to_string(raw.size()));
        }
        Vector x = scaler.transform_row(raw);
        switch (projection_kind) {
            case ProjectionKind::None: return x;
            case ProjectionKind::Pca: return pca.transform_row(x);
            case ProjectionKind::Lda: return lda.transform_row(x);
        }
        throw Error("preprocess: unknown projection");
    }

    std::vector<double> predict_proba(const Vector& raw) const {
        const Vector x = preprocess(raw);
        switch (classifier_kind) {
            case ClassifierKind::RandomForest: return forest.predict_proba(x);
            case ClassifierKind::DecisionTree: return tree.predict_proba(x);
            case ClassifierKind::Knn: return knn.predict_proba(x);
            case ClassifierKind::GaussianNb: return gnb.predict_proba(x);
        }
        throw Error("predict_proba: unknown classifier");
    }

    /// Argmax class id; exact ties fall to the smaller id, matching the
    /// labeling priority order.
    int predict(const Vector& raw) const {
        const std::vector<double> proba = predict_proba(raw);
        int best = 0;
        for (std::size_t c = 1; c < proba.size(); ++c) {
            if (proba[c] > proba[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
        }
        return best;
    }
};

/**
 * Fits the pipeline on rows of X with integer class ids 0..C-1.  Class ids
 * index `class_names`; smaller ids win prediction ties.
 */
inline TrainedModel train(const Matrix& x, const std::vector<int>& y, const PipelineSpec& spec,
                          std::uint64_t seed, std::vector<std::string> class_names) {
    if (x.rows() < 1) throw Error("train: empty training set");
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw DimensionError("train: label count does not match sample count");
    }
    const int num_classes = static_cast<int>(class_names.size());
    if (std::set<int>(y.begin(), y.end()).size() < 2) {
        throw Error("train: need at least two classes present");
    }

    TrainedModel model;
    model.class_names = std::move(class_names);
    model.input_dim = static_cast<int>(x.cols());
    model.scaler.fit(x);
    Matrix scaled = model.scaler.transform(x);

    model.projection_kind = spec.projection;
    Matrix projected;
    switch (spec.projection) {
        case ProjectionKind::None: projected = std::move(scaled); break;
        case ProjectionKind::Pca:
            model.pca.fit(scaled, spec.components);
            projected = model.pca.transform(scaled);
            break;
        case ProjectionKind::Lda:
            model.lda.fit(scaled, y, spec.components);
            projected = model.lda.transform(scaled);
            break;
    }

    model.classifier_kind = spec.classifier;
    Rng rng(derive_seed(seed, 0xc1a551f1e5ull));
    switch (spec.classifier) {
        case ClassifierKind::RandomForest:
            model.forest.fit(projected, y, num_classes, spec.forest, seed);
            break;
        case ClassifierKind::DecisionTree:
            model.tree.fit(projected, y, num_classes, spec.tree, rng);
            break;
        case ClassifierKind::Knn:
            model.knn.fit(projected, y, num_classes, spec.knn_k);
            break;
        case ClassifierKind::GaussianNb:
            model.gnb.fit(projected, y, num_classes);
            break;
    }
    return model;
}

// ---------------------------------------------------------------------------
// Model file (JSON, versioned).
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

inline nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

inline Vector vector_from_json(const nlohmann::json& j) {
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

inline nlohmann::json tree_to_json(const DecisionTree& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : tree.nodes()) {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"class_counts", n.class_counts}});
    }
    return {{"nodes", std::move(nodes)},
            {"num_classes", tree.num_classes()},
            {"num_features", tree.num_features()}};
}

inline DecisionTree tree_from_json(const nlohmann::json& j) {
    std::vector<TreeNode> nodes;
    for (const auto& n : j.at("nodes")) {
        TreeNode node;
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<int>();
        node.right = n.at("right").get<int>();
        node.class_counts = n.at("class_counts").get<std::vector<double>>();
        nodes.push_back(std::move(node));
    }
    DecisionTree tree;
    tree.restore(std::move(nodes), j.at("num_classes").get<int>(),
                 j.at("num_features").get<int>());
    return tree;
}

}  // namespace detail

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json model_to_json(const TrainedModel& m) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["class_names"] = m.class_names;
    j["input_dim"] = m.input_dim;
    j["scaler"] = {{"min", detail::vector_to_json(m.scaler.mins())},
                   {"max", detail::vector_to_json(m.scaler.maxs())}};
    switch (m.projection_kind) {
        case ProjectionKind::None: j["projection"] = {{"kind", "none"}}; break;
        case ProjectionKind::Pca:
            j["projection"] = {{"kind", "pca"},
                               {"mean", detail::vector_to_json(m.pca.mean())},
                               {"matrix", detail::matrix_to_json(m.pca.components())},
                               {"explained_variance_ratio",
                                detail::vector_to_json(m.pca.explained_variance_ratio())}};
            break;
        case ProjectionKind::Lda:
            j["projection"] = {{"kind", "lda"},
                               {"matrix", detail::matrix_to_json(m.lda.projection())}};
            break;
    }
    nlohmann::json clf;
    clf["kind"] = classifier_name(m.classifier_kind);
    switch (m.classifier_kind) {
        case ClassifierKind::RandomForest: {
            nlohmann::json trees = nlohmann::json::array();
            for (const DecisionTree& t : m.forest.trees()) trees.push_back(detail::tree_to_json(t));
            clf["trees"] = std::move(trees);
            clf["num_classes"] = m.forest.num_classes();
            break;
        }
        case ClassifierKind::DecisionTree: clf["tree"] = detail::tree_to_json(m.tree); break;
        case ClassifierKind::Knn:
            clf["k"] = m.knn.k();
            clf["train_x"] = detail::matrix_to_json(m.knn.train_x());
            clf["train_y"] = m.knn.train_y();
            clf["num_classes"] = m.knn.num_classes();
            break;
        case ClassifierKind::GaussianNb:
            clf["priors"] = m.gnb.priors();
            clf["means"] = detail::matrix_to_json(m.gnb.means());
            clf["vars"] = detail::matrix_to_json(m.gnb.vars());
            clf["num_classes"] = m.gnb.num_classes();
            break;
    }
    j["classifier"] = std::move(clf);
    return j;
}

inline TrainedModel model_from_json(const nlohmann::json& j, const std::string& where = "model") {
    try {
        if (j.at("format_version").get<int>() != kModelFormatVersion) {
            throw ParseError(where + ": unsupported format_version");
        }
        TrainedModel m;
        m.class_names = j.at("class_names").get<std::vector<std::string>>();
        m.input_dim = j.at("input_dim").get<int>();
        m.scaler.restore(detail::vector_from_json(j.at("scaler").at("min")),
                         detail::vector_from_json(j.at("scaler").at("max")));
        const std::string proj = j.at("projection").at("kind").get<std::string>();
        if (proj == "none") {
            m.projection_kind = ProjectionKind::None;
        } else if (proj == "pca") {
            m.projection_kind = ProjectionKind::Pca;
            m.pca.restore(detail::vector_from_json(j.at("projection").at("mean")),
                          detail::matrix_from_json(j.at("projection").at("matrix")),
                          detail::vector_from_json(
                              j.at("projection").at("explained_variance_ratio")));
        } else if (proj == "lda") {
            m.projection_kind = ProjectionKind::Lda;
            m.lda.restore(detail::matrix_from_json(j.at("projection").at("matrix")));
        } else {
            throw ParseError(where + ": unknown projection kind " + proj);
        }
        const auto& clf = j.at("classifier");
        m.classifier_kind = classifier_from_name(clf.at("kind").get<std::string>());
        switch (m.classifier_kind) {
            case ClassifierKind::RandomForest: {
                std::vector<DecisionTree> trees;
                for (const auto& t : clf.at("trees")) trees.push_back(detail::tree_from_json(t));
                m.forest.restore(std::move(trees), clf.at("num_classes").get<int>());
                break;
            }
            case ClassifierKind::DecisionTree:
                m.tree = detail::tree_from_json(clf.at("tree"));
                break;
            case ClassifierKind::Knn:
                m.knn.restore(detail::matrix_from_json(clf.at("train_x")),
                              clf.at("train_y").get<std::vector<int>>(),
                              clf.at("num_classes").get<int>(), clf.at("k").get<int>());
                break;
            case ClassifierKind::GaussianNb:
                m.gnb.restore(clf.at("priors").get<std::vector<double>>(),
                              detail::matrix_from_json(clf.at("means")),
                              detail::matrix_from_json(clf.at("vars")),
                              clf.at("num_classes").get<int>());
                break;
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline void save_model(const TrainedModel& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_model: cannot open " + path.string());
    out << model_to_json(m).dump(2) << '\n';
}

inline TrainedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_model: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return model_from_json(j, path.string());
}

}  // namespace qubosel::ml
