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

#include <vector>

#include <Eigen/Dense>

#include "qubosel/errors.hpp"

namespace qubosel::ml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Per-feature min-max scaling onto [0, 1]; constant features map to 0.
class MinMaxScaler {
  public:
    void fit(const Matrix& x) {
        if (x.rows() < 1) throw Error("MinMaxScaler: empty matrix");
        mins_ = x.colwise().minCoeff();
        maxs_ = x.colwise().maxCoeff();
    }

    Matrix transform(const Matrix& x) const {
        check_dim(x.cols());
        Matrix out(x.rows(), x.cols());
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double range = maxs_[j] - mins_[j];
            if (range == 0.0) {
                out.col(j).setZero();
            } else {
                out.col(j) = (x.col(j).array() - mins_[j]) / range;
            }
        }
        return out;
    }

    Vector transform_row(const Vector& x) const {
        check_dim(x.size());
        Vector out(x.size());
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double range = maxs_[j] - mins_[j];
            out[j] = range == 0.0 ? 0.0 : (x[j] - mins_[j]) / range;
        }
        return out;
    }

    const Vector& mins() const { return mins_; }
    const Vector& maxs() const { return maxs_; }
    void restore(Vector mins, Vector maxs) {
        mins_ = std::move(mins);
        maxs_ = std::move(maxs);
    }

  private:
    void check_dim(Eigen::Index cols) const {
        if (cols != mins_.size()) {
            throw DimensionError("MinMaxScaler: expected " + std::to_string(mins_.size()) +
                                 " features, got " + std::to_string(cols));
        }
    }

    Vector mins_, maxs_;
};

namespace detail {

/// Deterministic sign convention: the largest-magnitude entry of each
/// component is made positive.
inline void fix_signs(Matrix& components) {
    for (Eigen::Index c = 0; c < components.cols(); ++c) {
        Eigen::Index arg = 0;
        components.col(c).cwiseAbs().maxCoeff(&arg);
        if (components(arg, c) < 0.0) components.col(c) = -components.col(c);
    }
}

}  // namespace detail

/// Principal component analysis of the (population) covariance.
class Pca {
  public:
    void fit(const Matrix& x, int k) {
        if (k < 1 || k > x.cols()) {
            throw Error("Pca: component count " + std::to_string(k) + " outside [1, " +
                        std::to_string(x.cols()) + "]");
        }
        if (x.rows() < 2) throw Error("Pca: need at least two samples");
        mean_ = x.colwise().mean();
        const Matrix centered = x.rowwise() - mean_.transpose();
        const Matrix cov = centered.transpose() * centered / static_cast<double>(x.rows());
        const Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
        if (eig.info() != Eigen::Success) throw Error("Pca: eigendecomposition failed");

        const Vector values = eig.eigenvalues();  // ascending
        double total = 0.0;
        for (Eigen::Index i = 0; i < values.size(); ++i) total += std::max(0.0, values[i]);
        components_.resize(x.cols(), k);
        explained_variance_ratio_.resize(k);
        for (int c = 0; c < k; ++c) {
            const Eigen::Index src = values.size() - 1 - c;
            components_.col(c) = eig.eigenvectors().col(src);
            explained_variance_ratio_[c] =
                total > 0.0 ? std::max(0.0, values[src]) / total : 0.0;
        }
        detail::fix_signs(components_);
    }

    Matrix transform(const Matrix& x) const {
        return (x.rowwise() - mean_.transpose()) * components_;
    }
    Vector transform_row(const Vector& x) const {
        return components_.transpose() * (x - mean_);
    }
    Matrix inverse_transform(const Matrix& projected) const {
        return (projected * components_.transpose()).rowwise() + mean_.transpose();
    }

    const Matrix& components() const { return components_; }
    const Vector& mean() const { return mean_; }
    const Vector& explained_variance_ratio() const { return explained_variance_ratio_; }
    void restore(Vector mean, Matrix components, Vector ratios) {
        mean_ = std::move(mean);
        components_ = std::move(components);
        explained_variance_ratio_ = std::move(ratios);
    }

  private:
    Vector mean_;
    Matrix components_;  // d x k
    Vector explained_variance_ratio_;
};

/// Fisher discriminant directions from the generalized eigenproblem of the
/// between/within class scatter; the within scatter is ridge-regularized.
class Lda {
  public:
    void fit(const Matrix& x, const std::vector<int>& y, int k) {
        const Eigen::Index n = x.rows(), d = x.cols();
        if (n < 2 || static_cast<Eigen::Index>(y.size()) != n) {
            throw DimensionError("Lda: label/sample mismatch");
        }
        int num_classes = 0;
        for (int label : y) num_classes = std::max(num_classes, label + 1);
        if (k < 1 || k > num_classes - 1) {
            throw Error("Lda: component count " + std::to_string(k) +
                        " must lie in [1, classes-1] = [1, " + std::to_string(num_classes - 1) +
                        "]");
        }

        std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
        for (int label : y) ++counts[static_cast<std::size_t>(label)];
        for (int c = 0; c < num_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0 &&
                counts[static_cast<std::size_t>(c)] < 2) {
                throw Error("Lda: class " + std::to_string(c) + " has fewer than 2 samples");
            }
        }

        const Vector global_mean = x.colwise().mean();
        Matrix means = Matrix::Zero(num_classes, d);
        for (Eigen::Index i = 0; i < n; ++i) means.row(y[static_cast<std::size_t>(i)]) += x.row(i);
        for (int c = 0; c < num_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                means.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }

        Matrix within = Matrix::Identity(d, d) * 1e-6;
        Matrix between = Matrix::Zero(d, d);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Vector diff = x.row(i).transpose() - means.row(y[static_cast<std::size_t>(i)]).transpose();
            within += diff * diff.transpose();
        }
        for (int c = 0; c < num_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) continue;
            const Vector diff = means.row(c).transpose() - global_mean;
            between += static_cast<double>(counts[static_cast<std::size_t>(c)]) * diff *
                       diff.transpose();
        }

        const Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(between, within);
        if (eig.info() != Eigen::Success) throw Error("Lda: eigendecomposition failed");
        projection_.resize(d, k);
        for (int c = 0; c < k; ++c) {
            projection_.col(c) = eig.eigenvectors().col(d - 1 - c);  // descending
        }
        detail::fix_signs(projection_);
    }

    Matrix transform(const Matrix& x) const { return x * projection_; }
    Vector transform_row(const Vector& x) const { return projection_.transpose() * x; }

    const Matrix& projection() const { return projection_; }
    void restore(Matrix projection) { projection_ = std::move(projection); }

  private:
    Matrix projection_;  // d x k
};

}  // namespace qubosel::ml
