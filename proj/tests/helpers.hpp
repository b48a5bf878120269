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

// Test-only oracles.  Everything here recomputes results from dense
// representations, independently of the code paths under test.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qubosel/qubo.hpp"
#include "qubosel/rng.hpp"

namespace testing_oracles {

struct DenseQubo {
    int n = 0;
    double offset = 0.0;
    std::vector<double> a;               // n linear coefficients
    std::vector<std::vector<double>> b;  // upper-triangular couplers, b[i][j] for i<j
};

inline DenseQubo densify(const qubosel::QuboProblem& p) {
    DenseQubo d;
    d.n = p.num_vars();
    d.offset = p.offset();
    d.a.assign(d.n, 0.0);
    d.b.assign(d.n, std::vector<double>(d.n, 0.0));
    for (const auto& [i, v] : p.linear()) d.a[i] = v;
    for (const auto& [k, v] : p.quadratic()) d.b[k.first][k.second] = v;
    return d;
}

inline double naive_evaluate(const DenseQubo& d, const qubosel::Assignment& x) {
    double value = d.offset;
    for (int i = 0; i < d.n; ++i) {
        if (x[i]) value += d.a[i];
    }
    for (int i = 0; i < d.n; ++i) {
        for (int j = i + 1; j < d.n; ++j) {
            if (x[i] && x[j]) value += d.b[i][j];
        }
    }
    return value;
}

struct NaiveExtrema {
    double min_value;
    double max_value;
    std::vector<std::uint32_t> minimizers;
};

inline NaiveExtrema naive_extrema(const DenseQubo& d) {
    NaiveExtrema e{0.0, 0.0, {}};
    const std::uint64_t count = std::uint64_t{1} << d.n;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        const double v = naive_evaluate(d, qubosel::assignment_from_mask(mask, d.n));
        if (mask == 0 || v < e.min_value) {
            e.min_value = v;
            e.minimizers.assign(1, static_cast<std::uint32_t>(mask));
        } else if (v == e.min_value) {
            e.minimizers.push_back(static_cast<std::uint32_t>(mask));
        }
        if (mask == 0 || v > e.max_value) e.max_value = v;
    }
    return e;
}

inline void naive_mean_var(const std::vector<double>& xs, double* mean, double* var) {
    if (xs.empty()) {
        *mean = *var = 0.0;
        return;
    }
    double s = 0.0;
    for (double v : xs) s += v;
    *mean = s / static_cast<double>(xs.size());
    double acc = 0.0;
    for (double v : xs) acc += (v - *mean) * (v - *mean);
    *var = acc / static_cast<double>(xs.size());
}

inline qubosel::FeatureVector naive_features(const DenseQubo& d) {
    qubosel::FeatureVector f;
    f.n_vars = d.n;
    std::vector<double> lin, quad, all;
    for (int i = 0; i < d.n; ++i) {
        if (d.a[i] != 0.0) lin.push_back(d.a[i]);
    }
    for (int i = 0; i < d.n; ++i) {
        for (int j = i + 1; j < d.n; ++j) {
            if (d.b[i][j] != 0.0) quad.push_back(d.b[i][j]);
        }
    }
    all = lin;
    all.insert(all.end(), quad.begin(), quad.end());
    f.n_lin = static_cast<int>(lin.size());
    f.n_quad = static_cast<int>(quad.size());
    naive_mean_var(lin, &f.mean_lin, &f.var_lin);
    naive_mean_var(quad, &f.mean_quad, &f.var_quad);
    naive_mean_var(all, &f.mean_all, &f.var_all);
    return f;
}

inline qubosel::BoundPair naive_bounds(const DenseQubo& d) {
    qubosel::BoundPair b{d.offset, d.offset};
    for (int i = 0; i < d.n; ++i) {
        if (d.a[i] < 0.0) b.lower += d.a[i];
        else b.upper += d.a[i];
    }
    for (int i = 0; i < d.n; ++i) {
        for (int j = i + 1; j < d.n; ++j) {
            if (d.b[i][j] < 0.0) b.lower += d.b[i][j];
            else b.upper += d.b[i][j];
        }
    }
    return b;
}

inline int naive_value_qubits(long long lo, long long hi) {
    int m = 1;
    while (!(-(1LL << (m - 1)) <= lo && hi <= (1LL << (m - 1)) - 1)) ++m;
    return m;
}

/// Random sparse problem with coefficients uniform in [lo, hi].
inline qubosel::QuboProblem random_problem(qubosel::Rng& rng, int n, double density,
                                           double lo, double hi) {
    std::uniform_real_distribution<double> coeff(lo, hi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    qubosel::QuboProblem p(n, coeff(rng));
    for (int i = 0; i < n; ++i) {
        if (u01(rng) < density) p.add_linear(i, coeff(rng));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (u01(rng) < density) p.add_quadratic(i, j, coeff(rng));
        }
    }
    return p;
}

/// Random problem whose coefficients are signed powers of two; every scaling
/// in round_and_normalize is then exact in double precision.
inline qubosel::QuboProblem random_pow2_problem(qubosel::Rng& rng, int n) {
    std::uniform_int_distribution<int> expo(0, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    qubosel::QuboProblem p(n);
    auto draw = [&]() { return (sign(rng) ? 1.0 : -1.0) * std::pow(2.0, expo(rng)); };
    p.add_linear(0, draw());  // at least one term survives
    for (int i = 1; i < n; ++i) {
        if (u01(rng) < 0.6) p.add_linear(i, draw());
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (u01(rng) < 0.5) p.add_quadratic(i, j, draw());
        }
    }
    return p;
}

}  // namespace testing_oracles
