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
#include <functional>
#include <span>
#include <vector>

#include "qubosel/errors.hpp"
#include "qubosel/rng.hpp"

namespace qubosel {

/// Budget and tolerance of the derivative-free optimizer.  max_evals = 0
/// selects an automatic budget proportional to the dimension.
struct OptimizerConfig {
    int max_evals = 0;
    double tol = 1e-6;

    int resolved_max_evals(int dim) const {
        return max_evals > 0 ? max_evals : 120 * dim + 80;
    }
};

struct OptimizeResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int evals = 0;
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

/// One Nelder-Mead descent from x0.  Stops on simplex collapse (value
/// spread below tol) or when the evaluation budget is exhausted.
inline OptimizeResult nelder_mead(const Objective& f, std::span<const double> x0,
                                  double step, double tol, int max_evals) {
    const int d = static_cast<int>(x0.size());
    if (d < 1) throw Error("nelder_mead: dimension must be >= 1");
    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> xs(static_cast<std::size_t>(d) + 1,
                                        std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> fs(static_cast<std::size_t>(d) + 1);
    for (int i = 1; i <= d; ++i) xs[i][i - 1] += step;
    for (int i = 0; i <= d; ++i) fs[i] = eval(xs[i]);

    std::vector<int> order(static_cast<std::size_t>(d) + 1);
    while (evals < max_evals) {
        for (int i = 0; i <= d; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], worst = order[d], second_worst = order[d - 1];
        if (fs[worst] - fs[best] < tol) break;

        std::vector<double> centroid(d, 0.0);
        for (int i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (int k = 0; k < d; ++k) centroid[k] += xs[i][k];
        }
        for (int k = 0; k < d; ++k) centroid[k] /= d;

        auto blend = [&](double coef) {
            std::vector<double> x(d);
            for (int k = 0; k < d; ++k) x[k] = centroid[k] + coef * (centroid[k] - xs[worst][k]);
            return x;
        };

        const std::vector<double> reflected = blend(alpha);
        const double f_reflected = eval(reflected);
        if (f_reflected < fs[best]) {
            const std::vector<double> expanded = blend(gamma);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                xs[worst] = expanded;
                fs[worst] = f_expanded;
            } else {
                xs[worst] = reflected;
                fs[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fs[second_worst]) {
            xs[worst] = reflected;
            fs[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < fs[worst];
        const std::vector<double> contracted = blend(outside ? rho : -rho);
        const double f_contracted = eval(contracted);
        if (f_contracted < std::min(f_reflected, fs[worst])) {
            xs[worst] = contracted;
            fs[worst] = f_contracted;
            continue;
        }
        // Shrink toward the best vertex.
        for (int i = 0; i <= d; ++i) {
            if (i == best) continue;
            for (int k = 0; k < d; ++k) xs[i][k] = xs[best][k] + sigma * (xs[i][k] - xs[best][k]);
            fs[i] = eval(xs[i]);
            if (evals >= max_evals) break;
        }
    }

    OptimizeResult out;
    std::size_t arg = 0;
    for (std::size_t i = 1; i < fs.size(); ++i) {
        if (fs[i] < fs[arg]) arg = i;
    }
    out.best_point = xs[arg];
    out.best_value = fs[arg];
    out.evals = evals;
    return out;
}

}  // namespace detail

/**
 * Restarted Nelder-Mead over a box.  Each descent starts from a seeded
 * uniform point in [lo, hi]^dim and runs until it collapses; remaining budget
 * funds further restarts.  Returns the best point seen across all descents.
 */
inline OptimizeResult minimize_restarted(const Objective& f, int dim, Rng& rng,
                                         const OptimizerConfig& config, double lo = -3.141592653589793,
                                         double hi = 3.141592653589793, double step = 0.5) {
    const int budget = config.resolved_max_evals(dim);
    std::uniform_real_distribution<double> start(lo, hi);

    OptimizeResult best;
    best.best_value = std::numeric_limits<double>::infinity();
    int used = 0;
    while (used < budget) {
        std::vector<double> x0(static_cast<std::size_t>(dim));
        for (double& v : x0) v = start(rng);
        const OptimizeResult r =
            detail::nelder_mead(f, x0, step, config.tol, budget - used);
        used += r.evals;
        if (r.best_value < best.best_value) {
            best.best_point = r.best_point;
            best.best_value = r.best_value;
        }
    }
    best.evals = used;
    return best;
}

}  // namespace qubosel
