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

#include <cmath>
#include <vector>

#include "qubosel/qubo.hpp"
#include "qubosel/rng.hpp"
#include "qubosel/solvers/types.hpp"

namespace qubosel {

namespace detail {

/// Per-variable neighbour lists for O(deg) single-flip energy deltas.
struct FlipTable {
    std::vector<double> linear;
    std::vector<std::vector<std::pair<int, double>>> neighbors;

    explicit FlipTable(const QuboProblem& p)
        : linear(static_cast<std::size_t>(p.num_vars()), 0.0),
          neighbors(static_cast<std::size_t>(p.num_vars())) {
        for (const auto& [i, v] : p.linear()) linear[static_cast<std::size_t>(i)] = v;
        for (const auto& [key, v] : p.quadratic()) {
            neighbors[static_cast<std::size_t>(key.first)].emplace_back(key.second, v);
            neighbors[static_cast<std::size_t>(key.second)].emplace_back(key.first, v);
        }
    }

    /// Objective change from flipping bit i of x.
    double delta(const Assignment& x, int i) const {
        double local = linear[static_cast<std::size_t>(i)];
        for (const auto& [j, v] : neighbors[static_cast<std::size_t>(i)]) {
            if (x[static_cast<std::size_t>(j)]) local += v;
        }
        return x[static_cast<std::size_t>(i)] ? -local : local;
    }
};

inline Assignment random_assignment(int n, Rng& rng) {
    Assignment x(static_cast<std::size_t>(n));
    for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1u);
    return x;
}

}  // namespace detail

/**
 * Metropolis single-flip simulated annealing under a geometric temperature
 * schedule; returns the best assignment visited.
 */
inline RunResult run_sa(const QuboProblem& p, SaConfig config, std::uint64_t seed) {
    config = resolve_sa(config, p);
    Rng rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int n = p.num_vars();
    const detail::FlipTable table(p);

    Assignment x = detail::random_assignment(n, rng);
    double current = evaluate(p, x);
    Assignment best = x;
    double best_value = current;

    const int sweeps = config.sweeps;
    const double ratio =
        sweeps > 1 ? std::pow(config.temp_end / config.temp_start,
                              1.0 / static_cast<double>(sweeps - 1))
                   : 1.0;
    double temperature = config.temp_start;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (int i = 0; i < n; ++i) {
            const double d = table.delta(x, i);
            if (d <= 0.0 || u01(rng) < std::exp(-d / temperature)) {
                x[static_cast<std::size_t>(i)] ^= 1u;
                current += d;
                if (current < best_value) {
                    best_value = current;
                    best = x;
                }
            }
        }
        temperature *= ratio;
    }

    RunResult r;
    r.assignment = std::move(best);
    r.objective = evaluate(p, r.assignment);
    r.kind = SolverKind::Sa;
    r.seed = seed;
    return r;
}

}  // namespace qubosel
