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

#include <span>
#include <vector>

#include "qubosel/optimize.hpp"
#include "qubosel/qubo.hpp"
#include "qubosel/rng.hpp"
#include "qubosel/solvers/types.hpp"
#include "qubosel/statevector.hpp"

namespace qubosel {

/// Optimized final state of a variational run plus its exact expectation.
struct VariationalOutcome {
    State state;
    double expectation = 0.0;
    std::vector<double> angles;
    int evals = 0;
};

/// |+>^N followed by `reps` alternating cost and mixer layers.  Angles are
/// laid out as (gamma_1..gamma_reps, beta_1..beta_reps); the cost layer uses
/// the Ising form (RZ(2 gamma h_i), RZZ(2 gamma J_ij)) and the mixer RX(2 beta).
inline State qaoa_state(const IsingModel& ising, std::span<const double> angles, int reps) {
    State s(ising.num_spins);
    for (int q = 0; q < ising.num_spins; ++q) s.h(q);
    for (int r = 0; r < reps; ++r) {
        const double gamma = angles[static_cast<std::size_t>(r)];
        const double beta = angles[static_cast<std::size_t>(reps + r)];
        for (int i = 0; i < ising.num_spins; ++i) {
            const double h = ising.field[static_cast<std::size_t>(i)];
            if (h != 0.0) s.rz(i, 2.0 * gamma * h);
        }
        for (const auto& [key, j] : ising.coupling) {
            s.rzz(key.first, key.second, 2.0 * gamma * j);
        }
        for (int q = 0; q < ising.num_spins; ++q) s.rx(q, 2.0 * beta);
    }
    return s;
}

/// One full variational optimization against the exact diagonal expectation.
inline VariationalOutcome optimize_qaoa(const QuboProblem& p, QaoaConfig config, Rng& rng) {
    config = resolve_qaoa(config, p);
    const IsingModel ising = to_ising(p);
    const std::vector<double> table = build_value_table(p);

    const Objective objective = [&](std::span<const double> angles) {
        const State s = qaoa_state(ising, angles, config.reps);
        return expectation_diagonal(s, table);
    };
    const OptimizeResult r = minimize_restarted(objective, 2 * config.reps, rng, config.optimizer);

    VariationalOutcome out{qaoa_state(ising, r.best_point, config.reps), r.best_value,
                           r.best_point, r.evals};
    return out;
}

/// Optimizes the angles, then reports the best of `shots` final samples.
inline RunResult run_qaoa(const QuboProblem& p, QaoaConfig config, std::uint64_t seed) {
    config = resolve_qaoa(config, p);
    Rng rng(seed);
    const VariationalOutcome out = optimize_qaoa(p, config, rng);

    RunResult best;
    best.kind = SolverKind::Qaoa;
    best.seed = seed;
    bool first = true;
    for (std::uint64_t idx : sample(out.state, config.shots, rng)) {
        Assignment x = assignment_from_mask(idx, p.num_vars());
        const double value = evaluate(p, x);
        if (first || value < best.objective) {
            best.objective = value;
            best.assignment = std::move(x);
            first = false;
        }
    }
    return best;
}

}  // namespace qubosel
