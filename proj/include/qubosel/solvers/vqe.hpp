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
#include "qubosel/solvers/qaoa.hpp"  // VariationalOutcome
#include "qubosel/solvers/types.hpp"
#include "qubosel/statevector.hpp"

namespace qubosel {

/// Hardware-efficient ansatz: `layers` repetitions of an RY rotation layer
/// followed by a CX chain (i -> i+1), closed by a final RY layer.
/// Takes N (layers + 1) angles.
inline State vqe_state(int num_qubits, std::span<const double> angles, int layers) {
    State s(num_qubits);
    std::size_t a = 0;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < num_qubits; ++q) s.ry(q, angles[a++]);
        for (int q = 0; q + 1 < num_qubits; ++q) s.cx(q, q + 1);
    }
    for (int q = 0; q < num_qubits; ++q) s.ry(q, angles[a++]);
    return s;
}

inline VariationalOutcome optimize_vqe(const QuboProblem& p, VqeConfig config, Rng& rng) {
    config = resolve_vqe(config, p);
    const int n = p.num_vars();
    const std::vector<double> table = build_value_table(p);

    const Objective objective = [&](std::span<const double> angles) {
        const State s = vqe_state(n, angles, config.layers);
        return expectation_diagonal(s, table);
    };
    const int dim = n * (config.layers + 1);
    const OptimizeResult r = minimize_restarted(objective, dim, rng, config.optimizer);

    VariationalOutcome out{vqe_state(n, r.best_point, config.layers), r.best_value, r.best_point,
                           r.evals};
    return out;
}

inline RunResult run_vqe(const QuboProblem& p, VqeConfig config, std::uint64_t seed) {
    config = resolve_vqe(config, p);
    Rng rng(seed);
    const VariationalOutcome out = optimize_vqe(p, config, rng);

    RunResult best;
    best.kind = SolverKind::Vqe;
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
