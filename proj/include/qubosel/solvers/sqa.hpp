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

/**
 * Path-integral Monte Carlo simulated quantum annealing: P coupled replicas
 * of the Ising-form problem with a transverse field decreasing linearly from
 * gamma_start to gamma_end.  Each replica runs full-energy Metropolis at
 * temperature T and is tied to its imaginary-time neighbours by the
 * ferromagnetic coupling
 *
 *     J_perp(Gamma) = -(T / 2) ln tanh(Gamma / T),
 *
 * which is ~0 at the opening field and grows into consensus locking as the
 * field anneals away.  A transverse field of exactly zero decouples the
 * replicas into independent Metropolis chains at temperature T.
 * Returns the best replica assignment visited.
 */
inline RunResult run_qa_proxy(const QuboProblem& p, QaProxyConfig config, std::uint64_t seed) {
    config = resolve_qa_proxy(config, p);
    Rng rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    const int n = p.num_vars();
    const int slices = config.trotter_slices;
    const IsingModel ising = to_ising(p);

    std::vector<std::vector<std::pair<int, double>>> neighbors(static_cast<std::size_t>(n));
    for (const auto& [key, j] : ising.coupling) {
        neighbors[static_cast<std::size_t>(key.first)].emplace_back(key.second, j);
        neighbors[static_cast<std::size_t>(key.second)].emplace_back(key.first, j);
    }

    // spins[k][i] in {-1, +1}; x_i = (1 - z_i)/2
    std::vector<std::vector<int>> spins(static_cast<std::size_t>(slices), std::vector<int>(n));
    for (auto& replica : spins) {
        for (int& s : replica) s = (rng() & 1u) ? 1 : -1;
    }

    auto replica_assignment = [n](const std::vector<int>& replica) {
        Assignment x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = replica[i] < 0 ? 1 : 0;
        return x;
    };

    Assignment best = replica_assignment(spins[0]);
    double best_value = evaluate(p, best);
    for (const auto& replica : spins) {
        const Assignment x = replica_assignment(replica);
        const double v = evaluate(p, x);
        if (v < best_value) {
            best_value = v;
            best = x;
        }
    }

    const double temperature = config.temperature;
    const int sweeps = config.sweeps;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        const double frac =
            sweeps > 1 ? static_cast<double>(sweep) / static_cast<double>(sweeps - 1) : 0.0;
        const double gamma = config.gamma_start + (config.gamma_end - config.gamma_start) * frac;
        double j_perp = 0.0;
        if (gamma > 1e-12 && slices > 1) {
            j_perp = -0.5 * temperature * std::log(std::tanh(gamma / temperature));
        }

        for (int k = 0; k < slices; ++k) {
            auto& replica = spins[static_cast<std::size_t>(k)];
            const auto& up = spins[static_cast<std::size_t>((k + 1) % slices)];
            const auto& down = spins[static_cast<std::size_t>((k + slices - 1) % slices)];
            for (int i = 0; i < n; ++i) {
                double local = ising.field[static_cast<std::size_t>(i)];
                for (const auto& [j, v] : neighbors[static_cast<std::size_t>(i)]) {
                    local += v * replica[j];
                }
                double delta = -2.0 * replica[i] * local;
                if (slices > 1) {
                    delta += 2.0 * j_perp * replica[i] * (up[i] + down[i]);
                }
                if (delta <= 0.0 || u01(rng) < std::exp(-delta / temperature)) {
                    replica[i] = -replica[i];
                }
            }
        }

        for (const auto& replica : spins) {
            const Assignment x = replica_assignment(replica);
            const double v = evaluate(p, x);
            if (v < best_value) {
                best_value = v;
                best = x;
            }
        }
    }

    RunResult r;
    r.assignment = std::move(best);
    r.objective = evaluate(p, r.assignment);
    r.kind = SolverKind::QaProxy;
    r.seed = seed;
    return r;
}

}  // namespace qubosel
