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

#include <future>
#include <vector>

#include "qubosel/qubo.hpp"
#include "qubosel/rng.hpp"
#include "qubosel/solvers/gas.hpp"
#include "qubosel/solvers/qaoa.hpp"
#include "qubosel/solvers/sa.hpp"
#include "qubosel/solvers/sqa.hpp"
#include "qubosel/solvers/types.hpp"
#include "qubosel/solvers/vqe.hpp"

namespace qubosel {

inline RunResult run_solver(const QuboProblem& p, SolverKind kind, const SolverConfig& config,
                            std::uint64_t seed) {
    switch (kind) {
        case SolverKind::Qaoa: return run_qaoa(p, config.qaoa, seed);
        case SolverKind::Vqe: return run_vqe(p, config.vqe, seed);
        case SolverKind::Gas: return run_gas(p, config.gas, seed);
        case SolverKind::QaProxy: return run_qa_proxy(p, config.qa_proxy, seed);
        case SolverKind::Sa: return run_sa(p, config.sa, seed);
    }
    throw Error("run_solver: unknown solver kind");
}

/// Objective values and assignments from R independent seeded runs.
struct RunDistribution {
    SolverKind kind = SolverKind::Sa;
    std::vector<double> values;
    std::vector<Assignment> assignments;
};

/**
 * R independent runs with per-run seeds derived from (base_seed, index).
 * Results are stored by run index, so the outcome is identical for any
 * positive jobs count.
 */
inline RunDistribution run_many(const QuboProblem& p, SolverKind kind, const SolverConfig& config,
                                int runs, std::uint64_t base_seed, int jobs = 1) {
    if (runs < 1) throw Error("run_many: number of runs must be >= 1");
    RunDistribution dist;
    dist.kind = kind;
    dist.values.resize(static_cast<std::size_t>(runs));
    dist.assignments.resize(static_cast<std::size_t>(runs));

    auto work = [&](int index) {
        RunResult r = run_solver(p, kind, config, derive_seed(base_seed, index));
        dist.values[static_cast<std::size_t>(index)] = r.objective;
        dist.assignments[static_cast<std::size_t>(index)] = std::move(r.assignment);
    };

    if (jobs <= 1) {
        for (int i = 0; i < runs; ++i) work(i);
        return dist;
    }
    std::vector<std::future<void>> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
        workers.push_back(std::async(std::launch::async, [&, t]() {
            for (int i = t; i < runs; i += jobs) work(i);
        }));
    }
    for (auto& w : workers) w.get();
    return dist;
}

}  // namespace qubosel
