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

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "qubosel/errors.hpp"
#include "qubosel/optimize.hpp"
#include "qubosel/qubo.hpp"

namespace qubosel {

/// The five solvers.  Enumerator order is the parity-breaking priority
/// (fewer qubits first, quantum before classical).
enum class SolverKind { Qaoa, Vqe, Gas, QaProxy, Sa };

inline constexpr std::array<SolverKind, 5> kAllSolvers = {
    SolverKind::Qaoa, SolverKind::Vqe, SolverKind::Gas, SolverKind::QaProxy, SolverKind::Sa};

inline int priority_rank(SolverKind k) { return static_cast<int>(k) + 1; }

inline std::string solver_name(SolverKind k) {
    switch (k) {
        case SolverKind::Qaoa: return "qaoa";
        case SolverKind::Vqe: return "vqe";
        case SolverKind::Gas: return "gas";
        case SolverKind::QaProxy: return "qa";
        case SolverKind::Sa: return "sa";
    }
    throw Error("solver_name: unknown solver");
}

inline SolverKind solver_from_name(const std::string& name) {
    for (SolverKind k : kAllSolvers) {
        if (solver_name(k) == name) return k;
    }
    throw Error("unknown solver: " + name + " (expected qaoa|vqe|gas|qa|sa)");
}

// Zero-valued numeric fields select the size-scaled default for the problem
// at hand; resolve_*() below fills them in.

struct QaoaConfig {
    int reps = 0;  // default ceil(2 sqrt(N))
    int shots = 100;
    OptimizerConfig optimizer;
};

struct VqeConfig {
    int layers = 1;
    int shots = 100;
    OptimizerConfig optimizer;
};

struct GasConfig {
    int threshold = 0;    // default 2N consecutive non-improving samples
    double precision = 1.0;
    int value_qubits = 0;  // default sized from the posiform bounds
    int max_iterations = 0;
    int capacity = 22;
};

struct QaProxyConfig {
    int trotter_slices = 20;
    int sweeps = 0;          // default round(10^{0.7 sqrt(N)})
    double gamma_start = 3.0;
    double gamma_end = 0.01;
    double temperature = 0.0;  // default 0.1 max|coeff|
};

struct SaConfig {
    int sweeps = 0;          // default round(10^{0.5 sqrt(N)})
    double temp_start = 0.0;  // default 2 max|coeff|
    double temp_end = 0.0;    // default 0.01 min nonzero |coeff|
};

struct SolverConfig {
    QaoaConfig qaoa;
    VqeConfig vqe;
    GasConfig gas;
    QaProxyConfig qa_proxy;
    SaConfig sa;
};

inline int default_qaoa_reps(int n) {
    return static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n))));
}

inline int default_sweeps(int n, double b) {
    return static_cast<int>(std::llround(std::pow(10.0, b * std::sqrt(static_cast<double>(n)))));
}

inline QaoaConfig resolve_qaoa(QaoaConfig c, const QuboProblem& p) {
    if (c.reps <= 0) c.reps = default_qaoa_reps(p.num_vars());
    if (c.shots <= 0) c.shots = 100;
    return c;
}

inline VqeConfig resolve_vqe(VqeConfig c, const QuboProblem& p) {
    (void)p;
    if (c.layers <= 0) c.layers = 1;
    if (c.shots <= 0) c.shots = 100;
    return c;
}

inline GasConfig resolve_gas(GasConfig c, const QuboProblem& p) {
    if (c.threshold <= 0) c.threshold = 2 * p.num_vars();
    if (c.max_iterations <= 0) c.max_iterations = 10 * p.num_vars() + 20;
    if (!(c.precision > 0.0)) throw Error("gas: precision must be positive");
    return c;
}

inline QaProxyConfig resolve_qa_proxy(QaProxyConfig c, const QuboProblem& p) {
    if (c.sweeps <= 0) c.sweeps = default_sweeps(p.num_vars(), 0.7);
    if (c.trotter_slices <= 0) c.trotter_slices = 20;
    if (c.temperature <= 0.0) {
        const double scale = p.has_terms() ? p.max_abs_coeff() : 1.0;
        c.temperature = 0.1 * scale;
    }
    return c;
}

inline SaConfig resolve_sa(SaConfig c, const QuboProblem& p) {
    if (c.sweeps <= 0) c.sweeps = default_sweeps(p.num_vars(), 0.5);
    if (c.temp_start <= 0.0) {
        c.temp_start = 2.0 * (p.has_terms() ? p.max_abs_coeff() : 1.0);
    }
    if (c.temp_end <= 0.0) {
        const double smallest = p.min_abs_coeff();
        c.temp_end = 0.01 * (smallest > 0.0 ? smallest : 1.0);
    }
    c.temp_end = std::min(c.temp_end, c.temp_start);
    return c;
}

/// Fully resolved size-scaled defaults for every solver on this problem.
inline SolverConfig default_config(SolverKind kind, const QuboProblem& p) {
    (void)kind;  // the scaling rules depend only on the problem
    SolverConfig c;
    c.qaoa = resolve_qaoa(c.qaoa, p);
    c.vqe = resolve_vqe(c.vqe, p);
    c.gas = resolve_gas(c.gas, p);
    c.qa_proxy = resolve_qa_proxy(c.qa_proxy, p);
    c.sa = resolve_sa(c.sa, p);
    return c;
}

/// One solver execution: the sampled assignment and its exact objective.
struct RunResult {
    Assignment assignment;
    double objective = 0.0;
    SolverKind kind = SolverKind::Sa;
    std::uint64_t seed = 0;
};

}  // namespace qubosel
