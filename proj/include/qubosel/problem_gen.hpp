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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qubosel/errors.hpp"
#include "qubosel/qubo.hpp"
#include "qubosel/rng.hpp"

namespace qubosel {

enum class Family {
    MaxCut,
    MinVertexCover,
    SetPacking,
    KClique,
    NumberPartitioning,
    RandomQubo,
    Portfolio,
};

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::MaxCut,       Family::MinVertexCover,     Family::SetPacking, Family::KClique,
    Family::NumberPartitioning, Family::RandomQubo, Family::Portfolio,
};

inline std::string family_name(Family f) {
    switch (f) {
        case Family::MaxCut: return "max_cut";
        case Family::MinVertexCover: return "min_vertex_cover";
        case Family::SetPacking: return "set_packing";
        case Family::KClique: return "k_clique";
        case Family::NumberPartitioning: return "number_partitioning";
        case Family::RandomQubo: return "random_qubo";
        case Family::Portfolio: return "portfolio";
    }
    throw Error("family_name: unknown family");
}

/// Accepts canonical names plus the short CLI aliases.
inline Family family_from_name(const std::string& name) {
    if (name == "max_cut" || name == "maxcut") return Family::MaxCut;
    if (name == "min_vertex_cover" || name == "mvc" || name == "vertex_cover")
        return Family::MinVertexCover;
    if (name == "set_packing" || name == "setpack") return Family::SetPacking;
    if (name == "k_clique" || name == "kclique") return Family::KClique;
    if (name == "number_partitioning" || name == "numpart") return Family::NumberPartitioning;
    if (name == "random_qubo" || name == "random") return Family::RandomQubo;
    if (name == "portfolio") return Family::Portfolio;
    throw SpecError("unknown problem family: " + name);
}

/// Seeded recipe for one benchmark instance.
struct ProblemSpec {
    Family family = Family::RandomQubo;
    int size = 4;
    double density = 1.0;
    double coeff_lo = -1.0;
    double coeff_hi = 1.0;
    std::optional<double> penalty;  // absent = derived penalty-dominant default
    std::uint64_t seed = 0;
};

using Edge = std::pair<int, int>;

// ---------------------------------------------------------------------------
// Deterministic builders from explicit structure.
// ---------------------------------------------------------------------------

/// minimize sum_{(i,j) in E} (2 x_i x_j - x_i - x_j); minimum = -(max cut).
inline QuboProblem max_cut_qubo(int n, const std::vector<Edge>& edges) {
    QuboProblem p(n);
    for (const Edge& e : edges) {
        p.add_linear(e.first, -1.0);
        p.add_linear(e.second, -1.0);
        p.add_quadratic(e.first, e.second, 2.0);
    }
    return p;
}

/// sum_i x_i + P sum_{(i,j) in E} (1 - x_i - x_j + x_i x_j).
inline QuboProblem min_vertex_cover_qubo(int n, const std::vector<Edge>& edges, double penalty) {
    if (!(penalty > 0.0)) throw SpecError("min_vertex_cover: penalty must be positive");
    QuboProblem p(n);
    for (int i = 0; i < n; ++i) p.add_linear(i, 1.0);
    for (const Edge& e : edges) {
        p.add_offset(penalty);
        p.add_linear(e.first, -penalty);
        p.add_linear(e.second, -penalty);
        p.add_quadratic(e.first, e.second, penalty);
    }
    std::vector<Edge> es = edges;
    p.constraint_checks.push_back([es](const Assignment& x) {
        for (const Edge& e : es) {
            if (!x[e.first] && !x[e.second]) return false;
        }
        return true;
    });
    return p;
}

/// -sum_i w_i x_i + P sum_{conflicting (i,j)} x_i x_j.
inline QuboProblem set_packing_qubo(const std::vector<double>& weights,
                                    const std::vector<Edge>& conflicts, double penalty) {
    if (!(penalty > 0.0)) throw SpecError("set_packing: penalty must be positive");
    const int n = static_cast<int>(weights.size());
    QuboProblem p(n);
    for (int i = 0; i < n; ++i) p.add_linear(i, -weights[i]);
    for (const Edge& e : conflicts) p.add_quadratic(e.first, e.second, penalty);
    std::vector<Edge> cs = conflicts;
    p.constraint_checks.push_back([cs](const Assignment& x) {
        for (const Edge& e : cs) {
            if (x[e.first] && x[e.second]) return false;
        }
        return true;
    });
    return p;
}

/// P (k - sum_i x_i)^2 + P sum_{(i,j) not in E} x_i x_j: zero exactly on
/// k-cliques of the graph.
inline QuboProblem k_clique_qubo(int n, const std::vector<Edge>& edges, int k, double penalty) {
    if (k > n) throw SpecError("k_clique: k = " + std::to_string(k) + " exceeds n = " +
                               std::to_string(n));
    if (k < 1) throw SpecError("k_clique: k must be positive");
    if (!(penalty > 0.0)) throw SpecError("k_clique: penalty must be positive");
    QuboProblem p(n, penalty * static_cast<double>(k) * static_cast<double>(k));
    // (k - sum x)^2 = k^2 + (1 - 2k) sum x_i + 2 sum_{i<j} x_i x_j  on binaries.
    for (int i = 0; i < n; ++i) p.add_linear(i, penalty * (1.0 - 2.0 * k));
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const Edge& e : edges) adj[e.first][e.second] = adj[e.second][e.first] = true;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            p.add_quadratic(i, j, 2.0 * penalty + (adj[i][j] ? 0.0 : penalty));
        }
    }
    p.constraint_checks.push_back([adj, k](const Assignment& x) {
        int chosen = 0;
        for (std::size_t i = 0; i < x.size(); ++i) chosen += x[i];
        if (chosen != k) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                if (x[i] && x[j] && !adj[i][j]) return false;
            }
        }
        return true;
    });
    return p;
}

/// (sum_i s_i (2 x_i - 1))^2 expanded to QUBO form.
inline QuboProblem number_partitioning_qubo(const std::vector<double>& numbers) {
    const int n = static_cast<int>(numbers.size());
    double total = 0.0;
    for (double s : numbers) total += s;
    QuboProblem p(n, total * total);
    for (int i = 0; i < n; ++i) {
        p.add_linear(i, 4.0 * numbers[i] * numbers[i] - 4.0 * total * numbers[i]);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            p.add_quadratic(i, j, 8.0 * numbers[i] * numbers[j]);
        }
    }
    return p;
}

/// x^T Q x - mu^T x + P (sum_i x_i - budget)^2.
inline QuboProblem portfolio_qubo(const std::vector<std::vector<double>>& risk,
                                  const std::vector<double>& returns, int budget,
                                  double penalty) {
    const int n = static_cast<int>(returns.size());
    if (static_cast<int>(risk.size()) != n) throw SpecError("portfolio: risk matrix size mismatch");
    if (budget < 0 || budget > n) throw SpecError("portfolio: budget out of range");
    if (!(penalty > 0.0)) throw SpecError("portfolio: penalty must be positive");
    QuboProblem p(n, penalty * static_cast<double>(budget) * static_cast<double>(budget));
    for (int i = 0; i < n; ++i) {
        // Diagonal risk plus the expanded budget penalty.
        p.add_linear(i, risk[i][i] - returns[i] + penalty * (1.0 - 2.0 * budget));
        for (int j = i + 1; j < n; ++j) {
            p.add_quadratic(i, j, risk[i][j] + risk[j][i] + 2.0 * penalty);
        }
    }
    p.constraint_checks.push_back([budget](const Assignment& x) {
        int chosen = 0;
        for (std::size_t i = 0; i < x.size(); ++i) chosen += x[i];
        return chosen == budget;
    });
    return p;
}

// ---------------------------------------------------------------------------
// Seeded sampling per spec.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Edge> erdos_renyi(int n, double density, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (u(rng) < density) edges.emplace_back(i, j);
        }
    }
    return edges;
}

}  // namespace detail

inline QuboProblem generate(const ProblemSpec& spec) {
    if (spec.size < 1) throw SpecError("generate: size must be positive");
    if (!(spec.density > 0.0) || spec.density > 1.0) {
        throw SpecError("generate: density must lie in (0, 1]");
    }
    if (!(spec.coeff_lo <= spec.coeff_hi)) throw SpecError("generate: empty coefficient range");
    if (spec.penalty && !(*spec.penalty > 0.0)) {
        throw SpecError("generate: penalty must be positive");
    }
    Rng rng(spec.seed);
    std::uniform_real_distribution<double> coeff(spec.coeff_lo, spec.coeff_hi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int n = spec.size;

    switch (spec.family) {
        case Family::MaxCut:
            return max_cut_qubo(n, detail::erdos_renyi(n, spec.density, rng));
        case Family::MinVertexCover: {
            const auto edges = detail::erdos_renyi(n, spec.density, rng);
            const double penalty = spec.penalty.value_or(1.0 + static_cast<double>(n));
            return min_vertex_cover_qubo(n, edges, penalty);
        }
        case Family::SetPacking: {
            std::vector<double> weights(static_cast<std::size_t>(n));
            double total = 0.0;
            for (double& w : weights) {
                w = coeff(rng);
                total += std::abs(w);
            }
            const auto conflicts = detail::erdos_renyi(n, spec.density, rng);
            return set_packing_qubo(weights, conflicts, spec.penalty.value_or(1.0 + total));
        }
        case Family::KClique: {
            const int k = std::max(2, n / 2);
            const auto edges = detail::erdos_renyi(n, spec.density, rng);
            return k_clique_qubo(n, edges, k, spec.penalty.value_or(1.0));
        }
        case Family::NumberPartitioning: {
            std::vector<double> numbers(static_cast<std::size_t>(n));
            for (double& s : numbers) s = coeff(rng);
            return number_partitioning_qubo(numbers);
        }
        case Family::RandomQubo: {
            QuboProblem p(n);
            for (int i = 0; i < n; ++i) {
                if (u01(rng) < spec.density) p.add_linear(i, coeff(rng));
            }
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (u01(rng) < spec.density) p.add_quadratic(i, j, coeff(rng));
                }
            }
            return p;
        }
        case Family::Portfolio: {
            const double cmax = std::max({std::abs(spec.coeff_lo), std::abs(spec.coeff_hi), 0.5});
            std::vector<std::vector<double>> a(n, std::vector<double>(n));
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            for (auto& row : a) {
                for (double& v : row) v = unit(rng);
            }
            std::vector<std::vector<double>> risk(n, std::vector<double>(n, 0.0));
            double raw_max = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double q = 0.0;
                    for (int k = 0; k < n; ++k) q += a[k][i] * a[k][j];
                    risk[i][j] = q / n;
                    raw_max = std::max(raw_max, std::abs(risk[i][j]));
                }
            }
            const double scale = raw_max > 0.0 ? cmax / (2.0 * raw_max) : 1.0;
            double total = 0.0;
            std::vector<double> returns(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    risk[i][j] *= scale;
                    total += std::abs(risk[i][j]);
                }
               returns[static_cast<std::size_t>(i)] = u01(rng) * cmax;
            }
            for (double r : returns) total += std::abs(r);
            const int budget = std::max(1, n / 2);
            return portfolio_qubo(risk, returns, budget, spec.penalty.value_or(1.0 + total));
        }
    }
    throw SpecError("generate: unknown family");
}

/**
 * Reproducible benchmark suite: families cycle in the given order, while
 * sizes, densities, and coefficient ranges are drawn per item from seeds
 * derived as (suite seed, index).
 */
inline std::vector<std::pair<ProblemSpec, QuboProblem>> generate_suite(
    int count, int size_lo, int size_hi, const std::vector<Family>& families,
    std::uint64_t seed) {
    if (count < 0) throw SpecError("generate_suite: count must be non-negative");
    if (size_lo < 1 || size_hi < size_lo) throw SpecError("generate_suite: bad size range");
    if (families.empty()) throw SpecError("generate_suite: no families given");

    static constexpr std::array<std::pair<double, double>, 5> kRangePresets = {
        {{-1.0, 1.0}, {-2.0, 2.0}, {-3.0, 3.0}, {-4.0, 4.0}, {1.0, 4.0}}};

    std::vector<std::pair<ProblemSpec, QuboProblem>> suite;
    suite.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        ProblemSpec spec;
        spec.family = families[static_cast<std::size_t>(i) % families.size()];
        spec.size = size_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                   size_hi - size_lo + 1));
        std::uniform_real_distribution<double> dens(0.3, 1.0);
        spec.density = dens(rng);
        const auto& range = kRangePresets[rng() % kRangePresets.size()];
        spec.coeff_lo = range.first;
        spec.coeff_hi = range.second;
        spec.seed = rng();
        suite.emplace_back(spec, generate(spec));
    }
    return suite;
}

}  // namespace qubosel
