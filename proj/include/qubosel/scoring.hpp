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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qubosel/errors.hpp"
#include "qubosel/qubo.hpp"
#include "qubosel/solvers/run.hpp"
#include "qubosel/solvers/types.hpp"

namespace qubosel {

namespace detail {

/// Shortest exact decimal form; round-trips bit-identically through strtod.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Summary statistics of a run distribution against a reference optimum.
struct DistributionStats {
    double p_s = 0.0;    // fraction of runs hitting the reference optimum
    double e_opt = 0.0;  // best value
    double e_avg = 0.0;
    double e_var = 0.0;  // population variance
    double p_v = 1.0;    // fraction of runs satisfying all constraints
};

inline DistributionStats summarize(const RunDistribution& dist, double e_ref,
                                   std::span<const ConstraintCheck> checks = {}) {
    if (dist.values.empty()) throw Error("summarize: empty distribution");
    DistributionStats s;
    const double tol = 1e-9 * std::max(1.0, std::abs(e_ref));
    double sum = 0.0;
    s.e_opt = dist.values.front();
    int optimal = 0;
    for (double v : dist.values) {
        sum += v;
        s.e_opt = std::min(s.e_opt, v);
        if (std::abs(v - e_ref) <= tol) ++optimal;
    }
    const double count = static_cast<double>(dist.values.size());
    s.e_avg = sum / count;
    double acc = 0.0;
    for (double v : dist.values) acc += (v - s.e_avg) * (v - s.e_avg);
    s.e_var = acc / count;
    s.p_s = static_cast<double>(optimal) / count;

    if (!checks.empty()) {
        int feasible = 0;
        for (const Assignment& x : dist.assignments) {
            bool ok = true;
            for (const ConstraintCheck& check : checks) {
                if (!check(x)) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++feasible;
        }
        s.p_v = static_cast<double>(feasible) / static_cast<double>(dist.assignments.size());
    }
    return s;
}

/// Weights of the five score terms; all metrics equally important by default.
struct ScoreWeights {
    double alpha = 1.0;  // optimal-hit fraction (rewarded)
    double beta = 1.0;   // best-value gap
    double gamma = 1.0;  // mean gap
    double delta = 1.0;  // variance
    double eta = 1.0;    // constraint-satisfaction fraction (rewarded)
};

/**
 * Weighted solver score; lower is better:
 *
 *   F_s = -alpha p_s + beta (E_opt - E_ref)/W + gamma (E_avg - E_ref)/W
 *         + delta E_var/W^2 - eta p_v
 *
 * with W the posiform bound width.  Pass normalized = false for the raw
 * (unnormalized) score, where W is dropped.
 */
inline double score(const DistributionStats& s, double e_ref, const ScoreWeights& w,
                    double bound_width, bool normalized = true) {
    double opt_gap = s.e_opt - e_ref;
    double avg_gap = s.e_avg - e_ref;
    double variance = s.e_var;
    if (normalized) {
        if (bound_width == 0.0) {
            const bool energy_free =
                std::abs(opt_gap) < 1e-12 && std::abs(avg_gap) < 1e-12 && variance < 1e-12;
            if (!energy_free) {
                throw DegenerateProblemError(
                    "score: zero bound width with nonzero energy terms");
            }
            opt_gap = avg_gap = variance = 0.0;
        } else {
            opt_gap /= bound_width;
            avg_gap /= bound_width;
            variance /= bound_width * bound_width;
        }
    }
    return -w.alpha * s.p_s + w.beta * opt_gap + w.gamma * avg_gap + w.delta * variance -
           w.eta * s.p_v;
}

inline double score(const RunDistribution& dist, const QuboProblem& problem, double e_ref,
                    const ScoreWeights& w = {}, bool normalized = true) {
    const DistributionStats s = summarize(dist, e_ref, problem.constraint_checks);
    return score(s, e_ref, w, posiform_bounds(problem).width(), normalized);
}

/// Minimum score wins; exact ties fall to the smaller priority rank
/// (QAOA before VQE before GAS before QA before SA).
inline SolverKind best_solver(const std::map<SolverKind, double>& scores) {
    for (SolverKind k : kAllSolvers) {
        if (!scores.contains(k)) {
            throw CompletenessError("best_solver: missing score for " + solver_name(k));
        }
    }
    SolverKind best = SolverKind::Qaoa;
    double best_score = scores.at(best);
    for (SolverKind k : kAllSolvers) {
        if (scores.at(k) < best_score) {
            best = k;
            best_score = scores.at(k);
        }
    }
    return best;
}

/// One labeled dataset row; per-solver arrays are in priority order.
struct DatasetRecord {
    std::string problem_id;
    FeatureVector features;
    std::array<double, 5> scores{};
    std::array<double, 5> ps{};
    SolverKind label = SolverKind::Qaoa;

    bool operator==(const DatasetRecord&) const = default;
};

/**
 * Runs all five solvers R times each, scores the distributions against the
 * brute-force reference optimum, and labels the problem with the best
 * (tie-broken) solver.
 */
inline DatasetRecord label_problem(const QuboProblem& problem, const std::string& problem_id,
                                   int runs, const ScoreWeights& weights, std::uint64_t seed,
                                   bool normalized = true, int jobs = 1) {
    const double e_ref =
        problem.reference_optimum ? *problem.reference_optimum : brute_force(problem).min_value;
    const double width = posiform_bounds(problem).width();

    DatasetRecord record;
    record.problem_id = problem_id;
    record.features = extract_features(problem);

    std::map<SolverKind, double> score_map;
    for (std::size_t k = 0; k < kAllSolvers.size(); ++k) {
        const SolverKind kind = kAllSolvers[k];
        const SolverConfig config = default_config(kind, problem);
        const RunDistribution dist =
            run_many(problem, kind, config, runs, derive_seed(seed, k), jobs);
        const DistributionStats stats = summarize(dist, e_ref, problem.constraint_checks);
        record.scores[k] = score(stats, e_ref, weights, width, normalized);
        record.ps[k] = stats.p_s;
        score_map[kind] = record.scores[k];
    }
    record.label = best_solver(score_map);
    return record;
}

// ---------------------------------------------------------------------------
// Dataset CSV.
// ---------------------------------------------------------------------------

inline constexpr const char* kDatasetHeader =
    "problem_id,n_vars,n_lin,n_quad,mean_lin,var_lin,mean_quad,var_quad,mean_all,var_all,"
    "score_qaoa,score_vqe,score_gas,score_qa,score_sa,"
    "ps_qaoa,ps_vqe,ps_gas,ps_qa,ps_sa,label";

inline void save_dataset(const std::vector<DatasetRecord>& records,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_dataset: cannot open " + path.string());
    out << kDatasetHeader << '\n';
    for (const DatasetRecord& r : records) {
        if (r.problem_id.find_first_of(",\n") != std::string::npos) {
            throw Error("save_dataset: problem_id must not contain commas or newlines");
        }
        out << r.problem_id << ',' << r.features.n_vars << ',' << r.features.n_lin << ','
            << r.features.n_quad;
        const auto f = r.features.as_array();
        for (std::size_t i = 3; i < f.size(); ++i) out << ',' << detail::format_double(f[i]);
        for (double s : r.scores) out << ',' << detail::format_double(s);
        for (double p : r.ps) out << ',' << detail::format_double(p);
        out << ',' << solver_name(r.label) << '\n';
    }
}

inline std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_dataset: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kDatasetHeader) {
        throw ParseError(path.string() + ":1: bad or missing dataset header");
    }
    std::vector<DatasetRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 21) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 21 " +
                             "fields, got " + std::to_string(fields.size()));
        }
        auto num = [&](std::size_t i) {
            char* end = nullptr;
            const double v = std::strtod(fields[i].c_str(), &end);
            if (end == fields[i].c_str() || *end != '\0') {
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": bad number '" + fields[i] + "'");
            }
            return v;
        };
        DatasetRecord r;
        r.problem_id = fields[0];
        r.features.n_vars = static_cast<int>(num(1));
        r.features.n_lin = static_cast<int>(num(2));
        r.features.n_quad = static_cast<int>(num(3));
        r.features.mean_lin = num(4);
        r.features.var_lin = num(5);
        r.features.mean_quad = num(6);
        r.features.var_quad = num(7);
        r.features.mean_all = num(8);
        r.features.var_all = num(9);
        for (std::size_t k = 0; k < 5; ++k) r.scores[k] = num(10 + k);
        for (std::size_t k = 0; k < 5; ++k) r.ps[k] = num(15 + k);
        try {
            r.label = solver_from_name(fields[20]);
        } catch (const Error& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return records;
}

/// Sorted per-solver run values, one column per solver (Fig. 6 style export).
inline void write_cumulative_csv(
    const std::vector<std::pair<std::string, std::vector<double>>>& columns,
    const std::filesystem::path& path) {
    if (columns.empty()) throw Error("write_cumulative_csv: no columns");
    std::size_t rows = 0;
    for (const auto& [name, values] : columns) rows = std::max(rows, values.size());

    std::vector<std::vector<double>> sorted;
    std::ofstream out(path);
    if (!out) throw Error("write_cumulative_csv: cannot open " + path.string());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c].first;
        sorted.push_back(columns[c].second);
        std::sort(sorted.back().begin(), sorted.back().end());
    }
    out << '\n';
    for (std::size_t row = 0; row < rows; ++row) {
        for (std::size_t c = 0; c < sorted.size(); ++c) {
            if (c) out << ',';
            if (row < sorted[c].size()) out << detail::format_double(sorted[c][row]);
        }
        out << '\n';
    }
}

}  // namespace qubosel
