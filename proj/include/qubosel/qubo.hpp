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
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qubosel/errors.hpp"

namespace qubosel {

/// One candidate solution: bit i is the value of variable x_i.
using Assignment = std::vector<std::uint8_t>;

/// Predicate deciding whether an assignment satisfies one problem constraint.
using ConstraintCheck = std::function<bool(const Assignment&)>;

/**
 * Sparse quadratic pseudo-Boolean function
 *
 *     f(x) = offset + sum_i linear[i]*x_i + sum_{i<j} quadratic[(i,j)]*x_i*x_j
 *
 * over binary variables x in {0,1}^N.  Zero coefficients are never stored and
 * quadratic keys always satisfy i < j; the mutators below maintain both.
 */
class QuboProblem {
  public:
    using QuadKey = std::pair<int, int>;

    QuboProblem() = default;

    explicit QuboProblem(int num_vars, double offset = 0.0)
        : num_vars_(num_vars), offset_(offset) {
        if (num_vars < 1) {
            throw Error("QuboProblem: num_vars must be positive, got " +
                        std::to_string(num_vars));
        }
    }

    int num_vars() const { return num_vars_; }
    double offset() const { return offset_; }
    void set_offset(double c) { offset_ = c; }
    void add_offset(double c) { offset_ += c; }

    /// Adds v to the linear coefficient of x_i; erases the entry if it cancels.
    void add_linear(int i, double v) {
        check_index(i);
        if (v == 0.0) return;
        auto [it, inserted] = linear_.try_emplace(i, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0.0) linear_.erase(it);
        }
    }

    /// Adds v to the coupler of x_i*x_j (any order, i != j).
    void add_quadratic(int i, int j, double v) {
        check_index(i);
        check_index(j);
        if (i == j) {
            throw Error("QuboProblem: quadratic term requires two distinct variables");
        }
        if (i > j) std::swap(i, j);
        if (v == 0.0) return;
        auto [it, inserted] = quadratic_.try_emplace(QuadKey{i, j}, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0.0) quadratic_.erase(it);
        }
    }

    double linear_at(int i) const {
        auto it = linear_.find(i);
        return it == linear_.end() ? 0.0 : it->second;
    }

    double quadratic_at(int i, int j) const {
        if (i > j) std::swap(i, j);
        auto it = quadratic_.find(QuadKey{i, j});
        return it == quadratic_.end() ? 0.0 : it->second;
    }

    const std::map<int, double>& linear() const { return linear_; }
    const std::map<QuadKey, double>& quadratic() const { return quadratic_; }

    bool has_terms() const { return !linear_.empty() || !quadratic_.empty(); }

    /// Largest |coefficient| over linear and quadratic terms; 0 if none.
    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [i, v] : linear_) m = std::max(m, std::abs(v));
        for (const auto& [k, v] : quadratic_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Smallest nonzero |coefficient|; 0 if the problem has no terms.
    double min_abs_coeff() const {
        double m = 0.0;
        auto fold = [&m](double v) {
            double a = std::abs(v);
            if (m == 0.0 || a < m) m = a;
        };
        for (const auto& [i, v] : linear_) fold(v);
        for (const auto& [k, v] : quadratic_) fold(v);
        return m;
    }

    /// Known optimal objective value, when available.
    std::optional<double> reference_optimum;

    /// Feasibility predicates carried by constrained problem families.
    std::vector<ConstraintCheck> constraint_checks;

  private:
    void check_index(int i) const {
        if (i < 0 || i >= num_vars_) {
            throw Error("QuboProblem: variable index " + std::to_string(i) +
                        " out of range [0, " + std::to_string(num_vars_) + ")");
        }
    }

    int num_vars_ = 1;
    double offset_ = 0.0;
    std::map<int, double> linear_;
    std::map<QuadKey, double> quadratic_;
};

/// Builds the assignment whose bit i equals bit i of `mask`.
inline Assignment assignment_from_mask(std::uint64_t mask, int num_vars) {
    Assignment x(static_cast<std::size_t>(num_vars));
    for (int i = 0; i < num_vars; ++i) x[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    return x;
}

inline std::uint64_t mask_from_assignment(const Assignment& x) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) mask |= std::uint64_t{1} << i;
    }
    return mask;
}

/// Objective value f(x).
inline double evaluate(const QuboProblem& p, const Assignment& x) {
    if (static_cast<int>(x.size()) != p.num_vars()) {
        throw DimensionError("evaluate: assignment length " + std::to_string(x.size()) +
                             " does not match num_vars " + std::to_string(p.num_vars()));
    }
    double value = p.offset();
    for (const auto& [i, v] : p.linear()) {
        if (x[static_cast<std::size_t>(i)]) value += v;
    }
    for (const auto& [key, v] : p.quadratic()) {
        if (x[static_cast<std::size_t>(key.first)] && x[static_cast<std::size_t>(key.second)]) {
            value += v;
        }
    }
    return value;
}

struct BruteForceResult {
    double min_value = 0.0;
    double max_value = 0.0;
    /// All minimizing assignments as bit masks, ascending.
    std::vector<std::uint32_t> minimizers;
};

/**
 * Exact extrema by enumeration of all 2^N assignments.  Rejects problems
 * beyond the enumeration budget (default 24 variables).
 */
inline BruteForceResult brute_force(const QuboProblem& p, int max_vars = 24) {
    const int n = p.num_vars();
    if (n > max_vars) {
        throw CapacityError("brute_force: " + std::to_string(n) +
                            " variables exceed the enumeration budget of " +
                            std::to_string(max_vars));
    }
    struct Term {
        std::uint32_t mask;
        double coeff;
    };
    std::vector<Term> terms;
    terms.reserve(p.linear().size() + p.quadratic().size());
    for (const auto& [i, v] : p.linear()) {
        terms.push_back({std::uint32_t{1} << i, v});
    }
    for (const auto& [key, v] : p.quadratic()) {
        terms.push_back({(std::uint32_t{1} << key.first) | (std::uint32_t{1} << key.second), v});
    }

    BruteForceResult result;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        double value = p.offset();
        for (const Term& t : terms) {
            if ((mask & t.mask) == t.mask) value += t.coeff;
        }
        if (mask == 0 || value < result.min_value) {
            result.min_value = value;
            result.minimizers.clear();
            result.minimizers.push_back(static_cast<std::uint32_t>(mask));
        } else if (value == result.min_value) {
            result.minimizers.push_back(static_cast<std::uint32_t>(mask));
        }
        if (mask == 0 || value > result.max_value) result.max_value = value;
    }
    return result;
}

/**
 * The nine structural descriptors of a QUBO.  Means and variances are taken
 * over the stored (nonzero) coefficients only, with population variance, and
 * an empty coefficient class contributes mean = variance = 0.
 */
struct FeatureVector {
    int n_vars = 0;
    int n_lin = 0;
    int n_quad = 0;
    double mean_lin = 0.0;
    double var_lin = 0.0;
    double mean_quad = 0.0;
    double var_quad = 0.0;
    double mean_all = 0.0;
    double var_all = 0.0;

    std::array<double, 9> as_array() const {
        return {static_cast<double>(n_vars),
                static_cast<double>(n_lin),
                static_cast<double>(n_quad),
                mean_lin,
                var_lin,
                mean_quad,
                var_quad,
                mean_all,
                var_all};
    }

    static constexpr std::array<const char*, 9> names() {
        return {"n_vars",   "n_lin",     "n_quad",   "mean_lin", "var_lin",
                "mean_quad", "var_quad", "mean_all", "var_all"};
    }

    bool operator==(const FeatureVector&) const = default;
};

namespace detail {

inline void mean_and_var(const std::vector<double>& xs, double* mean, double* var) {
    if (xs.empty()) {
        *mean = 0.0;
        *var = 0.0;
        return;
    }
    double sum = 0.0;
    for (double v : xs) sum += v;
    const double m = sum / static_cast<double>(xs.size());
    double acc = 0.0;
    for (double v : xs) acc += (v - m) * (v - m);
    *mean = m;
    *var = acc / static_cast<double>(xs.size());
}

}  // namespace detail

inline FeatureVector extract_features(const QuboProblem& p) {
    FeatureVector f;
    f.n_vars = p.num_vars();
    std::vector<double> lin, quad, all;
    lin.reserve(p.linear().size());
    quad.reserve(p.quadratic().size());
    all.reserve(p.linear().size() + p.quadratic().size());
    for (const auto& [i, v] : p.linear()) lin.push_back(v);
    for (const auto& [k, v] : p.quadratic()) quad.push_back(v);
    all = lin;
    all.insert(all.end(), quad.begin(), quad.end());
    f.n_lin = static_cast<int>(lin.size());
    f.n_quad = static_cast<int>(quad.size());
    detail::mean_and_var(lin, &f.mean_lin, &f.var_lin);
    detail::mean_and_var(quad, &f.mean_quad, &f.var_quad);
    detail::mean_and_var(all, &f.mean_all, &f.var_all);
    return f;
}

/// Coefficient-sign bounds: lower <= min f <= max f <= upper.
struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
    double width() const { return upper - lower; }
};

inline BoundPair posiform_bounds(const QuboProblem& p) {
    BoundPair b{p.offset(), p.offset()};
    for (const auto& [i, v] : p.linear()) {
        if (v < 0.0) b.lower += v;
        else b.upper += v;
    }
    for (const auto& [k, v] : p.quadratic()) {
        if (v < 0.0) b.lower += v;
        else b.upper += v;
    }
    return b;
}

/**
 * Rounds every coefficient to the nearest multiple of `precision` and rescales
 * so the surviving coefficients become the smallest integers with the same
 * ratios (and the smallest one has magnitude 1 whenever it divides the rest).
 * The offset is rounded and rescaled identically, so the output is fully
 * integer-valued and minimizers are preserved up to the rounding itself.
 */
inline QuboProblem round_and_normalize(const QuboProblem& p, double precision) {
    if (!(precision > 0.0)) {
        throw Error("round_and_normalize: precision must be positive");
    }
    auto to_units = [precision](double v) { return std::llround(v / precision); };

    long long g = 0;
    for (const auto& [i, v] : p.linear()) {
        const long long u = to_units(v);
        if (u != 0) g = std::gcd(g, std::abs(u));
    }
    for (const auto& [k, v] : p.quadratic()) {
        const long long u = to_units(v);
        if (u != 0) g = std::gcd(g, std::abs(u));
    }
    if (g == 0) {
        throw DegenerateProblemError(
            "round_and_normalize: all coefficients round to zero at precision " +
            std::to_string(precision));
    }
    const long long off_units = to_units(p.offset());
    if (off_units != 0) g = std::gcd(g, std::abs(off_units));

    QuboProblem out(p.num_vars(), static_cast<double>(off_units / g));
    for (const auto& [i, v] : p.linear()) {
        const long long u = to_units(v);
        if (u != 0) out.add_linear(i, static_cast<double>(u / g));
    }
    for (const auto& [k, v] : p.quadratic()) {
        const long long u = to_units(v);
        if (u != 0) out.add_quadratic(k.first, k.second, static_cast<double>(u / g));
    }
    out.constraint_checks = p.constraint_checks;
    return out;
}

/**
 * Smallest two's-complement width m with -2^(m-1) <= lower and
 * upper <= 2^(m-1)-1 for the posiform bounds of an integer-valued problem.
 */
inline int num_value_qubits(const QuboProblem& p) {
    auto require_integer = [](double v) {
        if (std::abs(v - std::llround(v)) > 1e-9) {
            throw Error("num_value_qubits: problem must be rounded/normalized to integers");
        }
    };
    require_integer(p.offset());
    for (const auto& [i, v] : p.linear()) require_integer(v);
    for (const auto& [k, v] : p.quadratic()) require_integer(v);

    const BoundPair b = posiform_bounds(p);
    const long long lo = std::llround(b.lower);
    const long long hi = std::llround(b.upper);
    for (int m = 1; m <= 62; ++m) {
        const long long cap_lo = -(1LL << (m - 1));
        const long long cap_hi = (1LL << (m - 1)) - 1;
        if (cap_lo <= lo && hi <= cap_hi) return m;
    }
    throw SizingError("num_value_qubits: bound interval too wide for 62 bits");
}

/**
 * Spin (+/-1) form of a QUBO under x = (1 - z)/2; used by the QAOA cost layer
 * and the quantum-annealing proxy.
 */
struct IsingModel {
    int num_spins = 0;
    double constant = 0.0;
    std::vector<double> field;                       // h_i
    std::map<std::pair<int, int>, double> coupling;  // J_ij, i < j
};

inline IsingModel to_ising(const QuboProblem& p) {
    IsingModel m;
    m.num_spins = p.num_vars();
    m.constant = p.offset();
    m.field.assign(static_cast<std::size_t>(p.num_vars()), 0.0);
    for (const auto& [i, v] : p.linear()) {
        m.constant += v / 2.0;
        m.field[static_cast<std::size_t>(i)] -= v / 2.0;
    }
    for (const auto& [key, v] : p.quadratic()) {
        m.constant += v / 4.0;
        m.field[static_cast<std::size_t>(key.first)] -= v / 4.0;
        m.field[static_cast<std::size_t>(key.second)] -= v / 4.0;
        m.coupling[key] += v / 4.0;
    }
    return m;
}

/// Energy of a spin configuration (+1/-1 entries) under an Ising model.
inline double ising_energy(const IsingModel& m, const std::vector<int>& spins) {
    if (static_cast<int>(spins.size()) != m.num_spins) {
        throw DimensionError("ising_energy: spin vector length mismatch");
    }
    double e = m.constant;
    for (int i = 0; i < m.num_spins; ++i) {
        e += m.field[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
    }
    for (const auto& [key, j] : m.coupling) {
        e += j * spins[static_cast<std::size_t>(key.first)] *
             spins[static_cast<std::size_t>(key.second)];
    }
    return e;
}

}  // namespace qubosel
