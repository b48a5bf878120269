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
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "qubosel/errors.hpp"
#include "qubosel/qubo.hpp"
#include "qubosel/rng.hpp"

namespace qubosel {

using cplx = std::complex<double>;

/**
 * Dense statevector over n qubits, indexed with qubit 0 as the least
 * significant bit of the basis index.  Gates mutate the state in place.
 *
 * Rotation conventions:
 *   RZ(t)  = diag(e^{-it/2}, e^{+it/2})
 *   RZZ(t) = exp(-i t/2 Z (x) Z)
 *   controlled_phase(t) multiplies the all-ones control/target subspace
 *   by e^{it}.
 */
class State {
  public:
    static constexpr int kDefaultCapacity = 22;

    explicit State(int num_qubits, int capacity = kDefaultCapacity) : nq_(num_qubits) {
        if (num_qubits < 1 || num_qubits > capacity) {
            throw CapacityError("State: " + std::to_string(num_qubits) +
                                " qubits outside capacity [1, " + std::to_string(capacity) + "]");
        }
        amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
        amps_[0] = cplx{1.0, 0.0};
    }

    int num_qubits() const { return nq_; }
    std::size_t size() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    cplx amp(std::size_t idx) const { return amps_[idx]; }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return s;
    }

    void h(int q) {
        static const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
        apply_single(q, {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2});
    }

    void x(int q) {
        const std::size_t bit = check_bit(q);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
        }
    }

    void rx(int q, double theta) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        apply_single(q, {cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0}});
    }

    void ry(int q, double theta) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        apply_single(q, {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}});
    }

    void rz(int q, double theta) {
        const std::size_t bit = check_bit(q);
        const cplx lo = std::polar(1.0, -theta / 2), hi = std::polar(1.0, theta / 2);
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & bit) ? hi : lo;
    }

    void rzz(int q1, int q2, double theta) {
        const std::size_t b1 = check_bit(q1), b2 = check_bit(q2);
        if (q1 == q2) throw Error("rzz: qubits must be distinct");
        const cplx even = std::polar(1.0, -theta / 2), odd = std::polar(1.0, theta / 2);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            const bool parity = static_cast<bool>(i & b1) != static_cast<bool>(i & b2);
            amps_[i] *= parity ? odd : even;
        }
    }

    void cx(int control, int target) {
        const std::size_t cbit = check_bit(control), tbit = check_bit(target);
        if (control == target) throw Error("cx: control and target must be distinct");
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
        }
    }

    /// Phase e^{i theta} on basis states where the target and every control
    /// qubit are 1.  With no controls this is the single-qubit phase gate.
    void controlled_phase(double theta, std::span<const int> controls, int target) {
        std::size_t mask = check_bit(target);
        for (int c : controls) {
            const std::size_t bit = check_bit(c);
            if (mask & bit) throw Error("controlled_phase: duplicate qubit index");
            mask |= bit;
        }
        const cplx phase = std::polar(1.0, theta);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & mask) == mask) amps_[i] *= phase;
        }
    }

    void swap_qubits(int a, int b) {
        if (a == b) return;
        cx(a, b);
        cx(b, a);
        cx(a, b);
    }

    /// Quantum Fourier transform on a register listed LSB first:
    /// |x> -> (1/sqrt M) sum_v exp(2 pi i x v / M) |v>.
    void qft(std::span<const int> reg) {
        const int m = static_cast<int>(reg.size());
        for (int j = m - 1; j >= 0; --j) {
            h(reg[j]);
            for (int k = j - 1; k >= 0; --k) {
                const int ctrl[1] = {reg[k]};
                controlled_phase(std::numbers::pi / static_cast<double>(1ll << (j - k)), ctrl,
                                 reg[j]);
            }
        }
        for (int k = 0; k < m / 2; ++k) swap_qubits(reg[k], reg[m - 1 - k]);
    }

    /// Inverse of qft (conjugated phases, reversed order).
    void iqft(std::span<const int> reg) {
        const int m = static_cast<int>(reg.size());
        for (int k = 0; k < m / 2; ++k) swap_qubits(reg[k], reg[m - 1 - k]);
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < j; ++k) {
                const int ctrl[1] = {reg[k]};
                controlled_phase(-std::numbers::pi / static_cast<double>(1ll << (j - k)), ctrl,
                                 reg[j]);
            }
            h(reg[j]);
        }
    }

  private:
    std::size_t check_bit(int q) const {
        if (q < 0 || q >= nq_) {
            throw Error("State: qubit index " + std::to_string(q) + " out of range [0, " +
                        std::to_string(nq_) + ")");
        }
        return std::size_t{1} << q;
    }

    // Matrix rows ordered (m00, m01, m10, m11).
    void apply_single(int q, const std::array<cplx, 4>& m) {
        const std::size_t bit = check_bit(q);
        for (std::size_t base = 0; base < amps_.size(); base += 2 * bit) {
            for (std::size_t i = base; i < base + bit; ++i) {
                const cplx a0 = amps_[i], a1 = amps_[i | bit];
                amps_[i] = m[0] * a0 + m[1] * a1;
                amps_[i | bit] = m[2] * a0 + m[3] * a1;
            }
        }
    }

    int nq_;
    std::vector<cplx> amps_;
};

/// f(x) for every basis index, bit i of the index being x_i.  Entry `mask`
/// equals evaluate(p, assignment_from_mask(mask, N)) exactly.
inline std::vector<double> build_value_table(const QuboProblem& p) {
    const int n = p.num_vars();
    if (n > 26) throw CapacityError("build_value_table: problem too large to tabulate");
    struct Term {
        std::uint32_t mask;
        double coeff;
    };
    std::vector<Term> terms;
    for (const auto& [i, v] : p.linear()) terms.push_back({std::uint32_t{1} << i, v});
    for (const auto& [k, v] : p.quadratic()) {
        terms.push_back({(std::uint32_t{1} << k.first) | (std::uint32_t{1} << k.second), v});
    }
    std::vector<double> table(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < table.size(); ++mask) {
        double value = p.offset();
        for (const Term& t : terms) {
            if ((mask & t.mask) == t.mask) value += t.coeff;
        }
        table[mask] = value;
    }
    return table;
}

/// <state| f |state> for a diagonal objective given as a per-index table.
inline double expectation_diagonal(const State& s, std::span<const double> values) {
    if (values.size() != s.size()) {
        throw DimensionError("expectation_diagonal: table size does not match state");
    }
    double e = 0.0;
    const auto& amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) e += std::norm(amps[i]) * values[i];
    return e;
}

inline double expectation_diagonal(const State& s, const QuboProblem& p) {
    if (p.num_vars() != s.num_qubits()) {
        throw DimensionError("expectation_diagonal: state has " +
                             std::to_string(s.num_qubits()) + " qubits, problem has " +
                             std::to_string(p.num_vars()) + " variables");
    }
    const std::vector<double> table = build_value_table(p);
    return expectation_diagonal(s, table);
}

/// `shots` i.i.d. basis-index draws from the |amplitude|^2 distribution.
inline std::vector<std::uint64_t> sample(const State& s, int shots, Rng& rng) {
    if (shots < 1) throw Error("sample: shots must be >= 1");
    std::vector<double> cumulative(s.size());
    double acc = 0.0;
    const auto& amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cumulative[i] = acc;
    }
    std::uniform_real_distribution<double> u(0.0, acc);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
    for (auto& draw : out) {
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u(rng));
        draw = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
            it - cumulative.begin(), static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
    }
    return out;
}

}  // namespace qubosel
