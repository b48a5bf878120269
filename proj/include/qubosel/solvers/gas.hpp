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
#include <numbers>
#include <vector>

#include "qubosel/qubo.hpp"
#include "qubosel/rng.hpp"
#include "qubosel/solvers/sa.hpp"  // random_assignment
#include "qubosel/solvers/types.hpp"
#include "qubosel/statevector.hpp"

namespace qubosel {

/// Integer surrogate actually encoded on the value register.
struct GasEncoding {
    QuboProblem normalized;
    int value_qubits = 0;
    BoundPair bounds;  // posiform bounds of the normalized problem
    double precision_used = 1.0;
};

/**
 * Rounds/normalizes the problem to integers and sizes the value register.
 * When every coefficient rounds away at the requested precision, the
 * precision is halved until some structure survives, so that any nonzero
 * problem remains encodable.  An explicit value_qubits override below the
 * required width raises SizingError.
 */
inline GasEncoding gas_encode(const QuboProblem& p, const GasConfig& config) {
    GasEncoding enc;
    double precision = config.precision;
    for (int attempt = 0;; ++attempt) {
        try {
            enc.normalized = round_and_normalize(p, precision);
            break;
        } catch (const DegenerateProblemError&) {
            if (attempt >= 40) throw;
            precision /= 2.0;
        }
    }
    enc.precision_used = precision;
    enc.bounds = posiform_bounds(enc.normalized);
    const int required = num_value_qubits(enc.normalized);
    if (config.value_qubits > 0) {
        if (config.value_qubits < required) {
            throw SizingError("gas: value register of " + std::to_string(config.value_qubits) +
                              " qubits cannot hold bounds [" + std::to_string(enc.bounds.lower) +
                              ", " + std::to_string(enc.bounds.upper) + "] (need " +
                              std::to_string(required) + ")");
        }
        enc.value_qubits = config.value_qubits;
    } else {
        enc.value_qubits = required;
    }
    return enc;
}

namespace gas_detail {

/// Key-to-value map of the quantum dictionary, tabulated for the fused
/// diagonal-phase implementation of the state-preparation operator A.
struct Dictionary {
    int num_keys = 0;    // key qubits (problem variables), occupying bits 0..num_keys-1
    int num_values = 0;  // value qubits, occupying the high bits, LSB first
    std::vector<long long> values;  // f(key) of the normalized problem
    std::vector<cplx> roots;        // e^{2 pi i k / 2^m}

    Dictionary(const QuboProblem& normalized, int value_qubits)
        : num_keys(normalized.num_vars()), num_values(value_qubits) {
        const std::vector<double> table = build_value_table(normalized);
        values.resize(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) values[i] = std::llround(table[i]);
        const std::size_t m = std::size_t{1} << num_values;
        roots.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                           static_cast<double>(m));
        }
    }

    int sign_qubit() const { return num_keys + num_values - 1; }
    int total_qubits() const { return num_keys + num_values; }
};

/// Phase e^{2 pi i (f(key) - shift) v / 2^m} per basis state; the product of
/// all per-coefficient controlled-phase rotations collapsed into one pass.
inline void apply_value_phase(State& s, const Dictionary& d, long long shift, bool inverse) {
    const std::size_t key_mask = (std::size_t{1} << d.num_keys) - 1;
    const long long m = static_cast<long long>(std::size_t{1} << d.num_values);
    auto& amps = s.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const std::size_t key = idx & key_mask;
        const long long v = static_cast<long long>(idx >> d.num_keys);
        const long long w = ((d.values[key] - shift) % m + m) % m;
        const long long k = (w * v) % m;
        const cplx phase = d.roots[static_cast<std::size_t>(k)];
        amps[idx] *= inverse ? std::conj(phase) : phase;
    }
}

/// Radix-2 Fourier transform along the value axis: for every key column,
/// out[x] = (1/sqrt M) sum_v e^{(+/-) 2 pi i x v / M} in[v].  The minus sign
/// (inverse = true) matches State::iqft on the value register.
inline void value_fourier(State& s, int num_keys, int num_values, bool inverse) {
    const std::size_t block = std::size_t{1} << num_keys;
    const std::size_t m = std::size_t{1} << num_values;
    auto& amps = s.amplitudes();

    // Bit-reversal permutation of the value blocks.
    for (std::size_t v = 1, j = 0; v < m; ++v) {
        std::size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (v < j) {
            std::swap_ranges(amps.begin() + static_cast<std::ptrdiff_t>(v * block),
                             amps.begin() + static_cast<std::ptrdiff_t>((v + 1) * block),
                             amps.begin() + static_cast<std::ptrdiff_t>(j * block));
        }
    }

    const double sign = inverse ? -1.0 : 1.0;
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t start = 0; start < m; start += len) {
            for (std::size_t half = 0; half < len / 2; ++half) {
                const cplx w = std::polar(1.0, base * static_cast<double>(half));
                cplx* u = amps.data() + (start + half) * block;
                cplx* t = amps.data() + (start + half + len / 2) * block;
                for (std::size_t e = 0; e < block; ++e) {
                    const cplx a = u[e];
                    const cplx b = t[e] * w;
                    u[e] = a + b;
                    t[e] = a - b;
                }
            }
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (cplx& a : amps) a *= scale;
}

inline void hadamard_all(State& s) {
    for (int q = 0; q < s.num_qubits(); ++q) s.h(q);
}

/// A: uniform superposition, coefficient phases, inverse QFT on the value
/// register.  Encodes |key>|f(key) - shift mod 2^m> from |0...0>.
inline void apply_a(State& s, const Dictionary& d, long long shift) {
    hadamard_all(s);
    apply_value_phase(s, d, shift, /*inverse=*/false);
    value_fourier(s, d.num_keys, d.num_values, /*inverse=*/true);
}

inline void apply_a_dagger(State& s, const Dictionary& d, long long shift) {
    value_fourier(s, d.num_keys, d.num_values, /*inverse=*/false);
    apply_value_phase(s, d, shift, /*inverse=*/true);
    hadamard_all(s);
}

/// Phase flip of |0...0>; identical to X^(x)n . C^{n-1}Z . X^(x)n.
inline void apply_s0(State& s) { s.amplitudes()[0] = -s.amplitudes()[0]; }

/// Oracle: phase flip where the value register's sign bit is 1, i.e. the
/// encoded shifted objective is negative in two's complement.
inline void apply_sf(State& s, const Dictionary& d) {
    s.controlled_phase(std::numbers::pi, {}, d.sign_qubit());
}

/// One Grover step G = A S0 A^dag Sf.
inline void apply_grover(State& s, const Dictionary& d, long long shift) {
    apply_sf(s, d);
    apply_a_dagger(s, d, shift);
    apply_s0(s);
    apply_a(s, d, shift);
}

}  // namespace gas_detail

/// Dictionary state |key>|f(key) - shift> over all keys, as prepared by the
/// operator A; exposed for direct statevector inspection.
inline State gas_prepare_dictionary(const QuboProblem& normalized, int value_qubits,
                                    long long shift, int capacity = State::kDefaultCapacity) {
    gas_detail::Dictionary dict(normalized, value_qubits);
    State s(dict.total_qubits(), capacity);
    gas_detail::apply_a(s, dict, shift);
    return s;
}

/**
 * Grover adaptive search.  Repeatedly samples after amplitude amplification
 * of negatively shifted objective values; every improvement re-centres the
 * shift so the incumbent maps to zero.  The rotation count is drawn uniformly
 * from {0, ..., ceil(lambda)-1} with lambda growing by 8/7 per non-improving
 * sample (capped at sqrt(2^N)) and resetting on improvement.  Stops after
 * `threshold` consecutive non-improving samples or max_iterations.
 */
inline RunResult run_gas(const QuboProblem& p, GasConfig config, std::uint64_t seed) {
    config = resolve_gas(config, p);
    Rng rng(seed);

    RunResult result;
    result.kind = SolverKind::Gas;
    result.seed = seed;

    if (!p.has_terms()) {
        // Constant objective: every assignment is optimal.
        result.assignment = Assignment(static_cast<std::size_t>(p.num_vars()), 0);
        result.objective = evaluate(p, result.assignment);
        return result;
    }

    const GasEncoding enc = gas_encode(p, config);
    const int n = p.num_vars();
    const int total_qubits = n + enc.value_qubits;
    if (total_qubits > config.capacity) {
        throw CapacityError("gas: " + std::to_string(n) + " key + " +
                            std::to_string(enc.value_qubits) + " value qubits exceed capacity " +
                            std::to_string(config.capacity));
    }

    const gas_detail::Dictionary dict(enc.normalized, enc.value_qubits);
    const std::size_t key_mask = (std::size_t{1} << n) - 1;

    std::uint64_t best_key = mask_from_assignment(detail::random_assignment(n, rng));
    long long best_value = dict.values[best_key];

    const double lambda_cap = std::sqrt(std::pow(2.0, n));
    double lambda = 1.0;
    int consecutive_misses = 0;
    for (int iter = 0; iter < config.max_iterations && consecutive_misses < config.threshold;
         ++iter) {
        const int r_max = static_cast<int>(std::ceil(lambda));
        std::uniform_int_distribution<int> pick(0, r_max - 1);
        const int rotations = pick(rng);

        State s(total_qubits, config.capacity);
        gas_detail::apply_a(s, dict, best_value);
        for (int g = 0; g < rotations; ++g) gas_detail::apply_grover(s, dict, best_value);

        const std::uint64_t idx = sample(s, 1, rng)[0];
        const std::uint64_t key = idx & key_mask;
        const long long sampled_value = dict.values[key];
        if (sampled_value < best_value) {
            best_key = key;
            best_value = sampled_value;
            lambda = 1.0;
            consecutive_misses = 0;
        } else {
            lambda = std::min(lambda * 8.0 / 7.0, lambda_cap);
            ++consecutive_misses;
        }
    }

    result.assignment = assignment_from_mask(best_key, n);
    result.objective = evaluate(p, result.assignment);
    return result;
}

}  // namespace qubosel
