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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qubosel/qubo.hpp"
#include "qubosel/statevector.hpp"
#include "helpers.hpp"

using namespace qubosel;

namespace {

using Matrix = std::vector<std::vector<cplx>>;

// Applies a 2^k x 2^k matrix on the qubits `qs` (sub-index bit t <-> qs[t])
// to a full 2^n vector.  Direct dense contraction, independent of State.
std::vector<cplx> dense_apply(const std::vector<cplx>& v, const Matrix& g,
                              const std::vector<int>& qs, int n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t sub_dim = std::size_t{1} << qs.size();
    std::vector<cplx> out(dim, cplx{0, 0});
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t sub_i = 0, rest = i;
        for (std::size_t t = 0; t < qs.size(); ++t) {
            if (i & (std::size_t{1} << qs[t])) sub_i |= std::size_t{1} << t;
            rest &= ~(std::size_t{1} << qs[t]);
        }
        for (std::size_t sub_j = 0; sub_j < sub_dim; ++sub_j) {
            std::size_t j = rest;
            for (std::size_t t = 0; t < qs.size(); ++t) {
                if (sub_j & (std::size_t{1} << t)) j |= std::size_t{1} << qs[t];
            }
            out[i] += g[sub_i][sub_j] * v[j];
        }
    }
    return out;
}

Matrix mat_h() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {{r, r}, {r, -r}};
}
Matrix mat_x() { return {{0, 1}, {1, 0}}; }
Matrix mat_rx(double t) {
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    return {{cplx{c, 0}, cplx{0, -s}}, {cplx{0, -s}, cplx{c, 0}}};
}
Matrix mat_ry(double t) {
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    return {{cplx{c, 0}, cplx{-s, 0}}, {cplx{s, 0}, cplx{c, 0}}};
}
Matrix mat_rz(double t) {
    return {{std::polar(1.0, -t / 2), 0}, {0, std::polar(1.0, t / 2)}};
}
Matrix mat_rzz(double t) {
    const cplx e = std::polar(1.0, -t / 2), o = std::polar(1.0, t / 2);
    return {{e, 0, 0, 0}, {0, o, 0, 0}, {0, 0, o, 0}, {0, 0, 0, e}};
}
Matrix mat_cx() {
    // sub bit 0 = control, sub bit 1 = target
    return {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
}
Matrix mat_cphase(double t, int k_plus_one) {
    const std::size_t dim = std::size_t{1} << k_plus_one;
    Matrix g(dim, std::vector<cplx>(dim, cplx{0, 0}));
    for (std::size_t i = 0; i < dim; ++i) g[i][i] = 1.0;
    g[dim - 1][dim - 1] = std::polar(1.0, t);
    return g;
}
Matrix mat_qft(int m) {
    const std::size_t dim = std::size_t{1} << m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    Matrix g(dim, std::vector<cplx>(dim));
    for (std::size_t v = 0; v < dim; ++v) {
        for (std::size_t x = 0; x < dim; ++x) {
            g[v][x] = scale * std::polar(1.0, 2.0 * std::numbers::pi *
                                                  static_cast<double>(v * x) /
                                                  static_cast<double>(dim));
        }
    }
    return g;
}
Matrix dagger(const Matrix& g) {
    Matrix out(g.size(), std::vector<cplx>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) out[i][j] = std::conj(g[j][i]);
    }
    return out;
}

std::vector<cplx> random_state(int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : v) {
        a = cplx{gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : v) a /= norm;
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

State state_with_amps(int n, const std::vector<cplx>& v) {
    State s(n);
    s.amplitudes() = v;
    return s;
}

}  // namespace

TEST_CASE("initial state is |0...0>", "[sim]") {
    State s1(1);
    CHECK(s1.amp(0) == cplx{1, 0});
    CHECK(s1.amp(1) == cplx{0, 0});

    State s3(3);
    CHECK(s3.amp(0) == cplx{1, 0});
    for (std::size_t i = 1; i < 8; ++i) CHECK(s3.amp(i) == cplx{0, 0});

    CHECK_THROWS_AS(State(23), CapacityError);
    CHECK_THROWS_AS(State(0), CapacityError);
}

TEST_CASE("textbook identities", "[sim]") {
    SECTION("H on |0>") {
        State s(1);
        s.h(0);
        CHECK(std::abs(s.amp(0) - cplx{1 / std::numbers::sqrt2, 0}) < 1e-15);
        CHECK(std::abs(s.amp(1) - cplx{1 / std::numbers::sqrt2, 0}) < 1e-15);
    }
    SECTION("X is an involution") {
        Rng rng(7);
        State s = state_with_amps(3, random_state(3, rng));
        const auto before = s.amplitudes();
        s.x(1);
        s.x(1);
        CHECK(max_diff(s.amplitudes(), before) < 1e-15);
    }
    SECTION("RZZ phases |11> by e^{-i theta/2}") {
        const double theta = 0.7;
        State s(2);
        s.x(0);
        s.x(1);
        s.rzz(0, 1, theta);
        CHECK(std::abs(s.amp(3) - std::polar(1.0, -theta / 2)) < 1e-15);
    }
}

TEST_CASE("every gate matches the dense matrix oracle", "[sim][oracle]") {
    Rng rng(42);
    const int n = 3;
    const double theta = 1.234567;

    auto check_gate = [&](const Matrix& g, const std::vector<int>& qs, auto&& apply_fn) {
        const std::vector<cplx> v = random_state(n, rng);
        State s = state_with_amps(n, v);
        apply_fn(s);
        const std::vector<cplx> want = dense_apply(v, g, qs, n);
        REQUIRE(max_diff(s.amplitudes(), want) < 1e-10);
    };

    for (int q = 0; q < n; ++q) {
        check_gate(mat_h(), {q}, [&](State& s) { s.h(q); });
        check_gate(mat_x(), {q}, [&](State& s) { s.x(q); });
        check_gate(mat_rx(theta), {q}, [&](State& s) { s.rx(q, theta); });
        check_gate(mat_ry(theta), {q}, [&](State& s) { s.ry(q, theta); });
        check_gate(mat_rz(theta), {q}, [&](State& s) { s.rz(q, theta); });
        check_gate(mat_cphase(theta, 1), {q}, [&](State& s) {
            s.controlled_phase(theta, {}, q);
        });
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            check_gate(mat_rzz(theta), {a, b}, [&](State& s) { s.rzz(a, b, theta); });
            check_gate(mat_cx(), {a, b}, [&](State& s) { s.cx(a, b); });
            const int ctrl[1] = {a};
            check_gate(mat_cphase(theta, 2), {a, b},
                       [&](State& s) { s.controlled_phase(theta, ctrl, b); });
        }
    }
    // Two controls.
    const int ctrl2[2] = {0, 2};
    check_gate(mat_cphase(theta, 3), {0, 2, 1},
               [&](State& s) { s.controlled_phase(theta, ctrl2, 1); });
}

TEST_CASE("qft matches the DFT matrix and inverts cleanly", "[sim][qft]") {
    Rng rng(43);
    for (int m = 1; m <= 3; ++m) {
        std::vector<int> reg(m);
        for (int i = 0; i < m; ++i) reg[i] = i;
        const std::vector<cplx> v = random_state(m, rng);

        State s = state_with_amps(m, v);
        s.qft(reg);
        CHECK(max_diff(s.amplitudes(), dense_apply(v, mat_qft(m), reg, m)) < 1e-10);

        State t = state_with_amps(m, v);
        t.iqft(reg);
        CHECK(max_diff(t.amplitudes(), dense_apply(v, dagger(mat_qft(m)), reg, m)) < 1e-10);
    }

    SECTION("on a sub-register") {
        const std::vector<int> reg = {0, 2};
        const std::vector<cplx> v = random_state(3, rng);
        State s = state_with_amps(3, v);
        s.qft(reg);
        CHECK(max_diff(s.amplitudes(), dense_apply(v, mat_qft(2), reg, 3)) < 1e-10);
    }

    SECTION("iqft then qft is the identity") {
        const std::vector<int> reg = {0, 1, 2, 3};
        const std::vector<cplx> v = random_state(4, rng);
        State s = state_with_amps(4, v);
        s.iqft(reg);
        s.qft(reg);
        CHECK(max_diff(s.amplitudes(), v) < 1e-9);
    }
}

TEST_CASE("norm is preserved under long random circuits", "[sim]") {
    Rng rng(44);
    const int n = 6;
    State s(n);
    std::uniform_int_distribution<int> pick_kind(0, 7);
    std::uniform_int_distribution<int> pick_q(0, n - 1);
    std::uniform_real_distribution<double> pick_angle(-3.14, 3.14);
    for (int step = 0; step < 1000; ++step) {
        const int q = pick_q(rng);
        int q2 = pick_q(rng);
        if (q2 == q) q2 = (q + 1) % n;
        switch (pick_kind(rng)) {
            case 0: s.h(q); break;
            case 1: s.x(q); break;
            case 2: s.rx(q, pick_angle(rng)); break;
            case 3: s.ry(q, pick_angle(rng)); break;
            case 4: s.rz(q, pick_angle(rng)); break;
            case 5: s.rzz(q, q2, pick_angle(rng)); break;
            case 6: s.cx(q, q2); break;
            default: {
                const int ctrl[1] = {q};
                s.controlled_phase(pick_angle(rng), ctrl, q2);
            }
        }
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("diagonal expectation", "[sim][expectation]") {
    QuboProblem p(3);
    p.add_linear(0, 2.0);
    p.add_linear(1, -3.0);
    p.add_quadratic(0, 1, 4.0);

    SECTION("computational basis state gives the plain objective") {
        State s(3);
        s.x(1);  // |010> (x0=0, x1=1, x2=0)
        CHECK(expectation_diagonal(s, p) == Catch::Approx(-3.0).margin(1e-12));
    }
    SECTION("uniform superposition averages all evaluations") {
        State s(3);
        for (int q = 0; q < 3; ++q) s.h(q);
        double mean = 0.0;
        const auto dense = testing_oracles::densify(p);
        for (std::uint64_t mask = 0; mask < 8; ++mask) {
            mean += testing_oracles::naive_evaluate(dense, assignment_from_mask(mask, 3));
        }
        mean /= 8.0;
        CHECK(mean == 0.5);  // frozen from the enumeration oracle above
        CHECK(expectation_diagonal(s, p) == Catch::Approx(mean).margin(1e-12));
    }
    SECTION("always within the brute-force range") {
        Rng rng(45);
        for (int trial = 0; trial < 20; ++trial) {
            State s = state_with_amps(3, random_state(3, rng));
            const auto extrema = testing_oracles::naive_extrema(testing_oracles::densify(p));
            const double e = expectation_diagonal(s, p);
            CHECK(e >= extrema.min_value - 1e-9);
            CHECK(e <= extrema.max_value + 1e-9);
        }
    }
    SECTION("dimension mismatch is rejected") {
        State s(2);
        CHECK_THROWS_AS(expectation_diagonal(s, p), DimensionError);
    }
}

TEST_CASE("value table agrees with evaluate exactly", "[sim][expectation]") {
    Rng rng(46);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const QuboProblem p = testing_oracles::random_problem(rng, n, 0.6, -5.0, 5.0);
        const std::vector<double> table = build_value_table(p);
        for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
            REQUIRE(table[mask] == evaluate(p, assignment_from_mask(mask, n)));
        }
    }
}

TEST_CASE("sampling", "[sim][sample]") {
    SECTION("basis states sample deterministically") {
        State s(3);
        s.x(0);
        s.x(2);
        Rng rng(47);
        for (std::uint64_t idx : sample(s, 32, rng)) CHECK(idx == 5);
    }
    SECTION("H|0> is a fair coin") {
        State s(1);
        s.h(0);
        Rng rng(48);
        const auto draws = sample(s, 100000, rng);
        double ones = 0;
        for (std::uint64_t idx : draws) ones += static_cast<double>(idx);
        const double freq = ones / 100000.0;
        CHECK(freq > 0.49);
        CHECK(freq < 0.51);
    }
    SECTION("same seed, same sequence") {
        State s(4);
        for (int q = 0; q < 4; ++q) s.h(q);
        Rng rng1(49), rng2(49);
        CHECK(sample(s, 64, rng1) == sample(s, 64, rng2));
    }
    SECTION("shots must be positive") {
        State s(1);
        Rng rng(50);
        CHECK_THROWS_AS(sample(s, 0, rng), Error);
    }
}
