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

#include <algorithm>

#include "qubosel/problem_gen.hpp"
#include "qubosel/solvers/run.hpp"
#include "helpers.hpp"

using namespace qubosel;

TEST_CASE("default configs follow the size-scaling rules", "[solvers][config]") {
    QuboProblem p9(9);
    p9.add_linear(0, 1.0);
    CHECK(default_config(SolverKind::Qaoa, p9).qaoa.reps == 6);

    QuboProblem p4(4);
    p4.add_linear(0, 1.0);
    CHECK(default_config(SolverKind::Sa, p4).sa.sweeps == 10);
    CHECK(default_config(SolverKind::QaProxy, p4).qa_proxy.sweeps == 25);

    QuboProblem p5(5);
    p5.add_linear(0, 1.0);
    CHECK(default_config(SolverKind::Gas, p5).gas.threshold == 10);

    QuboProblem p8(8);
    p8.add_linear(0, 3.0);
    p8.add_linear(1, -0.5);
    const SolverConfig c = default_config(SolverKind::Sa, p8);
    CHECK(c.sa.sweeps == 26);
    CHECK(c.sa.temp_start == 6.0);   // 2 max|coeff|
    CHECK(c.sa.temp_end == 0.005);   // 0.01 min nonzero |coeff|
    CHECK(c.qa_proxy.sweeps == 95);
    CHECK(c.qa_proxy.temperature == Catch::Approx(0.3));
}

TEST_CASE("priority ranks are a strict total order", "[solvers][config]") {
    CHECK(priority_rank(SolverKind::Qaoa) == 1);
    CHECK(priority_rank(SolverKind::Vqe) == 2);
    CHECK(priority_rank(SolverKind::Gas) == 3);
    CHECK(priority_rank(SolverKind::QaProxy) == 4);
    CHECK(priority_rank(SolverKind::Sa) == 5);
    for (SolverKind k : kAllSolvers) CHECK(solver_from_name(solver_name(k)) == k);
}

TEST_CASE("simulated annealing", "[solvers][sa]") {
    SECTION("single-variable problem is solved almost surely") {
        QuboProblem p(1);
        p.add_linear(0, -1.0);
        int hits = 0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            if (run_sa(p, {}, s).objective == -1.0) ++hits;
        }
        CHECK(hits >= 99);
    }
    SECTION("constant problem returns the offset") {
        QuboProblem p(3, 7.5);
        CHECK(run_sa(p, {}, 1).objective == 7.5);
    }
    SECTION("random N=8 problems are solved in at least 90 of 100 runs") {
        Rng rng(900);
        for (int inst = 0; inst < 3; ++inst) {
            const QuboProblem p = testing_oracles::random_problem(rng, 8, 0.5, -5.0, 5.0);
            const double optimum = testing_oracles::naive_extrema(testing_oracles::densify(p)).min_value;
            int hits = 0;
            for (std::uint64_t s = 0; s < 100; ++s) {
                if (run_sa(p, {}, derive_seed(77 + inst, s)).objective <= optimum + 1e-9) ++hits;
            }
            CHECK(hits >= 90);
        }
    }
    SECTION("objective always equals evaluate of the assignment") {
        Rng rng(901);
        for (int trial = 0; trial < 20; ++trial) {
            const QuboProblem p = testing_oracles::random_problem(rng, 6, 0.6, -4.0, 4.0);
            const RunResult r = run_sa(p, {}, trial);
            CHECK(r.objective == evaluate(p, r.assignment));
        }
    }
    SECTION("deterministic given the seed") {
        Rng rng(902);
        const QuboProblem p = testing_oracles::random_problem(rng, 7, 0.7, -3.0, 3.0);
        const RunResult a = run_sa(p, {}, 5);
        const RunResult b = run_sa(p, {}, 5);
        CHECK(a.assignment == b.assignment);
        CHECK(a.objective == b.objective);
    }
}

TEST_CASE("quantum annealing proxy", "[solvers][sqa]") {
    SECTION("single-variable problem is solved almost surely") {
        QuboProblem p(1);
        p.add_linear(0, -1.0);
        int hits = 0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            if (run_qa_proxy(p, {}, s).objective == -1.0) ++hits;
        }
        CHECK(hits >= 99);
    }
    SECTION("random N=8 problems are solved in at least 90 of 100 runs") {
        Rng rng(910);
        for (int inst = 0; inst < 3; ++inst) {
            const QuboProblem p = testing_oracles::random_problem(rng, 8, 0.5, -5.0, 5.0);
            const double optimum = testing_oracles::naive_extrema(testing_oracles::densify(p)).min_value;
            int hits = 0;
            for (std::uint64_t s = 0; s < 100; ++s) {
                if (run_qa_proxy(p, {}, derive_seed(88 + inst, s)).objective <= optimum + 1e-9) ++hits;
            }
            CHECK(hits >= 90);
        }
    }
    SECTION("zero transverse field reduces to independent replicas") {
        // Best-of-replicas at Gamma = 0 should be at least as good as the
        // median single SA chain given the same per-replica budget.
        Rng rng(911);
        const QuboProblem p = testing_oracles::random_problem(rng, 8, 0.6, -4.0, 4.0);
        QaProxyConfig qa;
        qa.gamma_start = 0.0;
        qa.gamma_end = 0.0;

        std::vector<double> qa_best, sa_values;
        for (std::uint64_t s = 0; s < 40; ++s) {
            qa_best.push_back(run_qa_proxy(p, qa, derive_seed(1, s)).objective);
            sa_values.push_back(run_sa(p, {}, derive_seed(2, s)).objective);
        }
        std::sort(sa_values.begin(), sa_values.end());
        const double sa_median = sa_values[sa_values.size() / 2];
        double qa_mean = 0.0;
        for (double v : qa_best) qa_mean += v;
        qa_mean /= static_cast<double>(qa_best.size());
        CHECK(qa_mean <= sa_median + 1e-9);
    }
    SECTION("deterministic given the seed") {
        Rng rng(912);
        const QuboProblem p = testing_oracles::random_problem(rng, 6, 0.8, -2.0, 2.0);
        CHECK(run_qa_proxy(p, {}, 9).assignment == run_qa_proxy(p, {}, 9).assignment);
    }
}

TEST_CASE("run_many", "[solvers][many]") {
    // MaxCut on the 6-cycle; optimum cuts all six edges.
    const QuboProblem p =
        max_cut_qubo(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    const SolverConfig config = default_config(SolverKind::Sa, p);

    SECTION("a single run yields a one-value distribution") {
        const RunDistribution d = run_many(p, SolverKind::Sa, config, 1, 3);
        REQUIRE(d.values.size() == 1);
        REQUIRE(d.assignments.size() == 1);
        CHECK(d.values[0] == evaluate(p, d.assignments[0]));
    }
    SECTION("same base seed gives an identical distribution") {
        const RunDistribution a = run_many(p, SolverKind::Sa, config, 20, 5);
        const RunDistribution b = run_many(p, SolverKind::Sa, config, 20, 5);
        CHECK(a.values == b.values);
        CHECK(a.assignments == b.assignments);
    }
    SECTION("job count does not change the outcome") {
        const RunDistribution a = run_many(p, SolverKind::Sa, config, 24, 5, 1);
        const RunDistribution b = run_many(p, SolverKind::Sa, config, 24, 5, 3);
        CHECK(a.values == b.values);
        CHECK(a.assignments == b.assignments);
    }
    SECTION("the oracle optimum appears among 100 SA runs") {
        const double optimum = brute_force(p).min_value;
        const RunDistribution d = run_many(p, SolverKind::Sa, config, 100, 11);
        CHECK(std::count(d.values.begin(), d.values.end(), optimum) > 0);
        for (std::size_t i = 0; i < d.values.size(); ++i) {
            REQUIRE(d.values[i] == evaluate(p, d.assignments[i]));
        }
    }
    SECTION("R must be positive") {
        CHECK_THROWS_AS(run_many(p, SolverKind::Sa, config, 0, 1), Error);
    }
}
