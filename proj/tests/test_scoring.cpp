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

#include <filesystem>
#include <fstream>

#include "qubosel/scoring.hpp"
#include "helpers.hpp"

using namespace qubosel;

TEST_CASE("distribution statistics", "[scoring]") {
    RunDistribution d;
    d.values = {-3.0, -3.0, -1.0, 0.0};
    d.assignments = {{0, 1}, {0, 1}, {1, 1}, {0, 0}};

    const DistributionStats s = summarize(d, -3.0);
    CHECK(s.p_s == 0.5);
    CHECK(s.e_opt == -3.0);
    CHECK(s.e_avg == -1.75);
    CHECK(s.e_var == Catch::Approx(1.6875));
    CHECK(s.p_v == 1.0);
    CHECK(s.e_opt <= s.e_avg);

    SECTION("constraint checks feed p_v") {
        std::vector<ConstraintCheck> checks;
        checks.push_back([](const Assignment& x) { return x[0] == 0; });
        const DistributionStats c = summarize(d, -3.0, checks);
        CHECK(c.p_v == 0.75);
    }
    SECTION("empty distributions are rejected") {
        RunDistribution empty;
        CHECK_THROWS_AS(summarize(empty, 0.0), Error);
    }
}

TEST_CASE("score of a perfect solver is -2 at unit weights", "[scoring]") {
    DistributionStats s;
    s.p_s = 1.0;
    s.e_opt = s.e_avg = -3.0;
    s.e_var = 0.0;
    s.p_v = 1.0;
    CHECK(score(s, -3.0, {}, 9.0) == -2.0);
}

TEST_CASE("score of a hit-less but exact distribution is -1", "[scoring]") {
    DistributionStats s;
    s.p_s = 0.0;
    s.e_opt = s.e_avg = 5.0;
    s.e_var = 0.0;
    s.p_v = 1.0;
    CHECK(score(s, 5.0, {}, 4.0) == -1.0);
}

TEST_CASE("score of the two-point distribution {E_ref, E_ref + W}", "[scoring]") {
    // Term by term at unit weights: -(1/2) alpha + 0 beta + (1/2) gamma
    // + (1/4) delta - eta, computed by direct arithmetic.
    const double w = 8.0;
    const double e_ref = -3.0;
    RunDistribution d;
    d.values = {e_ref, e_ref + w};
    d.assignments = {{0}, {1}};
    const DistributionStats s = summarize(d, e_ref);
    CHECK(s.p_s == 0.5);
    CHECK(s.e_opt == e_ref);
    CHECK(s.e_avg == e_ref + w / 2.0);
    CHECK(s.e_var == w * w / 4.0);
    const double f = score(s, e_ref, {}, w);
    CHECK(f == Catch::Approx(-0.5 + 0.0 + 0.5 + 0.25 - 1.0).margin(1e-12));
    CHECK(f == Catch::Approx(-0.75).margin(1e-12));
}

TEST_CASE("score monotonicity", "[scoring]") {
    DistributionStats base;
    base.p_s = 0.4;
    base.e_opt = 1.0;
    base.e_avg = 2.0;
    base.e_var = 0.5;
    base.p_v = 0.8;
    const double f0 = score(base, 1.0, {}, 4.0);

    DistributionStats s = base;
    s.p_s += 0.1;
    CHECK(score(s, 1.0, {}, 4.0) < f0);
    s = base;
    s.p_v += 0.1;
    CHECK(score(s, 1.0, {}, 4.0) < f0);
    s = base;
    s.e_avg += 0.5;
    CHECK(score(s, 1.0, {}, 4.0) > f0);
    s = base;
    s.e_var += 0.5;
    CHECK(score(s, 1.0, {}, 4.0) > f0);
}

TEST_CASE("score is invariant under a uniform shift", "[scoring]") {
    RunDistribution d;
    d.values = {2.0, 3.5, 2.0, 6.0};
    d.assignments.assign(4, Assignment{0});
    const DistributionStats a = summarize(d, 2.0);
    RunDistribution shifted = d;
    for (double& v : shifted.values) v += 11.0;
    const DistributionStats b = summarize(shifted, 13.0);
    CHECK(score(a, 2.0, {}, 7.0) == Catch::Approx(score(b, 13.0, {}, 7.0)).margin(1e-12));
}

TEST_CASE("degenerate zero-width problems", "[scoring]") {
    DistributionStats s;
    s.p_s = 1.0;
    s.e_opt = s.e_avg = 4.0;
    s.e_var = 0.0;
    s.p_v = 1.0;
    // Energy terms all vanish: fine.
    CHECK(score(s, 4.0, {}, 0.0) == -2.0);
    // Nonzero gap with zero width: rejected.
    s.e_avg = 5.0;
    CHECK_THROWS_AS(score(s, 4.0, {}, 0.0), DegenerateProblemError);
}

TEST_CASE("raw score mode skips normalization", "[scoring]") {
    DistributionStats s;
    s.p_s = 0.0;
    s.e_opt = 1.0;
    s.e_avg = 3.0;
    s.e_var = 2.0;
    s.p_v = 1.0;
    CHECK(score(s, 0.0, {}, 10.0, /*normalized=*/false) ==
          Catch::Approx(1.0 + 3.0 + 2.0 - 1.0).margin(1e-12));
}

TEST_CASE("best solver selection and tie-breaking", "[scoring]") {
    std::map<SolverKind, double> scores = {
        {SolverKind::Qaoa, -2.0}, {SolverKind::Vqe, -1.0},     {SolverKind::Gas, -1.0},
        {SolverKind::QaProxy, -1.0}, {SolverKind::Sa, -2.0},
    };
    CHECK(best_solver(scores) == SolverKind::Qaoa);  // tie with SA goes to QAOA

    scores[SolverKind::Vqe] = -3.0;
    CHECK(best_solver(scores) == SolverKind::Vqe);

    for (auto& [k, v] : scores) v = -1.5;
    CHECK(best_solver(scores) == SolverKind::Qaoa);  // full parity

    scores.erase(SolverKind::Gas);
    CHECK_THROWS_AS(best_solver(scores), CompletenessError);
}

TEST_CASE("labeling a forced-parity problem", "[scoring][label]") {
    QuboProblem zero(2, 1.0);
    const DatasetRecord r = label_problem(zero, "zero", 10, {}, 99);
    CHECK(r.label == SolverKind::Qaoa);
    for (double p : r.ps) CHECK(p == 1.0);
    for (double s : r.scores) CHECK(s == -2.0);
}

TEST_CASE("labeling a single-variable problem", "[scoring][label]") {
    QuboProblem p(1);
    p.add_linear(0, -1.0);
    const DatasetRecord r = label_problem(p, "single", 20, {}, 7);
    CHECK(r.label == SolverKind::Qaoa);
    for (double ps : r.ps) CHECK(ps >= 0.95);
    CHECK(r.features.n_vars == 1);
    CHECK(r.features.n_lin == 1);
}

TEST_CASE("label always equals the argmin of the stored scores", "[scoring][label]") {
    Rng rng(1234);
    for (int trial = 0; trial < 3; ++trial) {
        const QuboProblem p = testing_oracles::random_problem(rng, 4, 0.8, -3.0, 3.0);
        const DatasetRecord r = label_problem(p, "t", 10, {}, trial);
        std::map<SolverKind, double> scores;
        for (std::size_t k = 0; k < kAllSolvers.size(); ++k) scores[kAllSolvers[k]] = r.scores[k];
        CHECK(best_solver(scores) == r.label);
    }
}

TEST_CASE("dataset csv round trip", "[scoring][io]") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qubosel_test_dataset";
    fs::create_directories(dir);

    std::vector<DatasetRecord> records;
    DatasetRecord r;
    r.problem_id = "qubo_0000";
    r.features = extract_features([] {
        QuboProblem p(3);
        p.add_linear(0, 2.0);
        p.add_linear(1, -3.0);
        p.add_quadratic(0, 1, 4.0);
        return p;
    }());
    r.scores = {-2.0, -1.5, -1.0, -0.5, 0.123456789012345};
    r.ps = {1.0, 0.75, 0.5, 0.25, 0.0};
    r.label = SolverKind::Qaoa;
    records.push_back(r);
    r.problem_id = "qubo_0001";
    r.label = SolverKind::Sa;
    records.push_back(r);

    const fs::path file = dir / "dataset.csv";
    save_dataset(records, file);
    const auto loaded = load_dataset(file);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded == records);

    SECTION("empty dataset is a valid header-only file") {
        const fs::path empty = dir / "empty.csv";
        save_dataset({}, empty);
        CHECK(load_dataset(empty).empty());
        std::ifstream in(empty);
        std::string header;
        std::getline(in, header);
        CHECK(header == kDatasetHeader);
    }
    SECTION("short rows are rejected with a line number") {
        const fs::path bad = dir / "bad.csv";
        std::ofstream out(bad);
        out << kDatasetHeader << "\n";
        out << "x,3,1,1,0,0,4,0,1,2,-2,-1,-1,-1,qaoa\n";  // 4 solver scores only
        out.close();
        try {
            load_dataset(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(":2:") != std::string::npos);
        }
    }
}

TEST_CASE("cumulative csv export sorts each column", "[scoring][io]") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qubosel_test_dataset";
    fs::create_directories(dir);
    const fs::path file = dir / "cumulative.csv";
    write_cumulative_csv({{"sa", {3.0, -1.0, 2.0}}, {"qa", {0.0, -5.0, 1.0}}}, file);
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "sa,qa");
    std::getline(in, line);
    CHECK(line == "-1,-5");
    std::getline(in, line);
    CHECK(line == "2,0");
    std::getline(in, line);
    CHECK(line == "3,1");
}
