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

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qubosel/errors.hpp"
#include "qubosel/qubo.hpp"

namespace qubosel {

// QUBO file format (JSON): num_vars, offset, linear as [index, value] pairs,
// quadratic as [i, j, value] triples with i < j, optional reference_optimum.

inline nlohmann::ordered_json qubo_to_json(const QuboProblem& p) {
    nlohmann::ordered_json j;
    j["num_vars"] = p.num_vars();
    j["offset"] = p.offset();
    auto lin = nlohmann::ordered_json::array();
    for (const auto& [i, v] : p.linear()) lin.push_back({i, v});
    j["linear"] = std::move(lin);
    auto quad = nlohmann::ordered_json::array();
    for (const auto& [key, v] : p.quadratic()) quad.push_back({key.first, key.second, v});
    j["quadratic"] = std::move(quad);
    if (p.reference_optimum) j["reference_optimum"] = *p.reference_optimum;
    return j;
}

inline QuboProblem qubo_from_json(const nlohmann::json& j, const std::string& where = "qubo") {
    try {
        const int n = j.at("num_vars").get<int>();
        QuboProblem p(n, j.value("offset", 0.0));
        for (const auto& entry : j.value("linear", nlohmann::json::array())) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ParseError(where + ": linear entries must be [index, value] pairs");
            }
            p.add_linear(entry[0].get<int>(), entry[1].get<double>());
        }
        for (const auto& entry : j.value("quadratic", nlohmann::json::array())) {
            if (!entry.is_array() || entry.size() != 3) {
                throw ParseError(where + ": quadratic entries must be [i, j, value] triples");
            }
            const int i = entry[0].get<int>();
            const int k = entry[1].get<int>();
            if (i >= k) {
                throw ParseError(where + ": quadratic pair (" + std::to_string(i) + ", " +
                                 std::to_string(k) + ") must satisfy i < j");
            }
            p.add_quadratic(i, k, entry[2].get<double>());
        }
        if (j.contains("reference_optimum") && !j["reference_optimum"].is_null()) {
            p.reference_optimum = j["reference_optimum"].get<double>();
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline void save_qubo(const QuboProblem& p, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_qubo: cannot open " + path.string() + " for writing");
    out << qubo_to_json(p).dump(2) << '\n';
}

inline QuboProblem load_qubo(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_qubo: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return qubo_from_json(j, path.string());
}

}  // namespace qubosel
