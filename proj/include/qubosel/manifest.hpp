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
#include <vector>

#include <json.hpp>

#include "qubosel/errors.hpp"
#include "qubosel/problem_gen.hpp"

namespace qubosel {

/// One suite entry: the generation recipe and its QUBO file name.
struct ManifestEntry {
    ProblemSpec spec;
    std::string file;
};

inline nlohmann::ordered_json manifest_to_json(const std::vector<ManifestEntry>& entries) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const ManifestEntry& e : entries) {
        nlohmann::ordered_json item;
        item["file"] = e.file;
        item["family"] = family_name(e.spec.family);
        item["size"] = e.spec.size;
        item["density"] = e.spec.density;
        item["coeff_lo"] = e.spec.coeff_lo;
        item["coeff_hi"] = e.spec.coeff_hi;
        if (e.spec.penalty) item["penalty"] = *e.spec.penalty;
        else item["penalty"] = nullptr;
        item["seed"] = e.spec.seed;
        j.push_back(std::move(item));
    }
    return j;
}

inline std::vector<ManifestEntry> manifest_from_json(const nlohmann::json& j,
                                                     const std::string& where = "manifest") {
    try {
        std::vector<ManifestEntry> entries;
        for (const auto& item : j) {
            ManifestEntry e;
            e.file = item.at("file").get<std::string>();
            e.spec.family = family_from_name(item.at("family").get<std::string>());
            e.spec.size = item.at("size").get<int>();
            e.spec.density = item.at("density").get<double>();
            e.spec.coeff_lo = item.at("coeff_lo").get<double>();
            e.spec.coeff_hi = item.at("coeff_hi").get<double>();
            if (item.contains("penalty") && !item["penalty"].is_null()) {
                e.spec.penalty = item["penalty"].get<double>();
            }
            e.spec.seed = item.at("seed").get<std::uint64_t>();
            entries.push_back(std::move(e));
        }
        return entries;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(where + ": " + ex.what());
    }
}

inline void save_manifest(const std::vector<ManifestEntry>& entries,
                          const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_manifest: cannot open " + path.string());
    out << manifest_to_json(entries).dump(2) << '\n';
}

inline std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_manifest: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return manifest_from_json(j, path.string());
}

}  // namespace qubosel
