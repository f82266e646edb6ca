// SPDX-License-Identifier: Apache-2.0
//
// Study harness: configuration, seeded corpora, CSV/JSON/SVG emission.
// Every study is deterministic for a fixed config: loops run in config
// order, the RNG is an explicit integer mix, and floats print with a
// fixed format, so a rerun reproduces its CSV byte for byte.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gvar {

struct StudyConfig {
    std::string study;                 // embedding | convergence | divergence | vn | local | inclusion
    int d = 2;
    std::vector<int> grid_sizes = {4, 4};
    int instances = 500;
    std::string lambda_spec = "harmonic";
    std::optional<std::uint64_t> seed;  // mandatory for the random corpora
    std::vector<int> sweep = {8, 16, 32, 64};
    std::string out_dir = ".";
    bool svg = false;
    std::string xi = "loglog";
    std::string source = "";           // convergence/local source override
    int local_levels = 9;              // eps = 2^-j, j = 0..local_levels-1
    int local_samples = 7;             // grid points per axis inside the box
    int max_pow = 8;                   // partial-sum bounds up to 2^max_pow
    int oversample = 4;                // coefficient sampling factor
    std::map<std::string, double> tolerances;

    double tol(const std::string& key, double fallback) const;

    static StudyConfig from_json(const nlohmann::json& j);
    static StudyConfig from_file(const std::string& path);
    nlohmann::json to_json() const;
};

struct StudyReport {
    std::string study;
    nlohmann::json summary;
    bool passed = false;
    std::vector<std::string> failures;
    std::vector<std::string> outputs;  // files written
};

StudyReport run_embedding_study(const StudyConfig& cfg);
StudyReport run_convergence_study(const StudyConfig& cfg);
StudyReport run_divergence_study(const StudyConfig& cfg);
StudyReport run_vn_study(const StudyConfig& cfg);
StudyReport run_local_study(const StudyConfig& cfg);
StudyReport run_inclusion_study(const StudyConfig& cfg);

/// Dispatch on cfg.study.
StudyReport run_study(const StudyConfig& cfg);

/// Fixed-format float for CSV cells ("%.17g", round-trip exact).
std::string csv_num(double v);

}  // namespace gvar
