#pragma once

// Run configuration for the CLI: JSON config file with snake_case keys,
// merged with command-line overrides.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbethe/states.hpp"

namespace qbethe::cli {

struct Tolerances {
    double newton = 1e-10;
    double eigen = 1e-8;
    double relation = 1e-12;
};

struct RunConfig {
    int n = 2;
    int m = 2;
    states::ModelParams params{0.5, 0.3, -0.2, 0.4, -0.1};
    Tolerances tolerances;
    std::vector<std::string> suites = {"all"};
    std::uint64_t seed = 1;
    std::string out_path;  // empty writes to stdout
    std::string format = "json";

    /// Throws UsageError on invalid values (n < 0, m < 1, nonpositive
    /// tolerances, unknown format).
    void validate() const;
};

/// Merges JSON fields into the config (unknown keys rejected).
void merge_json(RunConfig& cfg, const nlohmann::json& j);

/// Loads a JSON config file.
RunConfig load_config(const std::string& path);

}  // namespace qbethe::cli
