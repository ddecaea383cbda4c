#pragma once

#include <string>

#include <json.hpp>

#include "prh/solver.hpp"

namespace prh {

// A full run description as ingested by the CLI.
struct RunConfig {
    ProblemSpec problem;
    SolveConfig solve;
    std::string outputs = ".";
    uint64_t seed = 0;
    bool compare_to_limit = false; // also compute E_{V_inf} and the margin
    nlohmann::json echo;           // effective configuration for the report
};

// Parse and validate a run configuration.  All hypothesis checks (V1, V2, W)
// run here; violations throw ConfigError with a field-precise message unless
// override_hypotheses.  File paths (tabulated potential/kernel, custom init)
// are resolved relative to the process working directory.
RunConfig load_run_config(const nlohmann::json& j, bool override_hypotheses = false);
RunConfig load_run_config_file(const std::string& path, bool override_hypotheses = false);

}  // namespace prh
