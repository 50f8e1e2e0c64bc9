#pragma once

#include <string>
#include <vector>

#include "hlab/grid.hpp"

namespace hlab {

struct RunOptions {
    std::string output_dir = "out";
    double grid_half_width = kDefaultHalfWidth;
    std::size_t grid_points = kDefaultPoints;
    std::uint64_t seed = 1;
    int parallel = 1;
};

struct TaskOutcome {
    std::string name;
    std::string kind;
    bool config_ok = true;
    bool assertions_ok = true;
    std::string summary;
    std::string csv_body;      // deterministic; no timestamps
    std::string json_summary;  // deterministic
    double elapsed_ms = 0.0;   // log only
};

struct RunReport {
    int exit_code = 0;  // 0 pass, 1 config error, 2 assertion failure
    std::vector<TaskOutcome> tasks;
    std::string first_error;
};

/// Validates the whole manifest first (exit 1 on the first offending field),
/// then executes the tasks in order, isolating failures; artifacts land in
/// output_dir and a JSON-lines run log records one line per task.
RunReport run_manifest_file(const std::string& path, const RunOptions& cli);
RunReport run_manifest_text(const std::string& json_text, const RunOptions& cli);

/// Named test functions shared by manifests and the CLI:
/// one | gaussian | tanh | gauss-tanh | resolvent:RE:IM | exp-mod:S0.
std::function<cplx(cplx)> named_function(const std::string& spec);

}  // namespace hlab
