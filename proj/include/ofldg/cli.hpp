#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ofldg/harness.hpp"

namespace ofldg::cli {

/// One JSON run configuration after validation. Every key has a default
/// except problem.
struct RunConfig {
    std::string problem;
    RunOptions options;
    /// convergence ladder; empty selects {10, 20, 40} in 2D and {40, 80, 160, 320} in 1D
    std::vector<int> resolutions;
    std::filesystem::path output_dir = ".";
};

/// Keys accepted in a config document.
const std::vector<std::string>& config_keys();

/// Throws Error(ConfigParse) naming the offending key, or the usual
/// construction errors for an unknown problem or k = 0 with damping.
RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json load_config(const std::filesystem::path& path);

/// "key=value"; the value is read as JSON when it parses, else as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Every effective parameter, for manifests.
nlohmann::json describe(const RunConfig& config, const ProblemSpec& problem);

std::string snapshot_file_name(const std::string& problem, int nx, int ny, int dim, double t);

/// Artifact writers; each returns the list of files written.
std::vector<std::filesystem::path> cmd_run(const RunConfig& config, std::ostream& log);
std::vector<std::filesystem::path> cmd_convergence(const RunConfig& config, std::ostream& log);
std::vector<std::filesystem::path> cmd_compare(const RunConfig& config, std::ostream& log);
void cmd_list_problems(std::ostream& out);

/// Reads OFLDG_THREADS and caps the worker count (0 or unset = auto).
void configure_threads();

/// Exit status for an exception escaping a command: 2 for configuration
/// problems, 3 for numerical failures.
int exit_code_for(const std::exception& e);

} // namespace ofldg::cli
