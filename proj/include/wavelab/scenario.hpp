#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace wavelab::scenario {

enum class Kind { ch_evolution, peakon, linear_sw, variational_check, scaling_demo, cross_validation };

const char* to_string(Kind kind);

/// Exit codes shared by the library and the CLI.
inline constexpr int exit_success = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical_halt = 3;

struct ScenarioConfig {
    Kind kind = Kind::scaling_demo;
    int n = 256;
    double length = 6.283185307179586;
    nlohmann::json params = nlohmann::json::object();
    std::filesystem::path output_dir = "wavelab_out";
    std::uint64_t seed = 0;
    nlohmann::json source;  ///< the parsed document, for hashing
};

/// Validates structure and every kind-specific key before anything runs.
/// Throws ConfigError with a message naming the offending key.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64 of the canonical (sorted-key) JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& doc);

struct SummaryReport {
    Kind kind = Kind::scaling_demo;
    int exit_code = exit_success;
    std::string status = "ok";
    std::string diagnostic;
    nlohmann::json metrics = nlohmann::json::object();

    nlohmann::json to_json() const;
};

/// Executes the scenario, writes its CSV/JSON artifacts plus manifest.json
/// into config.output_dir, and returns the headline metrics. Numerical halts
/// (wave breaking, peakon collision) are reported with exit_numerical_halt.
SummaryReport run(const ScenarioConfig& config);

}  // namespace wavelab::scenario
