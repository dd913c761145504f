#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "agetime/cli/output.hpp"
#include "agetime/cli/scenario.hpp"

namespace agetime::cli {

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    double defect = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::Pass;
    std::string note;

    bool within_tolerance() const { return defect <= tolerance; }
};

struct RunReport {
    std::string command;
    ScenarioConfig scenario;
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
    std::vector<ManifestEntry> manifest;  // every file written except report.json itself
    int exit_code = 0;
};

nlohmann::json report_to_json(const RunReport& report);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;

// The objects a scenario describes, built once up front so that a bad
// scenario fails before anything is written.
struct Scenario {
    ScenarioConfig config;
    LambdaNuChart chart;
    StateFunctional state;
    Observable observable;
    std::vector<double> times;
    AgeProfile profile;
};

// Throws ConfigError if the scenario cannot be constructed.
Scenario build_scenario(const ScenarioConfig& config);

Table trajectory_table(const Scenario& scenario);
Table age_spectrum_table(const Scenario& scenario);
Table lyapunov_table(const Scenario& scenario, bool* all_monotone = nullptr);

// Each command writes into config.outputs.directory and finishes with report.json.
RunReport cmd_verify(const Scenario& scenario);
RunReport cmd_evolve(const Scenario& scenario);
RunReport cmd_age_spectrum(const Scenario& scenario);
RunReport cmd_lyapunov(const Scenario& scenario);

struct CommandOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    bool plot = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance_scale;
};

// Loads the config, applies flag overrides and runs `command`. Returns the
// process exit code; diagnostics go to `err`, a summary to `out`.
int run_command(const std::string& command, const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace agetime::cli
