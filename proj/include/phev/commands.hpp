#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phev/profile.hpp"
#include "phev/scenario.hpp"

namespace phev::commands {

struct RunReport {
    std::string scenario_hash;
    std::string mode;  // "analytic", "mc" or "compare"
    std::string method;  // evaluation path(s) used
    std::vector<std::string> files;
    std::map<std::string, double> metrics;
    std::vector<std::string> notes;
    double wall_seconds = 0.0;
};

/// Serializes the report as indented JSON.
std::string report_to_json(const RunReport& report);

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    unsigned workers = 0;
    bool svg = false;
};

/// Folded analytic per-EV profile for a scenario (closed form for a
/// Gaussian arrival with a uniform charge time, quadrature otherwise).
DemandProfile expected_profile(const ScenarioConfig& config);

/// Monte Carlo per-EV profile for a scenario.
DemandProfile simulated_profile(const ScenarioConfig& config, unsigned workers = 0);

/// Mean demand over 18:00-01:00 divided by the mean over 08:00-14:00.
double evening_morning_ratio(const DemandProfile& profile);

/// Writes <out>/<name>_expected.csv and a report.
RunReport cmd_expected(const ScenarioConfig& config, const CommandOptions& options);

/// Writes <out>/<name>_simulate.csv (with standard errors) and a report.
RunReport cmd_simulate(const ScenarioConfig& config, const CommandOptions& options);

/// Analytic profiles for every config, pairwise deltas in
/// <out>/compare_metrics.csv and optionally an overlay SVG. Requires at
/// least two configs (InvalidParameter) with identical grids (GridMismatch).
RunReport cmd_compare(std::span<const ScenarioConfig> configs, const CommandOptions& options);

}  // namespace phev::commands
