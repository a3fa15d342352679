#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phev/scenario.hpp"

namespace phev::config {

/// Parses a JSON scenario description. Unknown keys and invalid values
/// raise ConfigInvalid naming the field, e.g. "charge_time.high".
///
/// Schema (all times in hours):
///
///   {
///     "name": "fig9-uniform",
///     "fleet_size": 100000,
///     "arrival": {"family": "gaussian", "mean": 19, "variance": 10},
///     "charge_time": {"family": "uniform", "low": 1, "high": 11},
///     "outlet": "Standard",
///     "power_kw": 1.4,
///     "resolution_h": 0.05,
///     "seed": 1,
///     "fold_window": 2,
///     "notes": ["..."]
///   }
///
/// A distribution is either a family with its parameters (gaussian: mean,
/// variance; uniform: low, high; exponential: mean; truncated_gaussian:
/// mu, variance; rician: nu, sigma; lattice: atoms, probs) or a family with
/// "match": {"mean": m, "variance": v}. Instead of "charge_time" a config
/// may give "distance": {"distribution": {...}, "mode": "rate"|"energy",
/// "kwh_per_mile": 0.25}. "fold_window" may be "auto".
ScenarioConfig parse_scenario(std::string_view json_text);

ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Replaces the seed and refreshes the canonical text (and so the hash).
void override_seed(ScenarioConfig& config, std::uint64_t seed);

std::vector<std::string> preset_names();

/// JSON text of a shipped preset. Throws ConfigInvalid for unknown names.
std::string preset_text(std::string_view name);

ScenarioConfig load_preset(std::string_view name);

}  // namespace phev::config
