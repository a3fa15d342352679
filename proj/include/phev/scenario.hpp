#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phev/analytic.hpp"
#include "phev/distribution.hpp"
#include "phev/profile.hpp"

namespace phev {

/// A charging outlet: supply voltage and current, power draw and the
/// driving range replenished per hour of charging.
struct OutletSpec {
    std::string name;
    double voltage_v;
    double current_a;
    double power_kw;
    double miles_per_hour;
};

/// The four outlet types: Standard, NewerStandard, SingleFast, TwinFast.
std::span<const OutletSpec> outlet_table() noexcept;

/// Case-insensitive lookup that ignores spaces, '-' and '_'
/// ("newer standard" finds NewerStandard). Throws UnknownOutlet.
OutletSpec outlet_lookup(std::string_view name);

/// How driven distance converts to charging time.
///   Rate:   T = miles / outlet.miles_per_hour
///   Energy: T = miles * kwh_per_mile / outlet.power_kw
/// The outlet table's miles/hour figures imply 0.47 kWh/mile for the
/// Standard outlet, so the two modes disagree by roughly a factor of two.
enum class ChargeTimeMode { Rate, Energy };

std::string_view mode_name(ChargeTimeMode mode) noexcept;
ChargeTimeMode parse_mode(std::string_view name);

inline constexpr double kDefaultKwhPerMile = 0.25;

/// Charging hours per driven mile. Throws InvalidParameter unless finite
/// and positive.
double hours_per_mile(const OutletSpec& outlet, double kwh_per_mile, ChargeTimeMode mode);

double charging_time_from_distance(double miles, const OutletSpec& outlet,
                                   double kwh_per_mile,
                                   ChargeTimeMode mode = ChargeTimeMode::Rate);

/// Law of the charging time when the driven distance follows `distance`.
/// Every family is a scale family, so the result keeps the family.
Distribution derive_charge_time_distribution(const Distribution& distance,
                                             const OutletSpec& outlet, double kwh_per_mile,
                                             ChargeTimeMode mode = ChargeTimeMode::Rate);

/// Fleet aggregate of a per-EV profile: values and standard errors times n.
DemandProfile scale_to_fleet(const DemandProfile& per_ev, std::uint64_t n);

/// Charging time derived from a driven-distance law.
struct DistanceSpec {
    Distribution distance;
    ChargeTimeMode mode = ChargeTimeMode::Rate;
    double kwh_per_mile = kDefaultKwhPerMile;
};

/// A complete experiment description. Exactly one of a charge-time law or
/// a distance spec is present, enforced by the variant.
struct ScenarioConfig {
    std::string name;
    std::uint64_t fleet_size = 100000;
    Distribution arrival = make_gaussian(19.0, 10.0);
    std::variant<Distribution, DistanceSpec> charge = make_uniform(1.0, 11.0);
    OutletSpec outlet = outlet_lookup("Standard");
    /// Overrides outlet.power_kw as the session power when set.
    std::optional<double> power_kw;
    double resolution_h = 0.05;
    std::uint64_t seed = 1;
    /// Days folded on each side; unset picks the smallest window missing
    /// at most 1e-9 of the session energy (never below 2).
    std::optional<int> fold_window;
    /// Modelling assumptions worth surfacing in run reports.
    std::vector<std::string> notes;
    /// Canonical text of the source description, used for hashing.
    std::string canonical;
};

double session_power(const ScenarioConfig& config) noexcept;
Distribution charge_time_distribution(const ScenarioConfig& config);
SessionModel build_session_model(const ScenarioConfig& config);
int resolve_fold_window(const ScenarioConfig& config, const SessionModel& model);

/// 16 hex digits of FNV-1a over the canonical description.
std::string scenario_hash(const ScenarioConfig& config);

}  // namespace phev
