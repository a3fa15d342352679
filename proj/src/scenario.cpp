#include "phev/scenario.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "phev/error.hpp"

namespace phev {

namespace {

const std::array<OutletSpec, 4> kOutlets = {{
    {"Standard", 110.0, 12.0, 1.4, 3.0},
    {"NewerStandard", 110.0, 15.0, 1.8, 4.0},
    {"SingleFast", 240.0, 40.0, 10.0, 29.0},
    {"TwinFast", 240.0, 80.0, 20.0, 58.0},
}};

std::string normalize(std::string_view name)
{
    std::string out;
    for (unsigned char c : name) {
        if (std::isalnum(c)) {
            out.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    return out;
}

}  // namespace

std::span<const OutletSpec> outlet_table() noexcept
{
    return kOutlets;
}

OutletSpec outlet_lookup(std::string_view name)
{
    const std::string key = normalize(name);
    for (const auto& outlet : kOutlets) {
        if (normalize(outlet.name) == key) {
            return outlet;
        }
    }
    throw UnknownOutlet("unknown outlet '" + std::string(name)
                        + "' (expected Standard, NewerStandard, SingleFast or TwinFast)");
}

std::string_view mode_name(ChargeTimeMode mode) noexcept
{
    return mode == ChargeTimeMode::Rate ? "rate" : "energy";
}

ChargeTimeMode parse_mode(std::string_view name)
{
    const std::string key = normalize(name);
    if (key == "rate") return ChargeTimeMode::Rate;
    if (key == "energy") return ChargeTimeMode::Energy;
    throw InvalidParameter("unknown charge time mode '" + std::string(name)
                           + "' (expected rate or energy)");
}

double hours_per_mile(const OutletSpec& outlet, double kwh_per_mile, ChargeTimeMode mode)
{
    if (!(kwh_per_mile > 0.0) || !std::isfinite(kwh_per_mile)) {
        throw InvalidParameter("kwh_per_mile must be finite and > 0");
    }
    const double k = mode == ChargeTimeMode::Rate ? 1.0 / outlet.miles_per_hour
                                                  : kwh_per_mile / outlet.power_kw;
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw InvalidParameter("outlet '" + outlet.name
                               + "' gives a degenerate hours-per-mile factor");
    }
    return k;
}

double charging_time_from_distance(double miles, const OutletSpec& outlet,
                                   double kwh_per_mile, ChargeTimeMode mode)
{
    if (!(miles >= 0.0) || !std::isfinite(miles)) {
        throw InvalidParameter("driven distance must be finite and >= 0 miles");
    }
    return miles * hours_per_mile(outlet, kwh_per_mile, mode);
}

Distribution derive_charge_time_distribution(const Distribution& distance,
                                             const OutletSpec& outlet, double kwh_per_mile,
                                             ChargeTimeMode mode)
{
    if (distance.support().low < 0.0) {
        throw InvalidParameter("driven distance law must have support in [0, inf)");
    }
    return distance.scaled(hours_per_mile(outlet, kwh_per_mile, mode));
}

DemandProfile scale_to_fleet(const DemandProfile& per_ev, std::uint64_t n)
{
    if (n < 1) {
        throw InvalidParameter("fleet size must be >= 1");
    }
    const double k = static_cast<double>(n);
    DemandProfile fleet = per_ev;
    for (double& v : fleet.values) {
        v *= k;
    }
    if (fleet.std_error) {
        for (double& e : *fleet.std_error) {
            e *= k;
        }
    }
    if (fleet.meta.energy_std_error) {
        *fleet.meta.energy_std_error *= k;
    }
    fleet.meta.truncation_bound *= k;
    fleet.meta.fleet_size = per_ev.meta.fleet_size * n;
    return fleet;
}

double session_power(const ScenarioConfig& config) noexcept
{
    return config.power_kw.value_or(config.outlet.power_kw);
}

Distribution charge_time_distribution(const ScenarioConfig& config)
{
    if (const auto* d = std::get_if<Distribution>(&config.charge)) {
        return *d;
    }
    const auto& spec = std::get<DistanceSpec>(config.charge);
    return derive_charge_time_distribution(spec.distance, config.outlet, spec.kwh_per_mile,
                                           spec.mode);
}

SessionModel build_session_model(const ScenarioConfig& config)
{
    return make_session_model(config.arrival, charge_time_distribution(config),
                              session_power(config));
}

int resolve_fold_window(const ScenarioConfig& config, const SessionModel& model)
{
    if (config.fold_window) {
        return *config.fold_window;
    }
    return std::max(2, required_fold_window(model, 1e-9));
}

std::string scenario_hash(const ScenarioConfig& config)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : config.canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace phev
