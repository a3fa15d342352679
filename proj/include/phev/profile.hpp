#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phev {

inline constexpr double kHoursPerDay = 24.0;

/// Uniform partition of the clock day [0, 24) into bins of width step.
class TimeGrid {
public:
    /// Throws InvalidParameter unless `resolution` divides 24 hours evenly.
    static TimeGrid with_resolution(double resolution);

    double step() const noexcept { return step_; }
    std::size_t bins() const noexcept { return bins_; }

    double start_of(std::size_t bin) const noexcept { return step_ * static_cast<double>(bin); }
    double end_of(std::size_t bin) const noexcept { return step_ * static_cast<double>(bin + 1); }
    double center_of(std::size_t bin) const noexcept
    {
        return step_ * (static_cast<double>(bin) + 0.5);
    }

    bool operator==(const TimeGrid& other) const noexcept
    {
        return bins_ == other.bins_ && step_ == other.step_;
    }

private:
    TimeGrid(double step, std::size_t bins) : step_(step), bins_(bins) {}

    double step_;
    std::size_t bins_;
};

enum class Provenance { Analytic, MonteCarlo };

struct ProfileMeta {
    Provenance provenance = Provenance::Analytic;
    std::string scenario_hash;
    /// "closed-form", "quadrature" or "monte-carlo".
    std::string method;
    int fold_window = 0;
    /// Upper bound on the energy (kWh per EV) missed by a finite fold window.
    double truncation_bound = 0.0;
    std::uint64_t sessions = 0;
    /// Number of EVs the values are scaled to (1 for a per-EV profile).
    std::uint64_t fleet_size = 1;
    /// Monte Carlo standard error of daily_energy(), kWh.
    std::optional<double> energy_std_error;
};

/// Expected power (kW) per bin of a 24-hour grid.
struct DemandProfile {
    TimeGrid grid;
    std::vector<double> values;
    /// Per-bin standard error, kW (Monte Carlo profiles only).
    std::optional<std::vector<double>> std_error;
    ProfileMeta meta;

    explicit DemandProfile(TimeGrid g)
        : grid(g), values(g.bins(), 0.0) {}
};

/// Daily energy in kWh: sum of values times the bin width.
double daily_energy(const DemandProfile& profile);

/// Bin with the largest value (first one on ties).
std::size_t peak_bin(const DemandProfile& profile);

/// Mean of the profile over the clock window [from, to) in hours, where
/// `to` may exceed 24 to wrap past midnight. Bins are selected by center.
double window_mean(const DemandProfile& profile, double from, double to);

struct ProfileDelta {
    double max_abs_diff = 0.0;   // kW
    double max_diff_of_peak = 0.0;  // max_abs_diff / common peak
    double rms_diff = 0.0;       // kW
};

/// Symmetric difference metrics. The common peak is the larger of the two
/// profile maxima. Throws GridMismatch on differing grids.
ProfileDelta compare_profiles(const DemandProfile& a, const DemandProfile& b);

}  // namespace phev
