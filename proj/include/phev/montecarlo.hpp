#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phev/analytic.hpp"
#include "phev/profile.hpp"
#include "phev/random_stream.hpp"

namespace phev {

/// One realized session: plug-in clock time t0 (hours, any real), charging
/// duration (hours, >= 0) and power draw (kW).
struct ChargingSession {
    double t0;
    double duration;
    double power_kw;
};

ChargingSession sample_session(const SessionModel& model, RandomStream& stream);

struct BinDeposit {
    std::size_t bin;
    double power_kw;  // average power over the bin
};

/// Renders [t0, t0 + duration) modulo 24 h onto the grid. Each bin gets the
/// session power times the fraction of the bin covered; whole days of a
/// session longer than 24 h add the full power to every bin. Each bin
/// appears at most once in `out` (cleared first).
void session_deposits(const TimeGrid& grid, const ChargingSession& session,
                      std::vector<BinDeposit>& out);

/// Per-bin sums of session deposits and their squares.
///
/// Sums are kept in 128-bit fixed point (2^-48 kW resolution), so merging
/// is exact: any grouping or ordering of the same sessions yields
/// bit-identical totals.
class PartialHistogram {
public:
    explicit PartialHistogram(TimeGrid grid);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::uint64_t count() const noexcept { return count_; }

    void deposit(const ChargingSession& session);

    /// Adds another partial's sessions. Throws GridMismatch.
    void merge(const PartialHistogram& other);

    double sum(std::size_t bin) const;
    double sum_squares(std::size_t bin) const;
    /// Sum of per-session energy a T, kWh.
    double energy_sum() const;

    /// Per-EV mean profile with per-bin standard error. Throws
    /// InvalidParameter when no session has been deposited.
    DemandProfile to_profile() const;

    /// Same grid, count and fixed-point sums (the scratch buffer is ignored).
    friend bool operator==(const PartialHistogram& a, const PartialHistogram& b);

private:
    using Fixed = __int128;

    TimeGrid grid_;
    std::vector<Fixed> sum_;
    std::vector<Fixed> sumsq_;
    Fixed energy_ = 0;
    Fixed energy_sq_ = 0;
    std::uint64_t count_ = 0;
    std::vector<BinDeposit> scratch_;
};

/// Element-wise sum of partials in list order. Throws GridMismatch.
PartialHistogram merge_partials(std::span<const PartialHistogram> parts);

struct FleetSimulation {
    std::uint64_t fleet_size = 100000;
    std::uint64_t seed = 1;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
    /// Sessions per random stream; chunk j draws from stream (seed, j).
    std::uint64_t chunk_size = 4096;
};

/// Monte Carlo per-EV daily profile. The result depends only on the model,
/// grid, fleet size, seed and chunk size, never on the worker count.
DemandProfile simulate_fleet(const SessionModel& model, const TimeGrid& grid,
                             const FleetSimulation& sim);

}  // namespace phev
