#include "phev/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "phev/error.hpp"

namespace phev {

namespace {

constexpr long double kFixedScale = 0x1.0p48L;

constexpr double kFastLimit = 0x1.0p14;

__int128 to_fixed(double v)
{
    // Scaling by a power of two is exact, so the fast path rounds once.
    if (std::fabs(v) < kFastLimit) {
        return std::llround(v * 0x1.0p48);
    }
    return static_cast<__int128>(std::nearbyint(static_cast<long double>(v) * kFixedScale));
}

long double from_fixed(__int128 v)
{
    return static_cast<long double>(v) / kFixedScale;
}

// Sample variance from fixed-point sums; squares carry the same scale as
// the values they were formed from, so both sides share kFixedScale.
long double sample_variance(__int128 sum, __int128 sumsq, std::uint64_t n)
{
    if (n < 2) {
        return 0.0L;
    }
    const long double s = from_fixed(sum);
    const long double ss = from_fixed(sumsq);
    const long double nn = static_cast<long double>(n);
    return std::max(0.0L, (ss - s * s / nn) / (nn - 1.0L));
}

void add_interval(const TimeGrid& grid, double from, double to, double power,
                  std::vector<double>& dense, std::vector<std::size_t>& touched)
{
    if (!(to > from)) {
        return;
    }
    const double step = grid.step();
    const auto last_bin = grid.bins() - 1;
    const auto first = std::min(last_bin, static_cast<std::size_t>(std::floor(from / step)));
    const auto last = std::min(
        last_bin, static_cast<std::size_t>(std::max(0.0, std::ceil(to / step) - 1.0)));
    for (std::size_t b = first; b <= last; ++b) {
        const double overlap = std::min(to, grid.end_of(b)) - std::max(from, grid.start_of(b));
        if (overlap > 0.0) {
            if (dense[b] == 0.0) {
                touched.push_back(b);
            }
            dense[b] += power * overlap / step;
        }
    }
}

}  // namespace

ChargingSession sample_session(const SessionModel& model, RandomStream& stream)
{
    const double t0 = model.arrival.sample(stream);
    const double duration = model.charge_time.sample(stream);
    return {t0, duration, model.power_kw};
}

void session_deposits(const TimeGrid& grid, const ChargingSession& session,
                      std::vector<BinDeposit>& out)
{
    out.clear();
    // Scratch kept per thread so repeated calls do not reallocate.
    thread_local std::vector<double> dense;
    thread_local std::vector<std::size_t> touched;
    if (dense.size() != grid.bins()) {
        dense.assign(grid.bins(), 0.0);
    }
    touched.clear();

    double start = std::fmod(session.t0, kHoursPerDay);
    if (start < 0.0) {
        start += kHoursPerDay;
    }
    if (start >= kHoursPerDay) {
        start = 0.0;
    }
    const double whole_days = std::floor(session.duration / kHoursPerDay);
    const double rest = session.duration - whole_days * kHoursPerDay;

    if (whole_days > 0.0) {
        for (std::size_t b = 0; b < grid.bins(); ++b) {
            dense[b] = session.power_kw * whole_days;
            touched.push_back(b);
        }
    }
    const double end = start + rest;
    add_interval(grid, start, std::min(end, kHoursPerDay), session.power_kw, dense, touched);
    if (end > kHoursPerDay) {
        add_interval(grid, 0.0, end - kHoursPerDay, session.power_kw, dense, touched);
    }

    std::sort(touched.begin(), touched.end());
    out.reserve(touched.size());
    for (std::size_t b : touched) {
        out.push_back({b, dense[b]});
        dense[b] = 0.0;
    }
}

PartialHistogram::PartialHistogram(TimeGrid grid)
    : grid_(grid), sum_(grid.bins(), 0), sumsq_(grid.bins(), 0)
{
}

void PartialHistogram::deposit(const ChargingSession& session)
{
    session_deposits(grid_, session, scratch_);
    for (const auto& d : scratch_) {
        sum_[d.bin] += to_fixed(d.power_kw);
        sumsq_[d.bin] += to_fixed(d.power_kw * d.power_kw);
    }
    const double energy = session.power_kw * session.duration;
    energy_ += to_fixed(energy);
    energy_sq_ += to_fixed(energy * energy);
    ++count_;
}

void PartialHistogram::merge(const PartialHistogram& other)
{
    if (!(grid_ == other.grid_)) {
        throw GridMismatch("merge_partials: histograms use different time grids");
    }
    for (std::size_t b = 0; b < sum_.size(); ++b) {
        sum_[b] += other.sum_[b];
        sumsq_[b] += other.sumsq_[b];
    }
    energy_ += other.energy_;
    energy_sq_ += other.energy_sq_;
    count_ += other.count_;
}

double PartialHistogram::sum(std::size_t bin) const
{
    return static_cast<double>(from_fixed(sum_.at(bin)));
}

double PartialHistogram::sum_squares(std::size_t bin) const
{
    return static_cast<double>(from_fixed(sumsq_.at(bin)));
}

double PartialHistogram::energy_sum() const
{
    return static_cast<double>(from_fixed(energy_));
}

DemandProfile PartialHistogram::to_profile() const
{
    if (count_ == 0) {
        throw InvalidParameter("to_profile: no sessions deposited");
    }
    const long double n = static_cast<long double>(count_);
    DemandProfile profile(grid_);
    std::vector<double> err(grid_.bins());
    for (std::size_t b = 0; b < grid_.bins(); ++b) {
        profile.values[b] = static_cast<double>(from_fixed(sum_[b]) / n);
        err[b] = static_cast<double>(std::sqrt(sample_variance(sum_[b], sumsq_[b], count_) / n));
    }
    profile.std_error = std::move(err);
    profile.meta.provenance = Provenance::MonteCarlo;
    profile.meta.method = "monte-carlo";
    profile.meta.sessions = count_;
    profile.meta.energy_std_error =
        static_cast<double>(std::sqrt(sample_variance(energy_, energy_sq_, count_) / n));
    return profile;
}

bool operator==(const PartialHistogram& a, const PartialHistogram& b)
{
    return a.grid_ == b.grid_ && a.count_ == b.count_ && a.sum_ == b.sum_ && a.sumsq_ == b.sumsq_
           && a.energy_ == b.energy_ && a.energy_sq_ == b.energy_sq_;
}

PartialHistogram merge_partials(std::span<const PartialHistogram> parts)
{
    if (parts.empty()) {
        throw InvalidParameter("merge_partials: nothing to merge");
    }
    PartialHistogram total(parts.front().grid());
    for (const auto& p : parts) {
        total.merge(p);
    }
    return total;
}

DemandProfile simulate_fleet(const SessionModel& model, const TimeGrid& grid,
                             const FleetSimulation& sim)
{
    if (sim.fleet_size < 1) {
        throw InvalidParameter("simulate_fleet: fleet size must be >= 1");
    }
    if (sim.chunk_size < 1) {
        throw InvalidParameter("simulate_fleet: chunk size must be >= 1");
    }
    const std::uint64_t chunks = (sim.fleet_size + sim.chunk_size - 1) / sim.chunk_size;
    unsigned workers = sim.workers ? sim.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    std::vector<PartialHistogram> parts(workers, PartialHistogram(grid));
    const auto run = [&](unsigned w) {
        // Contiguous chunk range per worker.
        const std::uint64_t begin = chunks * w / workers;
        const std::uint64_t end = chunks * (w + 1) / workers;
        for (std::uint64_t c = begin; c < end; ++c) {
            RandomStream stream(sim.seed, c);
            const std::uint64_t first = c * sim.chunk_size;
            const std::uint64_t last = std::min(sim.fleet_size, first + sim.chunk_size);
            for (std::uint64_t i = first; i < last; ++i) {
                parts[w].deposit(sample_session(model, stream));
            }
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
    }
    return merge_partials(parts).to_profile();
}

}  // namespace phev
