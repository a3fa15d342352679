#include "phev/profile.hpp"

#include <algorithm>
#include <cmath>

#include "phev/error.hpp"

namespace phev {

TimeGrid TimeGrid::with_resolution(double resolution)
{
    if (!(resolution > 0.0) || resolution > kHoursPerDay) {
        throw InvalidParameter("resolution must lie in (0, 24] hours");
    }
    const double count = std::round(kHoursPerDay / resolution);
    if (std::fabs(count * resolution - kHoursPerDay) > 1e-9) {
        throw InvalidParameter("resolution must divide 24 hours evenly");
    }
    const auto bins = static_cast<std::size_t>(count);
    return TimeGrid(kHoursPerDay / count, bins);
}

double daily_energy(const DemandProfile& profile)
{
    double sum = 0.0;
    for (double v : profile.values) {
        sum += v;
    }
    return sum * profile.grid.step();
}

std::size_t peak_bin(const DemandProfile& profile)
{
    return static_cast<std::size_t>(
        std::max_element(profile.values.begin(), profile.values.end())
        - profile.values.begin());
}

double window_mean(const DemandProfile& profile, double from, double to)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < profile.grid.bins(); ++i) {
        const double c = profile.grid.center_of(i);
        if ((c >= from && c < to) || (c + kHoursPerDay >= from && c + kHoursPerDay < to)) {
            sum += profile.values[i];
            ++count;
        }
    }
    if (count == 0) {
        throw InvalidParameter("window_mean: window contains no bin centers");
    }
    return sum / static_cast<double>(count);
}

ProfileDelta compare_profiles(const DemandProfile& a, const DemandProfile& b)
{
    if (!(a.grid == b.grid)) {
        throw GridMismatch("compare_profiles: profiles use different time grids");
    }
    ProfileDelta delta;
    double sq = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = std::fabs(a.values[i] - b.values[i]);
        delta.max_abs_diff = std::max(delta.max_abs_diff, d);
        sq += d * d;
        peak = std::max({peak, a.values[i], b.values[i]});
    }
    delta.rms_diff = std::sqrt(sq / static_cast<double>(a.values.size()));
    delta.max_diff_of_peak = peak > 0.0 ? delta.max_abs_diff / peak : 0.0;
    return delta;
}

}  // namespace phev
