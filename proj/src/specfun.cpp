#include "phev/specfun.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "phev/error.hpp"

namespace phev::specfun {

namespace {

constexpr double kSeriesLimit = 15.0;
constexpr double kOverflowGuard = 700.0;

// Power series for exp(-|x|) I_nu(x), nu in {0, 1}. All terms are positive.
double bessel_series_scaled(int nu, double x)
{
    const double ax = std::fabs(x);
    const double q = 0.25 * ax * ax;
    double term = (nu == 0) ? 1.0 : 0.5 * ax;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
        sum += term;
        if (term < 1e-17 * sum) {
            break;
        }
    }
    return sum * std::exp(-ax);
}

// Hankel asymptotic expansion for exp(-x) I_nu(x), x >= kSeriesLimit.
double bessel_asymptotic_scaled(int nu, double x)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
        if (std::fabs(next) >= std::fabs(term)) {
            break;
        }
        term = next;
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) {
            break;
        }
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double q_function(double x) noexcept
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_function_inverse(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidParameter("q_function_inverse: p must lie in (0, 1)");
    }
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double std_normal_pdf(double x) noexcept
{
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) noexcept
{
    // Q(-x) equals 1 - Q(x) and keeps full relative accuracy in the left tail.
    return q_function(-x);
}

double std_normal_cdf_antiderivative(double x) noexcept
{
    return x * std_normal_cdf(x) + std_normal_pdf(x);
}

double bessel_i0_scaled(double x) noexcept
{
    const double ax = std::fabs(x);
    return ax < kSeriesLimit ? bessel_series_scaled(0, ax)
                             : bessel_asymptotic_scaled(0, ax);
}

double bessel_i1_scaled(double x) noexcept
{
    const double ax = std::fabs(x);
    const double v = ax < kSeriesLimit ? bessel_series_scaled(1, ax)
                                       : bessel_asymptotic_scaled(1, ax);
    return x < 0.0 ? -v : v;
}

double bessel_i0(double x)
{
    const double ax = std::fabs(x);
    if (!(ax <= kOverflowGuard)) {
        throw OverflowError("bessel_i0: |x| exceeds overflow guard of 700");
    }
    if (ax < kSeriesLimit) {
        // Unscaled series avoids the exp/exp round trip.
        const double q = 0.25 * ax * ax;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum) {
                break;
            }
        }
        return sum;
    }
    return bessel_asymptotic_scaled(0, ax) * std::exp(ax);
}

}  // namespace phev::specfun
