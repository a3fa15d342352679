#pragma once

// Independent numerical oracles for the test suites. Everything here goes
// through Boost.Math or plain loops, never through the library's own
// quadrature or special functions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "phev/distribution.hpp"

namespace phev::test {

inline double integrate_finite(const std::function<double(double)>& f, double a, double b)
{
    boost::math::quadrature::tanh_sinh<double> ts(15);
    return ts.integrate(f, a, b, 1e-14);
}

/// Adaptive Gauss-Kronrod with Boost's own subdivision, for integrands
/// with kinks where tanh-sinh converges slowly.
inline double integrate_kronrod(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-13)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, rel_tol);
}

/// Composite 30-point Gauss-Legendre on panels a, a + panel, ... with a
/// short last panel. Non-adaptive, so usable on integrands that carry
/// their own quadrature noise; kinks must sit on panel edges.
inline double integrate_panels(const std::function<double(double)>& f, double a, double b,
                               double panel = 1.0)
{
    double sum = 0.0;
    for (int i = 0; a + i * panel < b; ++i) {
        const double x0 = a + i * panel;
        sum += boost::math::quadrature::gauss<double, 30>::integrate(f, x0, std::min(x0 + panel, b));
    }
    return sum;
}

/// (1/sqrt(2 pi)) int_x^inf exp(-u^2/2) du by exp-sinh quadrature.
inline double gaussian_tail_oracle(double x)
{
    boost::math::quadrature::exp_sinh<double> es;
    const auto f = [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); };
    if (x >= 0.0) {
        return es.integrate([&](double u) { return f(u); }, x, std::numeric_limits<double>::infinity(), 1e-15);
    }
    // Split at zero so the half-line part starts at the mode.
    return integrate_finite(f, x, 0.0) + 0.5;
}

/// Power series sum_{k<terms} (x^2/4)^k / (k!)^2 in long double.
inline double bessel_i0_series(double x, int terms = 60)
{
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < terms; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return static_cast<double>(sum);
}

/// A finite interval carrying all but negligible mass of a continuous law.
inline std::pair<double, double> mass_range(const Distribution& d)
{
    const double m = d.mean();
    const double s = std::sqrt(d.variance());
    const Support sup = d.support();
    double lo = std::isfinite(sup.low) ? sup.low : m - 40.0 * s;
    double hi = std::isfinite(sup.high) ? sup.high : m + 60.0 * s;
    return {lo, hi};
}

/// int g(x) pdf(x) dx over the support. Splits at the mean so the
/// exponential's kink at 0 and the bulk are resolved separately, and at any
/// extra breakpoints where g itself has a kink.
inline double expect(const Distribution& d, const std::function<double(double)>& g,
                     std::vector<double> breaks = {})
{
    const auto [lo, hi] = mass_range(d);
    const auto f = [&](double x) { return g(x) * d.pdf(x); };
    breaks.push_back(d.mean());
    std::vector<double> pts{lo};
    for (double b : breaks) {
        if (b > lo && b < hi) {
            pts.push_back(b);
        }
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] > pts[i]) {
            sum += integrate_kronrod(f, pts[i], pts[i + 1]);
        }
    }
    return sum;
}

/// Two-sided one-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

/// Asymptotic 1% critical value of the KS statistic.
inline double ks_critical_1pct(std::size_t n)
{
    return 1.6276 / std::sqrt(static_cast<double>(n));
}

}  // namespace phev::test
