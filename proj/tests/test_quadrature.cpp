#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phev/quadrature.hpp"

namespace phev::quadrature {
namespace {

TEST(Quadrature, PolynomialIsExact)
{
    const auto r = integrate([](double x) { return 3.0 * x * x - x + 2.0; }, -1.0, 2.0);
    // x^3 - x^2/2 + 2x from -1 to 2
    EXPECT_NEAR(r.value, 10.0 + 3.5, 1e-13);
    EXPECT_EQ(r.intervals, 1);
}

TEST(Quadrature, AdaptsToKinkAndPeak)
{
    const auto kink = integrate([](double x) { return std::fabs(x - 0.3); }, 0.0, 1.0);
    EXPECT_NEAR(kink.value, 0.5 * (0.09 + 0.49), 1e-12);
    const auto peak = integrate([](double x) { return 1e-4 / (x * x + 1e-8); }, -1.0, 1.0,
                                {.abs_tol = 1e-11});
    EXPECT_NEAR(peak.value, 2.0 * std::atan(1e4), 1e-9);
    EXPECT_GT(peak.intervals, 1);
}

TEST(Quadrature, ReportsUnmetTolerance)
{
    // A jump with a one-interval budget cannot meet a tight tolerance.
    const auto r = integrate([](double x) { return x < 0.123 ? 0.0 : 1.0; }, 0.0, 1.0,
                             {.abs_tol = 1e-14, .max_intervals = 1});
    EXPECT_GT(r.abs_error, 1e-14);
}

TEST(Quadrature, EmptyInterval)
{
    EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
}

}  // namespace
}  // namespace phev::quadrature
