#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phev/error.hpp"
#include "phev/specfun.hpp"
#include "support/oracles.hpp"

namespace phev::specfun {
namespace {

TEST(QFunction, KnownValues)
{
    EXPECT_EQ(q_function(0.0), 0.5);
    EXPECT_NEAR(q_function(-30.0), 1.0, 1e-15);
    // 30-digit reference quadrature gives 0.0500000027796574591.
    EXPECT_NEAR(q_function(1.6448536), 0.0500000027796574591, 1e-15);
    EXPECT_NEAR(q_function(1.6448536), test::gaussian_tail_oracle(1.6448536), 1e-13);
}

TEST(QFunction, MatchesTailQuadratureOnGrid)
{
    for (int i = 0; i <= 200; ++i) {
        const double x = -10.0 + 0.1 * i;
        EXPECT_NEAR(q_function(x), test::gaussian_tail_oracle(x), 1e-12) << "x=" << x;
    }
}

TEST(QFunction, SymmetryAndMonotonicityProperty)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    for (int i = 0; i < 5000; ++i) {
        const double x = u(rng);
        const double q = q_function(x);
        ASSERT_GE(q, 0.0);
        ASSERT_LE(q, 1.0);
        ASSERT_NEAR(q + q_function(-x), 1.0, 1e-14) << "x=" << x;
        const double y = x + std::fabs(u(rng)) * 0.01 + 1e-3;
        if (q > 1e-300 && q < 0.5) {
            ASSERT_LT(q_function(y), q) << "x=" << x << " y=" << y;
        }
    }
}

TEST(QFunction, InverseRoundTrip)
{
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.7, 0.99, 1.0 - 1e-9}) {
        EXPECT_NEAR(q_function(q_function_inverse(p)), p, 1e-14 + 1e-12 * p) << p;
    }
    EXPECT_THROW(q_function_inverse(0.0), InvalidParameter);
    EXPECT_THROW(q_function_inverse(1.0), InvalidParameter);
}

TEST(StdNormal, PdfValues)
{
    EXPECT_NEAR(std_normal_pdf(0.0), 0.3989422804014327, 1e-16);
    EXPECT_EQ(std_normal_pdf(1.0), std_normal_pdf(-1.0));
    EXPECT_NEAR(std_normal_pdf(2.0), 0.053990966513188052, 1e-16);
    // Maclaurin series of exp(-2) as an independent route.
    long double e = 0.0L, term = 1.0L;
    for (int k = 0; k < 40; ++k) {
        e += term;
        term *= -2.0L / (k + 1);
    }
    EXPECT_NEAR(std_normal_pdf(2.0), static_cast<double>(e) * kInvSqrt2Pi, 1e-16);
    for (double x = -5.0; x <= 5.0; x += 0.25) {
        EXPECT_LE(std_normal_pdf(x), std_normal_pdf(0.0));
    }
}

TEST(StdNormal, CdfValues)
{
    EXPECT_EQ(std_normal_cdf(0.0), 0.5);
    EXPECT_NEAR(std_normal_cdf(30.0), 1.0, 1e-15);
    EXPECT_NEAR(std_normal_cdf(1.0), 0.84134474606854295, 1e-15);
    EXPECT_NEAR(std_normal_cdf(1.0), 1.0 - test::gaussian_tail_oracle(1.0), 1e-13);
    double prev = 0.0;
    for (double x = -9.0; x <= 9.0; x += 0.01) {
        const double f = std_normal_cdf(x);
        ASSERT_GE(f, prev);
        ASSERT_NEAR(f, 1.0 - q_function(x), 1e-15);
        prev = f;
    }
}

TEST(StdNormal, AntiderivativeValues)
{
    EXPECT_NEAR(std_normal_cdf_antiderivative(0.0), 0.3989422804014327, 1e-16);
    EXPECT_NEAR(std_normal_cdf_antiderivative(-40.0), 0.0, 1e-300);
    EXPECT_NEAR(std_normal_cdf_antiderivative(-12.0), 0.0, 1e-30);
    const double numeric = test::integrate_finite([](double x) { return std_normal_cdf(x); }, -1.0, 1.0);
    EXPECT_NEAR(std_normal_cdf_antiderivative(1.0) - std_normal_cdf_antiderivative(-1.0), numeric,
                1e-13);
}

TEST(StdNormal, AntiderivativeDerivativeProperty)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    const double h = 1e-5;
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        const double fd = (std_normal_cdf_antiderivative(x + h)
                           - std_normal_cdf_antiderivative(x - h)) / (2.0 * h);
        ASSERT_NEAR(fd, std_normal_cdf(x), 1e-6) << "x=" << x;
    }
}

TEST(BesselI0, KnownValues)
{
    EXPECT_EQ(bessel_i0(0.0), 1.0);
    EXPECT_NEAR(bessel_i0(1.0), 1.2660658777520084, 1e-15);
    EXPECT_NEAR(bessel_i0(1.0), test::bessel_i0_series(1.0, 30), 1e-15);
    EXPECT_EQ(bessel_i0(-2.0), bessel_i0(2.0));
    EXPECT_NEAR(bessel_i0(15.0) / 339649.37329791388, 1.0, 1e-13);
    EXPECT_NEAR(bessel_i0(100.0) / 1.0737517071310738e42, 1.0, 1e-13);
}

TEST(BesselI0, MatchesSeriesOracle)
{
    for (int i = 0; i <= 400; ++i) {
        const double x = 0.05 * i;
        const double ref = test::bessel_i0_series(x);
        EXPECT_NEAR(bessel_i0(x) / ref, 1.0, 1e-12) << "x=" << x;
        EXPECT_GE(bessel_i0(x), 1.0);
        EXPECT_NEAR(bessel_i0_scaled(x) * std::exp(x) / ref, 1.0, 1e-12) << "x=" << x;
    }
}

TEST(BesselI0, OverflowGuard)
{
    EXPECT_NO_THROW(bessel_i0(700.0));
    EXPECT_TRUE(std::isfinite(bessel_i0(-700.0)));
    EXPECT_THROW(bessel_i0(701.0), OverflowError);
    EXPECT_THROW(bessel_i0(-1e6), OverflowError);
    EXPECT_TRUE(std::isfinite(bessel_i0_scaled(1e6)));
}

TEST(BesselI1, ScaledMatchesSeries)
{
    for (double x : {0.0, 0.3, 1.0, 5.0, 14.9, 15.1, 30.0}) {
        long double term = 0.5L * x, sum = term;
        for (int k = 1; k < 80; ++k) {
            term *= 0.25L * x * x / (static_cast<long double>(k) * (k + 1));
            sum += term;
        }
        EXPECT_NEAR(bessel_i1_scaled(x), static_cast<double>(sum * std::exp(-static_cast<long double>(x))),
                    1e-13 * std::max(1.0, bessel_i1_scaled(x)))
            << "x=" << x;
        EXPECT_EQ(bessel_i1_scaled(-x), -bessel_i1_scaled(x));
    }
}

}  // namespace
}  // namespace phev::specfun
