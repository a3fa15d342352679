#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "phev/distribution.hpp"
#include "phev/error.hpp"
#include "phev/specfun.hpp"
#include "support/oracles.hpp"

namespace phev {
namespace {

TEST(Gaussian, ArrivalParameters)
{
    const auto d = make_gaussian(19.0, 10.0);
    EXPECT_EQ(d.family(), Family::Gaussian);
    EXPECT_EQ(d.mean(), 19.0);
    EXPECT_NEAR(d.variance(), 10.0, 1e-14);
    EXPECT_EQ(make_gaussian(0.0, 1.0).cdf(0.0), 0.5);

    const double x = 19.0 + std::sqrt(10.0);
    const double oracle = test::integrate_kronrod([&](double t) { return d.pdf(t); }, 19.0 - 40.0 * std::sqrt(10.0), x);
    EXPECT_NEAR(d.cdf(x), oracle, 1e-12);
    EXPECT_NEAR(d.cdf(x), 0.8413, 5e-5);
}

TEST(Gaussian, RejectsNonPositiveVariance)
{
    EXPECT_THROW(make_gaussian(19.0, 0.0), InvalidParameter);
    EXPECT_THROW(make_gaussian(19.0, -1.0), InvalidParameter);
    EXPECT_THROW(make_gaussian(NAN, 1.0), InvalidParameter);
}

TEST(Uniform, ChargingWindow)
{
    const auto d = make_uniform(1.0, 11.0);
    EXPECT_EQ(d.mean(), 6.0);
    EXPECT_NEAR(d.variance(), 100.0 / 12.0, 1e-14);
    EXPECT_NEAR(d.variance(), 8.33, 0.005);
    for (double x : {1.0, 3.7, 10.99}) {
        EXPECT_DOUBLE_EQ(d.pdf(x), 0.1);
    }
    EXPECT_EQ(d.pdf(11.0), 0.0);
    EXPECT_EQ(d.pdf(0.99), 0.0);
    EXPECT_EQ(make_uniform(0.0, 1.0).cdf(0.5), 0.5);
}

TEST(Uniform, RejectsBadInterval)
{
    EXPECT_THROW(make_uniform(-1.0, 2.0), InvalidParameter);
    EXPECT_THROW(make_uniform(3.0, 3.0), InvalidParameter);
    EXPECT_THROW(make_uniform(4.0, 3.0), InvalidParameter);
}

TEST(Exponential, MeanSix)
{
    const auto d = make_exponential(6.0);
    EXPECT_DOUBLE_EQ(d.as<families::Exponential>()->rate(), 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(d.variance(), 36.0);
    EXPECT_NEAR(d.cdf(6.0), 1.0 - std::exp(-1.0), 1e-15);
    EXPECT_NEAR(d.cdf(6.0), 0.6321, 1e-4);
    EXPECT_DOUBLE_EQ(d.pdf(0.0), 1.0 / 6.0);
    EXPECT_THROW(make_exponential(0.0), InvalidParameter);
    EXPECT_THROW(make_exponential(-6.0), InvalidParameter);
}

TEST(TruncatedGaussian, NegligibleTruncation)
{
    const auto d = make_truncated_gaussian(6.0, 0.01);
    EXPECT_NEAR(d.mean(), 6.0, 1e-12);
    EXPECT_NEAR(d.variance(), 0.01, 1e-12);
}

TEST(TruncatedGaussian, HalfNormal)
{
    const auto d = make_truncated_gaussian(0.0, 1.0);
    const double oracle = test::integrate_kronrod([&](double x) { return x * d.pdf(x); }, 0.0, 40.0);
    EXPECT_NEAR(d.mean(), oracle, 1e-12);
    EXPECT_NEAR(d.mean(), std::sqrt(2.0 / std::numbers::pi), 1e-15);
    EXPECT_NEAR(d.mean(), 0.79788, 1e-5);
    EXPECT_NEAR(d.variance(), 1.0 - 2.0 / std::numbers::pi, 1e-15);
}

TEST(TruncatedGaussian, NormalizesAtMatchedScale)
{
    const auto d = make_truncated_gaussian(6.0, 8.33);
    const double area = test::integrate_kronrod([&](double x) { return d.pdf(x); }, 0.0, 6.0)
                        + test::integrate_kronrod([&](double x) { return d.pdf(x); }, 6.0, 6.0 + 60.0 * 3.0);
    EXPECT_NEAR(area, 1.0, 1e-12);
    EXPECT_EQ(d.pdf(-0.1), 0.0);
}

TEST(TruncatedGaussian, RejectsTinyAcceptance)
{
    EXPECT_THROW(make_truncated_gaussian(6.0, 0.0), InvalidParameter);
    // Q(3.2) ~ 6.9e-4 is below the 1e-3 rejection-sampling limit.
    EXPECT_THROW(make_truncated_gaussian(-3.2, 1.0), InvalidParameter);
    EXPECT_NO_THROW(make_truncated_gaussian(-3.0, 1.0));
}

TEST(Rician, RayleighSpecialCase)
{
    const auto d = make_rician(0.0, 2.5);
    EXPECT_NEAR(d.mean(), 2.5 * std::sqrt(std::numbers::pi / 2.0), 1e-14);
    EXPECT_NEAR(d.variance(), (4.0 - std::numbers::pi) / 2.0 * 6.25, 1e-13);
    EXPECT_NEAR(d.cdf(3.0), 1.0 - std::exp(-9.0 / (2.0 * 6.25)), 1e-14);
}

TEST(Rician, MeanAgainstQuadrature)
{
    const auto d = make_rician(6.0, 1.0);
    const double oracle = test::integrate_kronrod([&](double x) { return x * d.pdf(x); }, 0.0, 6.0)
                          + test::integrate_kronrod([&](double x) { return x * d.pdf(x); }, 6.0, 60.0);
    EXPECT_NEAR(d.mean(), oracle, 1e-12);
    // 30-digit quadrature reference.
    EXPECT_NEAR(d.mean(), 6.0839386001080099, 1e-13);
}

TEST(Rician, NormalizesStandardForm)
{
    const auto d = make_rician(6.0, 2.0);
    const double area = test::integrate_kronrod([&](double x) { return d.pdf(x); }, 0.0, 6.0)
                        + test::integrate_kronrod([&](double x) { return d.pdf(x); }, 6.0, 100.0);
    EXPECT_NEAR(area, 1.0, 1e-12);
}

TEST(Rician, RejectsBadParameters)
{
    EXPECT_THROW(make_rician(-1.0, 1.0), InvalidParameter);
    EXPECT_THROW(make_rician(1.0, 0.0), InvalidParameter);
    EXPECT_NO_THROW(make_rician(0.0, 1.0));
}

TEST(Rician, LargeShapeStaysFinite)
{
    const auto d = make_rician(600.0, 1.0);
    EXPECT_TRUE(std::isfinite(d.pdf(600.0)));
    EXPECT_NEAR(d.mean(), std::sqrt(600.0 * 600.0 + 1.0), 1e-3);
    EXPECT_NEAR(d.variance(), 1.0, 1e-3);
    EXPECT_NEAR(d.cdf(600.0), 0.5, 1e-2);
}

TEST(Lattice, Basics)
{
    const auto d = make_lattice({3.0, 1.0, 2.0}, {0.5, 0.25, 0.25});
    EXPECT_TRUE(d.is_discrete());
    EXPECT_DOUBLE_EQ(d.mean(), 0.25 + 0.5 + 1.5);
    EXPECT_EQ(d.cdf(1.0), 0.25);
    EXPECT_EQ(d.cdf(0.999), 0.0);
    EXPECT_EQ(d.survival(2.0), 0.5);
    EXPECT_EQ(d.prob_interval(1.0, 3.0), 0.75);
    EXPECT_EQ(d.quantile(0.3), 2.0);
    EXPECT_THROW(make_lattice({1.0, 1.0}, {0.5, 0.5}), InvalidParameter);
    EXPECT_THROW(make_lattice({1.0, 2.0}, {0.5, 0.4}), InvalidParameter);
}

TEST(FamilyNames, ParseRoundTrip)
{
    for (Family f : {Family::Gaussian, Family::Uniform, Family::Exponential,
                     Family::TruncatedGaussianPositive, Family::Rician, Family::Lattice}) {
        EXPECT_EQ(parse_family(family_name(f)), f);
    }
    EXPECT_EQ(parse_family("Rice"), Family::Rician);
    EXPECT_THROW(parse_family("weibull"), InvalidParameter);
}

// ---------------------------------------------------------------------------
// Property suite over random parameterizations of every continuous family.

std::vector<Distribution> random_distributions(std::uint64_t seed, int per_family)
{
    std::mt19937_64 rng(seed);
    const auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    std::vector<Distribution> out;
    for (int i = 0; i < per_family; ++i) {
        out.push_back(make_gaussian(u(-5.0, 30.0), u(0.2, 20.0)));
        const double c = u(0.0, 5.0);
        out.push_back(make_uniform(c, c + u(0.5, 12.0)));
        out.push_back(make_exponential(u(0.5, 10.0)));
        out.push_back(make_truncated_gaussian(u(-2.0, 10.0), u(0.3, 10.0)));
        out.push_back(make_rician(u(0.0, 8.0), u(0.3, 3.0)));
    }
    return out;
}

TEST(DistributionProperties, NormalizationAndMoments)
{
    for (const auto& d : random_distributions(2024, 6)) {
        SCOPED_TRACE(d.describe());
        const double mass = test::expect(d, [](double) { return 1.0; });
        EXPECT_NEAR(mass, 1.0, 1e-9);
        const double m = test::expect(d, [](double x) { return x; });
        EXPECT_NEAR(d.mean(), m, 1e-7 * std::max(1.0, std::fabs(m)));
        const double v = test::expect(d, [&](double x) { return (x - m) * (x - m); });
        EXPECT_NEAR(d.variance(), v, 1e-6 * v);
    }
}

TEST(DistributionProperties, CdfNondecreasingAndConsistent)
{
    for (const auto& d : random_distributions(99, 3)) {
        SCOPED_TRACE(d.describe());
        const double lo = d.quantile(1e-9);
        const double hi = d.quantile(1.0 - 1e-9);
        double prev = -1.0;
        for (int i = 0; i <= 10000; ++i) {
            const double x = lo + (hi - lo) * i / 10000.0;
            const double f = d.cdf(x);
            ASSERT_GE(f, prev - 1e-15) << "x=" << x;
            ASSERT_NEAR(f + d.survival(x), 1.0, 1e-12);
            prev = f;
        }
        const Support s = d.support();
        if (std::isfinite(s.low)) {
            EXPECT_EQ(d.cdf(s.low), 0.0);
        }
        if (std::isfinite(s.high)) {
            EXPECT_EQ(d.cdf(s.high), 1.0);
        }
        for (double p : {1e-10, 0.01, 0.37, 0.5, 0.93, 1.0 - 1e-10}) {
            EXPECT_NEAR(d.cdf(d.quantile(p)), p, 1e-9 * std::max(1.0, 1.0 / p) * p + 1e-13) << p;
        }
        // CDF equals the integral of the density from the lower end.
        const auto [a, b] = test::mass_range(d);
        for (double p : {0.2, 0.6, 0.9}) {
            const double x = d.quantile(p);
            const double area = test::integrate_kronrod([&](double t) { return d.pdf(t); }, a, x);
            EXPECT_NEAR(d.cdf(x), area, 1e-10);
        }
        EXPECT_GE(b, a);
    }
}

TEST(DistributionProperties, PartialExpectations)
{
    for (const auto& d : random_distributions(5, 2)) {
        SCOPED_TRACE(d.describe());
        for (double p : {0.05, 0.5, 0.95}) {
            const double h = d.quantile(p);
            const double up = test::expect(d, [&](double x) { return std::max(0.0, x - h); }, {h});
            const double down = test::expect(d, [&](double x) { return std::max(0.0, h - x); }, {h});
            EXPECT_NEAR(d.upper_partial_expectation(h), up, 1e-8 * std::max(1.0, up));
            EXPECT_NEAR(d.lower_partial_expectation(h), down, 1e-8 * std::max(1.0, down));
        }
    }
}

TEST(DistributionProperties, ScalingKeepsFamily)
{
    for (const auto& d : random_distributions(17, 1)) {
        SCOPED_TRACE(d.describe());
        const auto s = d.scaled(2.5);
        EXPECT_EQ(s.family(), d.family());
        EXPECT_NEAR(s.mean(), 2.5 * d.mean(), 1e-12 * std::fabs(d.mean()) + 1e-14);
        EXPECT_NEAR(s.variance(), 6.25 * d.variance(), 1e-10 * d.variance());
        EXPECT_THROW(d.scaled(0.0), InvalidParameter);
        EXPECT_THROW(d.scaled(INFINITY), InvalidParameter);
    }
}

// ---------------------------------------------------------------------------
// Samplers

TEST(Sampling, UniformSampleMean)
{
    const auto d = make_uniform(1.0, 11.0);
    RandomStream stream(42, 0);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double x = d.sample(stream);
        ASSERT_GE(x, 1.0);
        ASSERT_LT(x, 11.0);
        sum += x;
    }
    EXPECT_NEAR(sum / n, 6.0, 0.01);
}

TEST(Sampling, TruncatedGaussianStaysInSupport)
{
    const auto d = make_truncated_gaussian(1.0, 4.0);
    RandomStream stream(3, 9);
    for (int i = 0; i < 100000; ++i) {
        ASSERT_GE(d.sample(stream), 0.0);
    }
}

TEST(Sampling, AcceptanceRateMatchesPositiveMass)
{
    for (auto [mu, var] : {std::pair{6.0, 8.33}, std::pair{0.5, 4.0}, std::pair{-1.0, 1.0}}) {
        const auto d = make_truncated_gaussian(mu, var);
        const auto& tg = *d.as<families::TruncatedGaussian>();
        RandomStream stream(77, 1);
        std::uint64_t proposals = 0;
        std::uint64_t accepted = 0;
        while (proposals < 1000000) {
            proposals += sample_truncated_gaussian(tg, stream).proposals;
            ++accepted;
        }
        const double rate = static_cast<double>(accepted) / static_cast<double>(proposals);
        const double p = specfun::q_function(-mu / std::sqrt(var));
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(proposals));
        EXPECT_NEAR(rate, p, 4.0 * se) << "mu=" << mu;
    }
}

TEST(Sampling, KolmogorovSmirnovPerFamily)
{
    const std::vector<Distribution> laws = {
        make_gaussian(19.0, 10.0), make_uniform(1.0, 11.0), make_exponential(6.0),
        make_truncated_gaussian(5.77, 9.73), make_rician(4.42, 3.52)};
    constexpr std::size_t n = 100000;
    std::uint64_t id = 0;
    for (const auto& d : laws) {
        SCOPED_TRACE(d.describe());
        RandomStream stream(2025, id++);
        std::vector<double> xs(n);
        for (double& x : xs) {
            x = d.sample(stream);
        }
        const double ks = test::ks_statistic(xs, [&](double x) { return d.cdf(x); });
        EXPECT_LT(ks, test::ks_critical_1pct(n));
    }
}

TEST(Sampling, ReproducibleStreams)
{
    const auto d = make_rician(2.0, 1.0);
    RandomStream a(5, 3), b(5, 3), c(5, 4);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = d.sample(a);
        ASSERT_EQ(x, d.sample(b));
        differs = differs || x != d.sample(c);
    }
    EXPECT_TRUE(differs);
}

TEST(Sampling, LatticeFrequencies)
{
    const auto d = make_lattice({0.0, 1.0, 5.0}, {0.2, 0.3, 0.5});
    RandomStream stream(8, 8);
    std::array<int, 3> counts{};
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = d.sample(stream);
        counts[x == 0.0 ? 0 : (x == 1.0 ? 1 : 2)]++;
    }
    const std::array<double, 3> p{0.2, 0.3, 0.5};
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(counts[k] / double(n), p[k], 4.0 * std::sqrt(p[k] * (1 - p[k]) / n));
    }
}

}  // namespace
}  // namespace phev
