#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phev/random_stream.hpp"

namespace phev {

enum class Family {
    Gaussian,
    Uniform,
    Exponential,
    TruncatedGaussianPositive,
    Rician,
    Lattice,
};

std::string_view family_name(Family family) noexcept;

/// Parses the names produced by family_name, case-insensitively, plus the
/// short aliases "normal", "trunc_gauss" and "rice". Throws InvalidParameter.
Family parse_family(std::string_view name);

/// Closed support interval; either end may be infinite.
struct Support {
    double low = -std::numeric_limits<double>::infinity();
    double high = std::numeric_limits<double>::infinity();

    bool bounded() const noexcept
    {
        return low > -std::numeric_limits<double>::infinity()
               && high < std::numeric_limits<double>::infinity();
    }
};

namespace families {

struct Gaussian {
    double mu;
    double sigma;
};

/// Uniform on [low, high).
struct Uniform {
    double low;
    double high;
};

struct Exponential {
    double mean;
    double rate() const noexcept { return 1.0 / mean; }
};

/// Gaussian(mu, sigma^2) conditioned on X >= 0. `mass` is the
/// untruncated probability of [0, inf), Q(-mu/sigma), which is also the
/// acceptance rate of the rejection sampler.
struct TruncatedGaussian {
    double mu;
    double sigma;
    double mass;
};

struct Rician {
    double nu;
    double sigma;
};

/// Finite discrete distribution on sorted atoms.
struct Lattice {
    std::vector<double> atoms;
    std::vector<double> probs;
};

}  // namespace families

/// Immutable univariate distribution value.
///
/// Construct through the make_* functions, which validate parameters and
/// throw InvalidParameter on violations. Lattice distributions carry no
/// density: pdf() returns 0 and the atoms are available through params().
class Distribution {
public:
    using Params = std::variant<families::Gaussian, families::Uniform,
                                families::Exponential, families::TruncatedGaussian,
                                families::Rician, families::Lattice>;

    explicit Distribution(Params params) : params_(std::move(params)) {}

    Family family() const noexcept;
    const Params& params() const noexcept { return params_; }

    template <typename F>
    const F* as() const noexcept
    {
        return std::get_if<F>(&params_);
    }

    bool is_discrete() const noexcept { return family() == Family::Lattice; }

    double pdf(double x) const;
    /// P(X <= x).
    double cdf(double x) const;
    /// P(X > x), accurate in the upper tail.
    double survival(double x) const;
    /// P(low < X <= high), computed from whichever tail keeps precision.
    double prob_interval(double low, double high) const;

    double mean() const;
    double variance() const;
    Support support() const;

    /// Smallest x with cdf(x) >= p, for p in (0, 1).
    double quantile(double p) const;

    /// E[(X - h)^+] and E[(h - X)^+].
    double upper_partial_expectation(double h) const;
    double lower_partial_expectation(double h) const;

    double sample(RandomStream& stream) const;

    /// Distribution of k X for finite k > 0.
    Distribution scaled(double k) const;

    /// Human-readable parameter summary, e.g. "uniform(low=1, high=11)".
    std::string describe() const;

private:
    Params params_;
};

Distribution make_gaussian(double mu, double variance);
Distribution make_uniform(double low, double high);
Distribution make_exponential(double mean);
/// Throws InvalidParameter when the positive mass Q(-mu/sigma) is below
/// kMinTruncatedMass, where rejection sampling becomes impractical.
Distribution make_truncated_gaussian(double mu, double variance);
Distribution make_rician(double nu, double sigma);
Distribution make_lattice(std::vector<double> atoms, std::vector<double> probs);

inline constexpr double kMinTruncatedMass = 1e-3;

/// One accept-reject draw from a truncated Gaussian, reporting how many
/// proposals were consumed.
struct RejectionDraw {
    double value;
    std::uint64_t proposals;
};
RejectionDraw sample_truncated_gaussian(const families::TruncatedGaussian& dist,
                                        RandomStream& stream);

/// Mean of a Rician(nu, sigma) variable divided by sigma, as a function of
/// the shape kappa = nu / sigma.
double rician_mean_over_sigma(double kappa) noexcept;

}  // namespace phev
