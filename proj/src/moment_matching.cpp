#include "phev/moment_matching.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "phev/error.hpp"
#include "phev/specfun.hpp"

namespace phev {

namespace {

std::string infeasible(std::string_view family, double mean, double variance,
                       double bound)
{
    std::ostringstream msg;
    msg.precision(10);
    msg << family << ": no parameters give mean " << mean << " and variance "
        << variance << "; variance must be below " << bound;
    return msg.str();
}

MomentMatch match_uniform(double m, double v)
{
    const double half = std::sqrt(3.0 * v);
    if (m - half < 0.0) {
        throw NoSolution(infeasible("uniform", m, v, m * m / 3.0), m * m / 3.0);
    }
    return {make_uniform(m - half, m + half), true};
}

// Standardized moments of N(beta, 1) truncated to [0, inf) in units of sigma:
// mean/sigma = beta + lambda, variance/sigma^2 = 1 - beta lambda - lambda^2.
struct TruncatedShape {
    double lambda;
    double mean;
    double variance;
};

TruncatedShape truncated_shape(double beta)
{
    const double lambda = specfun::std_normal_pdf(beta) / specfun::std_normal_cdf(beta);
    return {lambda, beta + lambda, 1.0 - beta * lambda - lambda * lambda};
}

double truncated_ratio(double beta)
{
    const auto s = truncated_shape(beta);
    return s.variance / (s.mean * s.mean);
}

bool truncated_newton(double m, double v, double& mu, double& sigma)
{
    const double min_beta = -specfun::q_function_inverse(kMinTruncatedMass);
    const auto residual = [&](double mu_, double sigma_) {
        const auto s = truncated_shape(mu_ / sigma_);
        return std::array<double, 2>{(sigma_ * s.mean - m) / m,
                                     (sigma_ * sigma_ * s.variance - v) / v};
    };
    const auto norm = [](const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); };

    auto r = residual(mu, sigma);
    for (int iter = 0; iter < 100; ++iter) {
        if (norm(r) <= 1e-14) {
            return true;
        }
        const double beta = mu / sigma;
        const auto s = truncated_shape(beta);
        // d lambda / d beta = -lambda (beta + lambda)
        const double dl = -s.lambda * (beta + s.lambda);
        const double dw = -s.lambda - beta * dl - 2.0 * s.lambda * dl;
        // Jacobian of (M, V) with respect to (mu, sigma).
        const double dm_dmu = 1.0 + dl;
        const double dm_dsigma = s.lambda - beta * dl;
        const double dv_dmu = sigma * dw;
        const double dv_dsigma = 2.0 * sigma * s.variance - beta * sigma * dw;
        const double j00 = dm_dmu / m, j01 = dm_dsigma / m;
        const double j10 = dv_dmu / v, j11 = dv_dsigma / v;
        const double det = j00 * j11 - j01 * j10;
        if (!(std::fabs(det) > 0.0)) {
            return false;
        }
        const double step_mu = -(j11 * r[0] - j01 * r[1]) / det;
        const double step_sigma = -(-j10 * r[0] + j00 * r[1]) / det;

        double damping = 1.0;
        bool improved = false;
        for (int half = 0; half < 40; ++half, damping *= 0.5) {
            const double next_mu = mu + damping * step_mu;
            const double next_sigma = sigma + damping * step_sigma;
            if (!(next_sigma > 0.0) || next_mu / next_sigma < min_beta) {
                continue;
            }
            const auto next_r = residual(next_mu, next_sigma);
            if (norm(next_r) < norm(r)) {
                mu = next_mu;
                sigma = next_sigma;
                r = next_r;
                improved = true;
                break;
            }
        }
        if (!improved) {
            return norm(r) <= 1e-12;
        }
    }
    return norm(r) <= 1e-12;
}

MomentMatch match_truncated_gaussian(double m, double v)
{
    const double min_beta = -specfun::q_function_inverse(kMinTruncatedMass);
    const double max_ratio = truncated_ratio(min_beta);
    if (v / (m * m) >= max_ratio) {
        throw NoSolution(infeasible("truncated_gaussian", m, v, max_ratio * m * m),
                         max_ratio * m * m);
    }

    double mu = m;
    double sigma = std::sqrt(v);
    if (!truncated_newton(m, v, mu, sigma)) {
        // The variance-to-mean^2 ratio decreases monotonically in beta.
        const double target = v / (m * m);
        double lo = min_beta;
        double hi = 40.0;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++i) {
            const double mid = 0.5 * (lo + hi);
            (truncated_ratio(mid) > target ? lo : hi) = mid;
        }
        const double beta = 0.5 * (lo + hi);
        sigma = m / truncated_shape(beta).mean;
        mu = beta * sigma;
    }
    return {make_truncated_gaussian(mu, sigma * sigma), true};
}

// Ratio E[T]^2 / E[T^2] of a Rician with shape kappa; rises from pi/4
// (Rayleigh) towards 1.
double rician_ratio(double kappa)
{
    const double g = rician_mean_over_sigma(kappa);
    return g * g / (2.0 + kappa * kappa);
}

MomentMatch match_rician(double m, double v)
{
    constexpr double kMaxKappa = 1e3;
    const double target = m * m / (m * m + v);
    const double low_ratio = std::numbers::pi / 4.0;
    if (target < low_ratio) {
        const double bound = m * m * (4.0 / std::numbers::pi - 1.0);
        throw NoSolution(infeasible("rician", m, v, bound), bound);
    }
    if (target > rician_ratio(kMaxKappa)) {
        throw NoSolution("rician: variance too small relative to the mean "
                         "(shape nu/sigma would exceed 1000)",
                         0.0);
    }
    double lo = 0.0;
    double hi = kMaxKappa;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (rician_ratio(mid) < target ? lo : hi) = mid;
    }
    const double kappa = 0.5 * (lo + hi);
    const double sigma = std::sqrt((m * m + v) / (2.0 + kappa * kappa));
    return {make_rician(kappa * sigma, sigma), true};
}

}  // namespace

MomentMatch match_moments(Family family, double target_mean, double target_variance)
{
    if (!(target_mean > 0.0) || !(target_variance > 0.0) || !std::isfinite(target_mean)
        || !std::isfinite(target_variance)) {
        throw InvalidParameter("match_moments: targets must be finite and positive");
    }
    switch (family) {
    case Family::Gaussian:
        return {make_gaussian(target_mean, target_variance), true};
    case Family::Uniform:
        return match_uniform(target_mean, target_variance);
    case Family::Exponential: {
        const double m2 = target_mean * target_mean;
        const bool matched = std::fabs(m2 - target_variance) <= 1e-9 * target_variance;
        return {make_exponential(target_mean), matched};
    }
    case Family::TruncatedGaussianPositive:
        return match_truncated_gaussian(target_mean, target_variance);
    case Family::Rician:
        return match_rician(target_mean, target_variance);
    case Family::Lattice:
        break;
    }
    throw UnsupportedFamily("match_moments: lattice distributions cannot be moment matched");
}

}  // namespace phev
