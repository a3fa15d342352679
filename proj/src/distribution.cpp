#include "phev/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "phev/error.hpp"
#include "phev/quadrature.hpp"
#include "phev/specfun.hpp"

namespace phev {

using specfun::q_function;
using specfun::q_function_inverse;
using specfun::std_normal_cdf;
using specfun::std_normal_pdf;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite(double x) { return std::isfinite(x); }

// Standard normal quantile, accurate in both tails.
double normal_quantile(double p)
{
    return p < 0.5 ? -q_function_inverse(p) : q_function_inverse(1.0 - p);
}

// ---------------------------------------------------------------------------
// Rician CDF. With y = x^2/(2 sigma^2) and lambda = nu^2/(2 sigma^2), the
// Rician CDF equals P(J > K) for independent J ~ Poisson(y) and
// K ~ Poisson(lambda). Both tails are sums of nonnegative terms.

struct PoissonRange {
    long first;
    long last;
};

PoissonRange poisson_range(double mean)
{
    const double spread = 40.0 * std::sqrt(mean) + 60.0;
    return {std::max(0L, static_cast<long>(std::floor(mean - spread))),
            static_cast<long>(std::ceil(mean + spread))};
}

double poisson_pmf(double mean, long k)
{
    if (mean == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    const double kd = static_cast<double>(k);
    return std::exp(-mean + kd * std::log(mean) - std::lgamma(kd + 1.0));
}

// P(J > K) when upper == false, P(J <= K) when upper == true.
double rician_tail(const families::Rician& d, double x, bool upper)
{
    if (x <= 0.0) {
        return upper ? 1.0 : 0.0;
    }
    const double s2 = 2.0 * d.sigma * d.sigma;
    const double y = x * x / s2;
    const double lambda = d.nu * d.nu / s2;
    const PoissonRange rj = poisson_range(y);
    const PoissonRange rk = poisson_range(lambda);
    const long top = std::max(rj.last, rk.last) + 1;
    const long bottom = std::min(rj.first, rk.first);

    double result = 0.0;
    if (!upper) {
        // sum_j P(J = j) P(K < j)
        double k_cdf = 0.0;  // P(K <= j - 1)
        for (long j = bottom; j <= top; ++j) {
            if (j >= rj.first && j <= rj.last) {
                result += poisson_pmf(y, j) * k_cdf;
            }
            if (j >= rk.first && j <= rk.last) {
                k_cdf += poisson_pmf(lambda, j);
            }
        }
    } else {
        // sum_k P(K = k) P(J <= k)
        double j_cdf = 0.0;  // P(J <= k)
        for (long k = bottom; k <= top; ++k) {
            if (k >= rj.first && k <= rj.last) {
                j_cdf += poisson_pmf(y, k);
            }
            if (k >= rk.first && k <= rk.last) {
                result += poisson_pmf(lambda, k) * j_cdf;
            }
        }
    }
    return std::clamp(result, 0.0, 1.0);
}

double rician_pdf(const families::Rician& d, double x)
{
    if (x < 0.0) {
        return 0.0;
    }
    const double s2 = d.sigma * d.sigma;
    const double diff = x - d.nu;
    // exp(-(x^2 + nu^2)/(2 s2)) I0(x nu / s2) rewritten with the scaled I0.
    return x / s2 * std::exp(-diff * diff / (2.0 * s2))
           * specfun::bessel_i0_scaled(x * d.nu / s2);
}

double rician_upper_bound(const families::Rician& d)
{
    return d.nu + 40.0 * d.sigma;
}

double rician_quantile(const families::Rician& d, double p)
{
    double lo = 0.0;
    double hi = rician_upper_bound(d);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool below = p < 0.5 ? rician_tail(d, mid, false) < p
                                   : rician_tail(d, mid, true) > 1.0 - p;
        (below ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double rician_upper_partial(const families::Rician& d, double h)
{
    const double start = std::max(h, 0.0);
    const double end = rician_upper_bound(d);
    if (start >= end) {
        return 0.0;
    }
    const auto r = quadrature::integrate(
        [&](double x) { return (x - h) * rician_pdf(d, x); }, start, end,
        {.abs_tol = 1e-14, .rel_tol = 1e-12});
    // For h < 0 the mass on [0, start) contributes nothing, (x - h) covers it.
    return r.value;
}

// ---------------------------------------------------------------------------

double truncated_lambda(const families::TruncatedGaussian& d)
{
    return std_normal_pdf(d.mu / d.sigma) / d.mass;
}

double lattice_cdf(const families::Lattice& d, double x)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < d.atoms.size() && d.atoms[i] <= x; ++i) {
        sum += d.probs[i];
    }
    return std::min(sum, 1.0);
}

double lattice_survival(const families::Lattice& d, double x)
{
    double sum = 0.0;
    for (std::size_t i = d.atoms.size(); i-- > 0 && d.atoms[i] > x;) {
        sum += d.probs[i];
    }
    return std::min(sum, 1.0);
}

}  // namespace

std::string_view family_name(Family family) noexcept
{
    switch (family) {
    case Family::Gaussian: return "gaussian";
    case Family::Uniform: return "uniform";
    case Family::Exponential: return "exponential";
    case Family::TruncatedGaussianPositive: return "truncated_gaussian";
    case Family::Rician: return "rician";
    case Family::Lattice: return "lattice";
    }
    return "unknown";
}

Family parse_family(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "gaussian" || lower == "normal") return Family::Gaussian;
    if (lower == "uniform") return Family::Uniform;
    if (lower == "exponential") return Family::Exponential;
    if (lower == "truncated_gaussian" || lower == "trunc_gauss")
        return Family::TruncatedGaussianPositive;
    if (lower == "rician" || lower == "rice") return Family::Rician;
    if (lower == "lattice") return Family::Lattice;
    throw InvalidParameter("unknown distribution family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Construction

Distribution make_gaussian(double mu, double variance)
{
    if (!finite(mu) || !(variance > 0.0) || !finite(variance)) {
        throw InvalidParameter("gaussian: requires finite mean and variance > 0");
    }
    return Distribution(families::Gaussian{mu, std::sqrt(variance)});
}

Distribution make_uniform(double low, double high)
{
    if (!finite(low) || !finite(high) || low < 0.0 || !(high > low)) {
        throw InvalidParameter("uniform: requires 0 <= low < high");
    }
    return Distribution(families::Uniform{low, high});
}

Distribution make_exponential(double mean)
{
    if (!(mean > 0.0) || !finite(mean)) {
        throw InvalidParameter("exponential: requires mean > 0");
    }
    return Distribution(families::Exponential{mean});
}

Distribution make_truncated_gaussian(double mu, double variance)
{
    if (!finite(mu) || !(variance > 0.0) || !finite(variance)) {
        throw InvalidParameter("truncated_gaussian: requires finite mu and variance > 0");
    }
    const double sigma = std::sqrt(variance);
    const double mass = q_function(-mu / sigma);
    if (mass < kMinTruncatedMass) {
        std::ostringstream msg;
        msg << "truncated_gaussian: positive mass " << mass
            << " below the rejection-sampling limit " << kMinTruncatedMass;
        throw InvalidParameter(msg.str());
    }
    return Distribution(families::TruncatedGaussian{mu, sigma, mass});
}

Distribution make_rician(double nu, double sigma)
{
    if (!(nu >= 0.0) || !finite(nu) || !(sigma > 0.0) || !finite(sigma)) {
        throw InvalidParameter("rician: requires nu >= 0 and sigma > 0");
    }
    return Distribution(families::Rician{nu, sigma});
}

Distribution make_lattice(std::vector<double> atoms, std::vector<double> probs)
{
    if (atoms.empty() || atoms.size() != probs.size()) {
        throw InvalidParameter("lattice: atoms and probs must be nonempty and equal length");
    }
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    families::Lattice lat;
    double total = 0.0;
    for (std::size_t i : order) {
        if (!finite(atoms[i]) || !(probs[i] >= 0.0)) {
            throw InvalidParameter("lattice: atoms must be finite and probs nonnegative");
        }
        if (!lat.atoms.empty() && lat.atoms.back() == atoms[i]) {
            throw InvalidParameter("lattice: duplicate atom");
        }
        lat.atoms.push_back(atoms[i]);
        lat.probs.push_back(probs[i]);
        total += probs[i];
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw InvalidParameter("lattice: probabilities must sum to 1");
    }
    return Distribution(std::move(lat));
}

// ---------------------------------------------------------------------------
// Queries

Family Distribution::family() const noexcept
{
    return static_cast<Family>(params_.index());
}

double Distribution::pdf(double x) const
{
    return std::visit(
        Overloaded{
            [x](const families::Gaussian& d) {
                return std_normal_pdf((x - d.mu) / d.sigma) / d.sigma;
            },
            [x](const families::Uniform& d) {
                return (x >= d.low && x < d.high) ? 1.0 / (d.high - d.low) : 0.0;
            },
            [x](const families::Exponential& d) {
                return x < 0.0 ? 0.0 : d.rate() * std::exp(-d.rate() * x);
            },
            [x](const families::TruncatedGaussian& d) {
                return x < 0.0 ? 0.0
                               : std_normal_pdf((x - d.mu) / d.sigma) / (d.sigma * d.mass);
            },
            [x](const families::Rician& d) { return rician_pdf(d, x); },
            [](const families::Lattice&) { return 0.0; },
        },
        params_);
}

double Distribution::cdf(double x) const
{
    return std::visit(
        Overloaded{
            [x](const families::Gaussian& d) { return std_normal_cdf((x - d.mu) / d.sigma); },
            [x](const families::Uniform& d) {
                return std::clamp((x - d.low) / (d.high - d.low), 0.0, 1.0);
            },
            [x](const families::Exponential& d) {
                return x <= 0.0 ? 0.0 : -std::expm1(-d.rate() * x);
            },
            [x](const families::TruncatedGaussian& d) {
                if (x <= 0.0) {
                    return 0.0;
                }
                const double z = (x - d.mu) / d.sigma;
                const double v = z > 0.0 ? 1.0 - q_function(z) / d.mass
                                         : (d.mass - q_function(z)) / d.mass;
                return std::clamp(v, 0.0, 1.0);
            },
            [x](const families::Rician& d) { return rician_tail(d, x, false); },
            [x](const families::Lattice& d) { return lattice_cdf(d, x); },
        },
        params_);
}

double Distribution::survival(double x) const
{
    return std::visit(
        Overloaded{
            [x](const families::Gaussian& d) { return q_function((x - d.mu) / d.sigma); },
            [x](const families::Uniform& d) {
                return std::clamp((d.high - x) / (d.high - d.low), 0.0, 1.0);
            },
            [x](const families::Exponential& d) {
                return x <= 0.0 ? 1.0 : std::exp(-d.rate() * x);
            },
            [x](const families::TruncatedGaussian& d) {
                return x <= 0.0 ? 1.0
                                : std::min(1.0, q_function((x - d.mu) / d.sigma) / d.mass);
            },
            [x](const families::Rician& d) { return rician_tail(d, x, true); },
            [x](const families::Lattice& d) { return lattice_survival(d, x); },
        },
        params_);
}

double Distribution::prob_interval(double low, double high) const
{
    if (!(high > low)) {
        return 0.0;
    }
    if (const auto* lat = as<families::Lattice>()) {
        double sum = 0.0;
        for (std::size_t i = 0; i < lat->atoms.size(); ++i) {
            if (lat->atoms[i] > low && lat->atoms[i] <= high) {
                sum += lat->probs[i];
            }
        }
        return sum;
    }
    // Subtract whichever tail is smaller at the interval's lower end.
    const double v = survival(low) < 0.5 ? survival(low) - survival(high)
                                         : cdf(high) - cdf(low);
    return std::max(v, 0.0);
}

double Distribution::mean() const
{
    return std::visit(
        Overloaded{
            [](const families::Gaussian& d) { return d.mu; },
            [](const families::Uniform& d) { return 0.5 * (d.low + d.high); },
            [](const families::Exponential& d) { return d.mean; },
            [](const families::TruncatedGaussian& d) {
                return d.mu + d.sigma * truncated_lambda(d);
            },
            [](const families::Rician& d) {
                return d.sigma * rician_mean_over_sigma(d.nu / d.sigma);
            },
            [](const families::Lattice& d) {
                return std::inner_product(d.atoms.begin(), d.atoms.end(),
                                          d.probs.begin(), 0.0);
            },
        },
        params_);
}

double Distribution::variance() const
{
    return std::visit(
        Overloaded{
            [](const families::Gaussian& d) { return d.sigma * d.sigma; },
            [](const families::Uniform& d) {
                const double w = d.high - d.low;
                return w * w / 12.0;
            },
            [](const families::Exponential& d) { return d.mean * d.mean; },
            [](const families::TruncatedGaussian& d) {
                const double lambda = truncated_lambda(d);
                const double beta = d.mu / d.sigma;
                return d.sigma * d.sigma * (1.0 - beta * lambda - lambda * lambda);
            },
            [](const families::Rician& d) {
                const double m = d.sigma * rician_mean_over_sigma(d.nu / d.sigma);
                return 2.0 * d.sigma * d.sigma + d.nu * d.nu - m * m;
            },
            [this](const families::Lattice& d) {
                const double m = mean();
                double v = 0.0;
                for (std::size_t i = 0; i < d.atoms.size(); ++i) {
                    v += d.probs[i] * (d.atoms[i] - m) * (d.atoms[i] - m);
                }
                return v;
            },
        },
        params_);
}

Support Distribution::support() const
{
    return std::visit(
        Overloaded{
            [](const families::Gaussian&) { return Support{}; },
            [](const families::Uniform& d) { return Support{d.low, d.high}; },
            [](const families::Exponential&) { return Support{0.0, kInf}; },
            [](const families::TruncatedGaussian&) { return Support{0.0, kInf}; },
            [](const families::Rician&) { return Support{0.0, kInf}; },
            [](const families::Lattice& d) {
                return Support{d.atoms.front(), d.atoms.back()};
            },
        },
        params_);
}

double Distribution::quantile(double p) const
{
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidParameter("quantile: p must lie in (0, 1)");
    }
    return std::visit(
        Overloaded{
            [p](const families::Gaussian& d) { return d.mu + d.sigma * normal_quantile(p); },
            [p](const families::Uniform& d) { return d.low + p * (d.high - d.low); },
            [p](const families::Exponential& d) { return -d.mean * std::log1p(-p); },
            [p](const families::TruncatedGaussian& d) {
                // Q((x - mu)/sigma) = mass (1 - p).
                return std::max(0.0, d.mu + d.sigma * q_function_inverse(d.mass * (1.0 - p)));
            },
            [p](const families::Rician& d) { return rician_quantile(d, p); },
            [p](const families::Lattice& d) {
                double cum = 0.0;
                for (std::size_t i = 0; i < d.atoms.size(); ++i) {
                    cum += d.probs[i];
                    if (cum >= p) {
                        return d.atoms[i];
                    }
                }
                return d.atoms.back();
            },
        },
        params_);
}

double Distribution::upper_partial_expectation(double h) const
{
    return std::visit(
        Overloaded{
            [h](const families::Gaussian& d) {
                const double z = (h - d.mu) / d.sigma;
                return d.sigma * std::max(0.0, std_normal_pdf(z) - z * q_function(z));
            },
            [h](const families::Uniform& d) {
                if (h <= d.low) return 0.5 * (d.low + d.high) - h;
                if (h >= d.high) return 0.0;
                return (d.high - h) * (d.high - h) / (2.0 * (d.high - d.low));
            },
            [h](const families::Exponential& d) {
                return h <= 0.0 ? d.mean - h : d.mean * std::exp(-d.rate() * h);
            },
            [this, h](const families::TruncatedGaussian& d) {
                if (h <= 0.0) return mean() - h;
                const double z = (h - d.mu) / d.sigma;
                return d.sigma * std::max(0.0, std_normal_pdf(z) - z * q_function(z)) / d.mass;
            },
            [h](const families::Rician& d) { return rician_upper_partial(d, h); },
            [h](const families::Lattice& d) {
                double v = 0.0;
                for (std::size_t i = 0; i < d.atoms.size(); ++i) {
                    v += d.probs[i] * std::max(0.0, d.atoms[i] - h);
                }
                return v;
            },
        },
        params_);
}

double Distribution::lower_partial_expectation(double h) const
{
    if (const auto* g = as<families::Gaussian>()) {
        const double z = (h - g->mu) / g->sigma;
        return g->sigma * std::max(0.0, specfun::std_normal_cdf_antiderivative(z));
    }
    if (const auto* lat = as<families::Lattice>()) {
        double v = 0.0;
        for (std::size_t i = 0; i < lat->atoms.size(); ++i) {
            v += lat->probs[i] * std::max(0.0, h - lat->atoms[i]);
        }
        return v;
    }
    if (h <= support().low) {
        return 0.0;
    }
    // E[(h - X)^+] = h - E[X] + E[(X - h)^+]
    return std::max(0.0, h - mean() + upper_partial_expectation(h));
}

RejectionDraw sample_truncated_gaussian(const families::TruncatedGaussian& dist,
                                        RandomStream& stream)
{
    std::uint64_t proposals = 0;
    for (;;) {
        ++proposals;
        const double x = dist.mu + dist.sigma * stream.standard_normal();
        if (x >= 0.0) {
            return {x, proposals};
        }
    }
}

double Distribution::sample(RandomStream& stream) const
{
    return std::visit(
        Overloaded{
            [&](const families::Gaussian& d) { return d.mu + d.sigma * stream.standard_normal(); },
            [&](const families::Uniform& d) {
                return d.low + (d.high - d.low) * stream.uniform01();
            },
            [&](const families::Exponential& d) { return -d.mean * std::log(stream.uniform01()); },
            [&](const families::TruncatedGaussian& d) {
                return sample_truncated_gaussian(d, stream).value;
            },
            [&](const families::Rician& d) {
                const double x = d.nu + d.sigma * stream.standard_normal();
                const double y = d.sigma * stream.standard_normal();
                return std::hypot(x, y);
            },
            [&](const families::Lattice& d) {
                const double u = stream.uniform01();
                double cum = 0.0;
                for (std::size_t i = 0; i < d.atoms.size(); ++i) {
                    cum += d.probs[i];
                    if (u < cum) {
                        return d.atoms[i];
                    }
                }
                return d.atoms.back();
            },
        },
        params_);
}

Distribution Distribution::scaled(double k) const
{
    if (!(k > 0.0) || !finite(k)) {
        throw InvalidParameter("scaled: factor must be finite and > 0");
    }
    return std::visit(
        Overloaded{
            [k](const families::Gaussian& d) {
                return make_gaussian(k * d.mu, k * k * d.sigma * d.sigma);
            },
            [k](const families::Uniform& d) { return make_uniform(k * d.low, k * d.high); },
            [k](const families::Exponential& d) { return make_exponential(k * d.mean); },
            [k](const families::TruncatedGaussian& d) {
                return make_truncated_gaussian(k * d.mu, k * k * d.sigma * d.sigma);
            },
            [k](const families::Rician& d) { return make_rician(k * d.nu, k * d.sigma); },
            [k](const families::Lattice& d) {
                std::vector<double> atoms = d.atoms;
                for (double& a : atoms) a *= k;
                return make_lattice(std::move(atoms), d.probs);
            },
        },
        params_);
}

std::string Distribution::describe() const
{
    std::ostringstream out;
    out.precision(10);
    out << family_name(family()) << '(';
    std::visit(
        Overloaded{
            [&](const families::Gaussian& d) {
                out << "mean=" << d.mu << ", variance=" << d.sigma * d.sigma;
            },
            [&](const families::Uniform& d) { out << "low=" << d.low << ", high=" << d.high; },
            [&](const families::Exponential& d) { out << "mean=" << d.mean; },
            [&](const families::TruncatedGaussian& d) {
                out << "mu=" << d.mu << ", variance=" << d.sigma * d.sigma;
            },
            [&](const families::Rician& d) { out << "nu=" << d.nu << ", sigma=" << d.sigma; },
            [&](const families::Lattice& d) { out << "atoms=" << d.atoms.size(); },
        },
        params_);
    out << ')';
    return out.str();
}

double rician_mean_over_sigma(double kappa) noexcept
{
    // sqrt(pi/2) L_{1/2}(-kappa^2/2) with the Laguerre function written in
    // exponentially scaled Bessel functions of argument z = kappa^2/4.
    const double z = 0.25 * kappa * kappa;
    const double laguerre = (1.0 + 2.0 * z) * specfun::bessel_i0_scaled(z)
                            + 2.0 * z * specfun::bessel_i1_scaled(z);
    return std::sqrt(0.5 * std::numbers::pi) * laguerre;
}

}  // namespace phev
