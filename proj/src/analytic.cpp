#include "phev/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phev/error.hpp"
#include "phev/quadrature.hpp"
#include "phev/specfun.hpp"

namespace phev {

namespace {

constexpr double kQuantileCut = 1e-10;
constexpr double kQuadratureTol = 1e-10;
constexpr double kQuadratureFailTol = 1e-8;

}  // namespace

SessionModel make_session_model(Distribution arrival, Distribution charge_time,
                                double power_kw)
{
    if (!(power_kw > 0.0) || !std::isfinite(power_kw)) {
        throw InvalidParameter("session model: power must be finite and > 0 kW");
    }
    if (charge_time.support().low < 0.0) {
        throw InvalidParameter("session model: charge time support must lie in [0, inf)");
    }
    return SessionModel{std::move(arrival), std::move(charge_time), power_kw};
}

std::string_view path_name(EvaluationPath path) noexcept
{
    switch (path) {
    case EvaluationPath::Auto: return "auto";
    case EvaluationPath::ClosedForm: return "closed-form";
    case EvaluationPath::Quadrature: return "quadrature";
    }
    return "unknown";
}

bool closed_form_available(const SessionModel& model) noexcept
{
    return model.arrival.family() == Family::Gaussian
           && model.charge_time.family() == Family::Uniform;
}

double expected_demand_uniform_closed(double mu, double sigma, double c, double d,
                                      double power_kw, double t)
{
    using specfun::q_function;
    using specfun::std_normal_pdf;
    const double cp = (t - c - mu) / sigma;
    const double dp = (t - d - mu) / sigma;
    const double bracket = 1.0 - q_function((t - mu) / sigma)
                           + sigma / (d - c)
                                 * (cp * q_function(cp) - dp * q_function(dp)
                                    + std_normal_pdf(dp) - std_normal_pdf(cp) + dp - cp);
    return power_kw * std::clamp(bracket, 0.0, 1.0);
}

DemandEvaluator::DemandEvaluator(SessionModel model, EvaluationPath path)
    : model_(std::move(model)), path_(path)
{
    if (path_ == EvaluationPath::Auto) {
        path_ = closed_form_available(model_) ? EvaluationPath::ClosedForm
                                              : EvaluationPath::Quadrature;
    }
    if (path_ == EvaluationPath::ClosedForm && !closed_form_available(model_)) {
        throw InvalidParameter(
            "closed form requires a gaussian arrival and a uniform charge time");
    }
    const Support s = model_.charge_time.support();
    lo_ = std::isfinite(s.low) ? s.low : model_.charge_time.quantile(kQuantileCut);
    hi_ = std::isfinite(s.high) ? s.high : model_.charge_time.quantile(1.0 - kQuantileCut);
}

double DemandEvaluator::operator()(double t) const
{
    if (path_ == EvaluationPath::ClosedForm) {
        const auto& g = *model_.arrival.as<families::Gaussian>();
        const auto& u = *model_.charge_time.as<families::Uniform>();
        return expected_demand_uniform_closed(g.mu, g.sigma, u.low, u.high, model_.power_kw, t);
    }
    return model_.power_kw * std::clamp(quadrature(t), 0.0, 1.0);
}

double DemandEvaluator::quadrature(double t) const
{
    const Distribution& arrival = model_.arrival;
    if (const auto* lat = model_.charge_time.as<families::Lattice>()) {
        double sum = 0.0;
        for (std::size_t j = 0; j < lat->atoms.size(); ++j) {
            sum += lat->probs[j] * arrival.prob_interval(t - lat->atoms[j], t);
        }
        return sum;
    }
    const Distribution& charge = model_.charge_time;
    const auto integrand = [&](double tau) {
        return arrival.prob_interval(t - tau, t) * charge.pdf(tau);
    };
    const auto r = quadrature::integrate(integrand, lo_, hi_,
                                         {.abs_tol = kQuadratureTol, .max_intervals = 4000});
    if (r.abs_error > kQuadratureFailTol) {
        std::ostringstream msg;
        msg << "quadrature error estimate " << r.abs_error << " at t=" << t
            << " exceeds tolerance " << kQuadratureFailTol;
        throw QuadratureFailure(msg.str());
    }
    return r.value;
}

double expected_demand_unwrapped(const SessionModel& model, double t)
{
    return DemandEvaluator(model, EvaluationPath::Quadrature)(t);
}

double fold_truncation_bound(const SessionModel& model, int window)
{
    if (window < 0) {
        throw InvalidParameter("fold window must be >= 0");
    }
    const double lower = -kHoursPerDay * window;
    const double upper = kHoursPerDay * (window + 1);
    const Distribution& arrival = model.arrival;
    const Distribution& charge = model.charge_time;

    // Time before `lower` is at most (lower - t0)^+. Time after `upper` is
    // (t0 + T - upper)^+ <= (t0 - m)^+ + (T - (upper - m))^+ for any split m.
    const double before = arrival.lower_partial_expectation(lower);
    const double from = std::min(arrival.mean(), upper);
    double after = std::numeric_limits<double>::infinity();
    constexpr int kSplits = 96;
    for (int i = 0; i <= kSplits; ++i) {
        const double m = from + (upper - from) * i / kSplits;
        after = std::min(after, arrival.upper_partial_expectation(m)
                                    + charge.upper_partial_expectation(upper - m));
    }
    return model.power_kw * (before + after);
}

int required_fold_window(const SessionModel& model, double relative_tol, int max_window)
{
    const double energy = model.power_kw * model.charge_time.mean();
    for (int w = 1; w <= max_window; ++w) {
        if (fold_truncation_bound(model, w) <= relative_tol * energy) {
            return w;
        }
    }
    throw WindowTooSmall("no fold window up to " + std::to_string(max_window)
                         + " days captures the session energy");
}

DemandProfile fold_to_day(const SessionModel& model, const TimeGrid& grid, int window,
                          EvaluationPath path)
{
    if (window < 1) {
        throw InvalidParameter("fold window must be >= 1 day");
    }
    const double bound = fold_truncation_bound(model, window);
    const double energy = model.power_kw * model.charge_time.mean();
    if (bound > kMaxFoldTailFraction * energy) {
        std::ostringstream msg;
        msg << "fold window of " << window << " days misses up to " << bound / energy
            << " of the session energy (limit " << kMaxFoldTailFraction << "); need "
            << required_fold_window(model, kMaxFoldTailFraction) << " days";
        throw WindowTooSmall(msg.str());
    }

    const DemandEvaluator eval(model, path);
    DemandProfile profile(grid);
    for (std::size_t i = 0; i < grid.bins(); ++i) {
        const double t = grid.center_of(i);
        double sum = 0.0;
        for (int k = -window; k <= window; ++k) {
            sum += eval(t + kHoursPerDay * k);
        }
        profile.values[i] = sum;
    }
    profile.meta.provenance = Provenance::Analytic;
    profile.meta.method = std::string(path_name(eval.path()));
    profile.meta.fold_window = window;
    profile.meta.truncation_bound = bound;
    return profile;
}

}  // namespace phev
