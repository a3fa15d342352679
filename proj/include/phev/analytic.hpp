#pragma once

#include "phev/distribution.hpp"
#include "phev/profile.hpp"

namespace phev {

/// One EV's uncoordinated charging session law: the car plugs in at t0,
/// draws `power_kw` for T hours, and t0 and T are independent.
struct SessionModel {
    Distribution arrival;
    Distribution charge_time;
    double power_kw;
};

/// Validates power > 0 and a charge-time support inside [0, inf).
SessionModel make_session_model(Distribution arrival, Distribution charge_time,
                                double power_kw);

enum class EvaluationPath {
    Auto,        // closed form when available, quadrature otherwise
    ClosedForm,  // Gaussian arrival with uniform charge time only
    Quadrature,
};

std::string_view path_name(EvaluationPath path) noexcept;

/// True for a Gaussian arrival with a uniform charge time.
bool closed_form_available(const SessionModel& model) noexcept;

/// Expected power at unwrapped time t for a Gaussian arrival N(mu, sigma^2)
/// and a charge time uniform on [c, d):
///
///   a [1 - Q(z) + sigma/(d - c) (c' Q(c') - d' Q(d') + f(d') - f(c') + d' - c')]
///
/// with z = (t - mu)/sigma, c' = (t - c - mu)/sigma, d' = (t - d - mu)/sigma.
double expected_demand_uniform_closed(double mu, double sigma, double c, double d,
                                      double power_kw, double t);

/// Evaluates E[x(t)] = a P(t - T < t0 <= t) for one model.
///
/// The quadrature path integrates P(t - T' < t0 <= t) f_T(T') over the
/// charge-time support, cut to the [1e-10, 1 - 1e-10] quantile range for
/// unbounded supports. Discrete charge times are summed exactly.
class DemandEvaluator {
public:
    explicit DemandEvaluator(SessionModel model, EvaluationPath path = EvaluationPath::Auto);

    /// Expected power in kW at unwrapped time t. Throws QuadratureFailure
    /// when the quadrature error estimate exceeds 1e-8 a.
    double operator()(double t) const;

    EvaluationPath path() const noexcept { return path_; }
    const SessionModel& model() const noexcept { return model_; }

private:
    double quadrature(double t) const;

    SessionModel model_;
    EvaluationPath path_;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// E[x(t)] on the real time line by quadrature of the total-probability
/// integral.
double expected_demand_unwrapped(const SessionModel& model, double t);

/// Upper bound, in kWh per EV, on the energy that falls outside the
/// unwrapped span [-24 window, 24 (window + 1)) covered by fold_to_day.
double fold_truncation_bound(const SessionModel& model, int window);

/// Smallest window whose truncation bound is at most `relative_tol` times
/// the expected session energy a E[T]. Throws WindowTooSmall if no window
/// up to `max_window` qualifies.
int required_fold_window(const SessionModel& model, double relative_tol = 1e-9,
                         int max_window = 400);

/// Largest truncation bound, relative to a E[T], that fold_to_day accepts.
inline constexpr double kMaxFoldTailFraction = 1e-6;

/// Daily profile: value at each bin center t is sum_{k=-window}^{window}
/// E[x(t + 24 k)]. Throws WindowTooSmall when the truncation bound
/// exceeds kMaxFoldTailFraction of a E[T].
DemandProfile fold_to_day(const SessionModel& model, const TimeGrid& grid, int window,
                          EvaluationPath path = EvaluationPath::Auto);

}  // namespace phev
