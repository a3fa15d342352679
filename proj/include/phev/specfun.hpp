#pragma once

// Scalar special functions behind the analytic demand formulas.
//
// All functions are pure and reentrant.

namespace phev::specfun {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Gaussian tail probability Q(x) = P(Z > x) for standard normal Z.
double q_function(double x) noexcept;

/// Inverse of q_function on (0, 1).
double q_function_inverse(double p);

/// Standard normal density exp(-x^2/2)/sqrt(2 pi).
double std_normal_pdf(double x) noexcept;

/// Standard normal CDF, F(x) = 1 - Q(x).
double std_normal_cdf(double x) noexcept;

/// x F(x) + f(x): an antiderivative of the standard normal CDF with the
/// integration constant fixed to zero.
double std_normal_cdf_antiderivative(double x) noexcept;

/// Modified Bessel function of the first kind, order zero.
/// Throws OverflowError for |x| > 700.
double bessel_i0(double x);

/// exp(-|x|) I0(x); finite for every finite x.
double bessel_i0_scaled(double x) noexcept;

/// exp(-|x|) I1(x). Needed only for the Rician mean.
double bessel_i1_scaled(double x) noexcept;

}  // namespace phev::specfun
