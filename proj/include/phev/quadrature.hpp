#pragma once

#include <functional>

namespace phev::quadrature {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    int intervals = 0;
};

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    int max_intervals = 2000;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of f over the
/// finite interval [a, b]. Subdivides the interval with the largest error
/// estimate until the total estimate meets the tolerance or the interval
/// budget runs out; the caller inspects abs_error to decide whether that
/// is acceptable.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

}  // namespace phev::quadrature
