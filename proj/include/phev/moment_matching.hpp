#pragma once

#include "phev/distribution.hpp"

namespace phev {

struct MomentMatch {
    Distribution distribution;
    /// False when the family has a single degree of freedom and only the
    /// mean could be matched (exponential with variance != mean^2).
    bool variance_matched = true;
};

/// Picks family parameters whose mean and variance equal the targets.
///
/// Uniform is solved in closed form. The positive truncated Gaussian uses
/// damped Newton on (mu, sigma) with a bisection fallback on mu/sigma.
/// Rician eliminates sigma through E[T^2] = 2 sigma^2 + nu^2 and bisects
/// on kappa = nu/sigma. Throws NoSolution (carrying the feasibility bound
/// on the variance) when the targets are out of reach for the family.
MomentMatch match_moments(Family family, double target_mean, double target_variance);

}  // namespace phev
