#pragma once

#include "skewstab/measures/fiber_measure.hpp"
#include "skewstab/util/rational.hpp"

namespace skewstab::measures {

/// sup |sum w_i g(x_i)| over g with Lip(g) <= 1 and |g| <= 1 on T^d.
///
/// d = 1 uses the exact circle algorithm below; d > 1 solves the pairwise linear
/// program (in rational arithmetic when there are at most 8 atoms).
double w1_norm(const FiberMeasure& mu);

/// Exact O(n log n) evaluation on T^1. Works in the dual: with total mass m >= 0
/// the optimal source measure is nonnegative of mass m, which turns the problem
/// into a box-constrained weighted L1 isotonic regression of the cumulative
/// weights plus a one-dimensional convex minimization over the circulation.
double w1_norm_circle(const FiberMeasure& mu);

/// The same quantity as a dense linear program over all atom pairs, in floating point.
double w1_norm_pairwise(const FiberMeasure& mu);

/// Pairwise linear program solved exactly. Positions are taken as their exact
/// binary values. Throws ValidationError for more than `max_atoms` atoms.
Rational w1_norm_exact(const FiberMeasure& mu, std::size_t max_atoms = 8);

/// W1(mu, nu) = ||mu - nu||_W1.
double w1_distance(const FiberMeasure& mu, const FiberMeasure& nu);

}  // namespace skewstab::measures
