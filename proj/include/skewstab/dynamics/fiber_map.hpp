#pragma once

#include "skewstab/measures/fiber_measure.hpp"

#include <utility>
#include <vector>

namespace skewstab::dynamics {

using Interval = std::pair<double, double>;

/// Periodic C^1 profile on [0, 1): zeros at 0 (attracting, g' < 0) and 1/2
/// (repelling, g' > 0), negative on (0, 1/2), positive on (1/2, 1).
double bump(double t);
double bump_derivative(double t);
/// max |bump'|.
double bump_slope_max();

/// Fiber maps y -> G(x, y) on T^1 that depend on x only through an indicator:
///   translation  y + theta 1_I(x)
///   deformation  D(y) = y + delta bump(frac(k y))
///   composite    D(y + theta 1_I(x))
class FiberMap {
 public:
  enum class Kind { identity, translation, deformation, composite };

  static FiberMap identity();
  static FiberMap translation(double theta, std::vector<Interval> indicator = {{0.5, 1.0}});
  static FiberMap deformation(double delta, int k);
  static FiberMap composite(double theta, std::vector<Interval> indicator, double delta, int k);

  Kind kind() const { return kind_; }
  double theta() const { return theta_; }
  const std::vector<Interval>& indicator() const { return indicator_; }
  double delta() const { return delta_; }
  int orbit_k() const { return k_; }

  /// Which branch of the family acts over base point x (1 inside the indicator).
  int key(double x) const;
  /// Indicator endpoints strictly inside (0, 1).
  std::vector<double> breakpoints() const;

  double apply(int key, double y) const;
  measures::PointMap point_map(int key) const;

  /// Lipschitz constant in y.
  double alpha() const;
  /// Variation constant of the family: 2 J ||theta|| A^{1-p}, J interior indicator
  /// endpoints, scaled by alpha for composites.
  double h_hat(double p, double A) const;

 private:
  Kind kind_ = Kind::identity;
  double theta_ = 0.0;
  std::vector<Interval> indicator_;
  double delta_ = 0.0;
  int k_ = 1;
};

}  // namespace skewstab::dynamics
