#include "skewstab/dynamics/base_map.hpp"

#include "skewstab/util/error.hpp"

#include <cmath>
#include <numbers>

namespace skewstab::dynamics {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Sigma::operator()(double x) const { return x + delta * std::sin(kTwoPi * x) / kTwoPi; }

double Sigma::derivative(double x) const { return 1.0 + delta * std::cos(kTwoPi * x); }

double Sigma::inverse(double y) const {
  if (delta == 0.0) return y;
  // sigma is increasing with sigma(0) = 0, sigma(1) = 1: Newton with a bisection guard
  double lo = 0.0, hi = 1.0, x = y;
  for (int it = 0; it < 100; ++it) {
    const double f = (*this)(x) - y;
    if (f > 0.0) hi = x; else lo = x;
    double next = x - f / derivative(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) < 1e-17) return next;
    x = next;
  }
  return x;
}

BaseMap::BaseMap(int l, Sigma sigma) : l_(l), sigma_(sigma) {
  if (l < 2) throw ValidationError("base map needs at least two branches");
  const double d = std::fabs(sigma.delta);
  if (d >= 1.0) throw ValidationError("sigma is not a diffeomorphism (|delta| >= 1)");
  lambda_ = 1.0 / (l * (1.0 - d));
  if (lambda_ >= 1.0) throw ValidationError("base map is not expanding");
  // d/dy [1 / (l sigma'(sigma^-1((y + b) / l)))] is bounded by 2 pi d / (l^2 (1 - d)^3)
  c_h_ = kTwoPi * d / (static_cast<double>(l) * l * std::pow(1.0 - d, 3));
}

BaseMap BaseMap::linear(int l) { return BaseMap(l, Sigma{}); }

BaseMap BaseMap::linear_precomposed(int l, Sigma sigma) { return BaseMap(l, sigma); }

double BaseMap::apply(double x) const {
  const double v = l_ * sigma_(x);
  return v - std::floor(v);
}

double BaseMap::inverse(int b, double y) const {
  return sigma_.inverse((y + b) / static_cast<double>(l_));
}

double BaseMap::derivative(double x) const { return l_ * sigma_.derivative(x); }

}  // namespace skewstab::dynamics
