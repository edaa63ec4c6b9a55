#include "skewstab/dynamics/fiber_map.hpp"

#include "skewstab/util/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace skewstab::dynamics {

namespace {

// Hermite knots (t, value, slope) of the bump profile.
struct Knot {
  double t, v, s;
};
constexpr std::array<Knot, 5> kKnots{{{0.0, 0.0, -3.0},
                                      {1.0 / 3.0, -1.0, 0.0},
                                      {0.5, 0.0, 6.0},
                                      {2.0 / 3.0, 1.0, 0.0},
                                      {1.0, 0.0, -3.0}}};

std::size_t piece(double t) {
  std::size_t i = 0;
  while (i + 2 < kKnots.size() && t >= kKnots[i + 1].t) ++i;
  return i;
}

double frac(double t) { return t - std::floor(t); }

void check_indicator(const std::vector<Interval>& ind) {
  for (const auto& [a, b] : ind)
    if (!(a >= 0.0 && b <= 1.0 && a < b)) throw ValidationError("indicator intervals must satisfy 0 <= a < b <= 1");
}

void check_deformation(double delta, int k) {
  if (k < 1) throw ValidationError("deformation orbit_k must be at least 1");
  if (std::fabs(delta) * k * bump_slope_max() >= 1.0)
    throw ValidationError("deformation is not a diffeomorphism (|delta| k max|g'| >= 1)");
}

double nearest_int_dist(double t) {
  const double f = frac(t);
  return std::min(f, 1.0 - f);
}

}  // namespace

double bump(double t) {
  t = frac(t);
  const std::size_t i = piece(t);
  const Knot& a = kKnots[i];
  const Knot& b = kKnots[i + 1];
  const double h = b.t - a.t;
  const double u = (t - a.t) / h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * a.v + (u3 - 2 * u2 + u) * h * a.s + (-2 * u3 + 3 * u2) * b.v +
         (u3 - u2) * h * b.s;
}

double bump_derivative(double t) {
  t = frac(t);
  const std::size_t i = piece(t);
  const Knot& a = kKnots[i];
  const Knot& b = kKnots[i + 1];
  const double h = b.t - a.t;
  const double u = (t - a.t) / h;
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * a.v + (3 * u2 - 4 * u + 1) * h * a.s + (-6 * u2 + 6 * u) * b.v +
          (3 * u2 - 2 * u) * h * b.s) /
         h;
}

double bump_slope_max() {
  static const double value = [] {
    // |g'| is a quadratic on each piece: endpoints and the vertex suffice
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < kKnots.size(); ++i) {
      const Knot& a = kKnots[i];
      const Knot& b = kKnots[i + 1];
      const double h = b.t - a.t;
      m = std::max({m, std::fabs(a.s), std::fabs(b.s)});
      const double c2 = 6 * a.v + 3 * h * a.s - 6 * b.v + 3 * h * b.s;
      const double c1 = -6 * a.v - 4 * h * a.s + 6 * b.v - 2 * h * b.s;
      if (c2 != 0.0) {
        const double u = -c1 / (2 * c2);
        if (u > 0.0 && u < 1.0) m = std::max(m, std::fabs(bump_derivative(a.t + u * h)));
      }
    }
    return m;
  }();
  return value;
}

FiberMap FiberMap::identity() { return FiberMap{}; }

FiberMap FiberMap::translation(double theta, std::vector<Interval> indicator) {
  check_indicator(indicator);
  FiberMap f;
  f.kind_ = Kind::translation;
  f.theta_ = theta;
  f.indicator_ = std::move(indicator);
  return f;
}

FiberMap FiberMap::deformation(double delta, int k) {
  check_deformation(delta, k);
  FiberMap f;
  f.kind_ = Kind::deformation;
  f.delta_ = delta;
  f.k_ = k;
  return f;
}

FiberMap FiberMap::composite(double theta, std::vector<Interval> indicator, double delta, int k) {
  check_indicator(indicator);
  check_deformation(delta, k);
  FiberMap f;
  f.kind_ = Kind::composite;
  f.theta_ = theta;
  f.indicator_ = std::move(indicator);
  f.delta_ = delta;
  f.k_ = k;
  return f;
}

int FiberMap::key(double x) const {
  if (kind_ != Kind::translation && kind_ != Kind::composite) return 0;
  for (const auto& [a, b] : indicator_)
    if (x >= a && x < b) return 1;
  return 0;
}

std::vector<double> FiberMap::breakpoints() const {
  std::vector<double> out;
  for (const auto& [a, b] : indicator_) {
    if (a > 0.0 && a < 1.0) out.push_back(a);
    if (b > 0.0 && b < 1.0) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double FiberMap::apply(int key, double y) const {
  if ((kind_ == Kind::translation || kind_ == Kind::composite) && key == 1) y += theta_;
  if (kind_ == Kind::deformation || kind_ == Kind::composite) y += delta_ * bump(frac(k_ * y));
  return measures::wrap_unit(y);
}

measures::PointMap FiberMap::point_map(int key) const {
  return [self = *this, key](std::span<double> y) { y[0] = self.apply(key, y[0]); };
}

double FiberMap::alpha() const {
  if (kind_ == Kind::deformation || kind_ == Kind::composite)
    return 1.0 + std::fabs(delta_) * k_ * bump_slope_max();
  return 1.0;
}

double FiberMap::h_hat(double p, double A) const {
  if (kind_ != Kind::translation && kind_ != Kind::composite) return 0.0;
  const double jumps = static_cast<double>(breakpoints().size());
  const double h = 2.0 * jumps * nearest_int_dist(theta_) * std::pow(A, 1.0 - p);
  return kind_ == Kind::composite ? alpha() * h : h;
}

}  // namespace skewstab::dynamics
