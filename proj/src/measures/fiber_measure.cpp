#include "skewstab/measures/fiber_measure.hpp"

#include "skewstab/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace skewstab::measures {

double wrap_unit(double y) {
  double r = y - std::floor(y);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_distance(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

double torus_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, circle_distance(a[k], b[k]));
  return d;
}

FiberMeasure::FiberMeasure(int dimension) : dim_(dimension) {
  if (dimension < 1) throw ValidationError("fiber dimension must be >= 1");
}

FiberMeasure::FiberMeasure(int dimension, std::vector<double> coords, std::vector<double> weights)
    : dim_(dimension), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (dimension < 1) throw ValidationError("fiber dimension must be >= 1");
  if (coords_.size() != weights_.size() * static_cast<std::size_t>(dim_))
    throw ValidationError("fiber coordinates do not match atom count");
  normalize();
}

FiberMeasure FiberMeasure::dirac(double y, double weight) {
  return FiberMeasure(1, {y}, {weight});
}

FiberMeasure FiberMeasure::uniform_grid(int k, double mass) {
  if (k < 1) throw ValidationError("uniform grid needs k >= 1");
  std::vector<double> c(static_cast<std::size_t>(k));
  std::vector<double> w(static_cast<std::size_t>(k), mass / k);
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = static_cast<double>(i) / k;
  return FiberMeasure(1, std::move(c), std::move(w));
}

void FiberMeasure::normalize() {
  for (double& c : coords_) {
    if (!std::isfinite(c)) throw ValidationError("non-finite atom position");
    c = wrap_unit(c);
  }
  for (double w : weights_)
    if (!std::isfinite(w)) throw ValidationError("non-finite atom weight");

  const std::size_t n = weights_.size();
  const std::size_t d = static_cast<std::size_t>(dim_);
  std::vector<double> nc;
  std::vector<double> nw;
  nc.reserve(coords_.size());
  nw.reserve(n);

  if (d == 1) {
    std::vector<std::pair<double, double>> atoms(n);
    for (std::size_t i = 0; i < n; ++i) atoms[i] = {coords_[i], weights_[i]};
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < n;) {
      double w = 0.0;
      std::size_t j = i;
      for (; j < n && atoms[j].first == atoms[i].first; ++j) w += atoms[j].second;
      if (std::fabs(w) >= kWeightFloor) {
        nc.push_back(atoms[i].first);
        nw.push_back(w);
      }
      i = j;
    }
  } else {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(coords_.begin() + a * d, coords_.begin() + (a + 1) * d,
                                          coords_.begin() + b * d, coords_.begin() + (b + 1) * d);
    };
    auto same = [&](std::size_t a, std::size_t b) {
      return std::equal(coords_.begin() + a * d, coords_.begin() + (a + 1) * d,
                        coords_.begin() + b * d);
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 0; i < n;) {
      double w = 0.0;
      std::size_t j = i;
      for (; j < n && same(order[j], order[i]); ++j) w += weights_[order[j]];
      if (std::fabs(w) >= kWeightFloor) {
        nc.insert(nc.end(), coords_.begin() + order[i] * d, coords_.begin() + (order[i] + 1) * d);
        nw.push_back(w);
      }
      i = j;
    }
  }
  coords_ = std::move(nc);
  weights_ = std::move(nw);
}

double FiberMeasure::mass() const {
  double m = 0.0;
  for (double w : weights_) m += w;
  return m;
}

double FiberMeasure::total_variation() const {
  double m = 0.0;
  for (double w : weights_) m += std::fabs(w);
  return m;
}

bool FiberMeasure::is_positive() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w >= 0.0; });
}

FiberMeasure FiberMeasure::scaled(double c) const {
  std::vector<double> w = weights_;
  for (double& v : w) v *= c;
  return FiberMeasure(dim_, coords_, std::move(w));
}

FiberMeasure combine(const FiberMeasure& a, double ca, const FiberMeasure& b, double cb) {
  const FiberMeasure* parts[] = {&a, &b};
  const double coeffs[] = {ca, cb};
  return weighted_sum(parts, coeffs);
}

FiberMeasure weighted_sum(std::span<const FiberMeasure* const> parts, std::span<const double> coeffs) {
  if (parts.empty()) return FiberMeasure(1);
  const int dim = parts.front()->dimension();
  std::size_t total = 0;
  for (const auto* p : parts) {
    if (p->dimension() != dim) throw ValidationError("fiber dimensions differ");
    total += p->size();
  }
  std::vector<double> c;
  std::vector<double> w;
  c.reserve(total * static_cast<std::size_t>(dim));
  w.reserve(total);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    c.insert(c.end(), parts[k]->coords().begin(), parts[k]->coords().end());
    for (double v : parts[k]->weights()) w.push_back(coeffs[k] * v);
  }
  return FiberMeasure(dim, std::move(c), std::move(w));
}

FiberMeasure pushforward_fiber(const FiberMeasure& mu, const PointMap& f) {
  std::vector<double> c = mu.coords();
  const std::size_t d = static_cast<std::size_t>(mu.dimension());
  for (std::size_t i = 0; i < mu.size(); ++i) f(std::span<double>(c.data() + i * d, d));
  return FiberMeasure(mu.dimension(), std::move(c), mu.weights());
}

long grid_count(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("coarsening resolution must lie in (0, 1)");
  const double inv = 1.0 / eps;
  const double r = std::round(inv);
  if (std::fabs(inv - r) <= 1e-9 * inv) return static_cast<long>(r);
  return static_cast<long>(std::ceil(inv));
}

FiberMeasure coarsen(const FiberMeasure& mu, double eps) {
  const long m = grid_count(eps);
  const double md = static_cast<double>(m);
  std::vector<double> c = mu.coords();
  for (double& y : c) {
    long q = std::lround(y * md);
    if (q >= m) q -= m;
    y = static_cast<double>(q) / md;
  }
  return FiberMeasure(mu.dimension(), std::move(c), mu.weights());
}

}  // namespace skewstab::measures
