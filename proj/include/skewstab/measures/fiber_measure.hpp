#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace skewstab::measures {

/// Atoms with |weight| below this are dropped on construction.
inline constexpr double kWeightFloor = 1e-15;

/// Wraps a coordinate into [0, 1).
double wrap_unit(double y);

/// Circle distance min(|a - b|, 1 - |a - b|) for a, b in [0, 1).
double circle_distance(double a, double b);

/// Sup over coordinates of the circle distance; the metric on T^d.
double torus_distance(std::span<const double> a, std::span<const double> b);

/// A finite signed atomic measure on the d-torus.
///
/// Canonical form: positions wrapped into [0,1)^d and sorted lexicographically,
/// coincident positions merged, atoms with |w| < kWeightFloor removed. The
/// stored weights are the measure; nothing is renormalized.
class FiberMeasure {
 public:
  FiberMeasure() = default;
  explicit FiberMeasure(int dimension);
  FiberMeasure(int dimension, std::vector<double> coords, std::vector<double> weights);

  static FiberMeasure dirac(double y, double weight = 1.0);
  /// k atoms at i/k, total mass `mass`.
  static FiberMeasure uniform_grid(int k, double mass = 1.0);

  int dimension() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }

  std::span<const double> position(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  /// Shortcut for d = 1.
  double x(std::size_t i) const { return coords_[i * static_cast<std::size_t>(dim_)]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<double>& weights() const { return weights_; }

  double mass() const;
  double total_variation() const;
  bool is_positive() const;

  FiberMeasure scaled(double c) const;

  bool operator==(const FiberMeasure& other) const = default;

 private:
  void normalize();

  int dim_ = 1;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

/// a * ca + b * cb, atomwise.
FiberMeasure combine(const FiberMeasure& a, double ca, const FiberMeasure& b, double cb);

/// Sum of weighted measures; all must share one dimension.
FiberMeasure weighted_sum(std::span<const FiberMeasure* const> parts, std::span<const double> coeffs);

/// A self-map of T^d acting in place on one position.
using PointMap = std::function<void(std::span<double>)>;

/// Image measure: each atom (y, w) goes to (f(y) mod 1, w); coincident images merge.
FiberMeasure pushforward_fiber(const FiberMeasure& mu, const PointMap& f);

/// Number of grid points per coordinate for resolution eps: 1/eps when that is an
/// integer (to 1e-9), otherwise ceil(1/eps) so the spacing never exceeds eps.
long grid_count(double eps);

/// Bins atoms to the nearest point of the uniform grid of spacing <= eps.
/// Mass is preserved exactly up to summation order; W1 moves by at most eps * |mu|_TV.
FiberMeasure coarsen(const FiberMeasure& mu, double eps);

}  // namespace skewstab::measures
