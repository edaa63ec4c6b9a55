#pragma once

#include "skewstab/measures/fiber_measure.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace skewstab::measures {

using FiberPtr = std::shared_ptr<const FiberMeasure>;

/// Distinct fibers of a disintegration: cells with equal fibers share a class.
struct FiberClasses {
  std::vector<FiberPtr> reps;
  std::vector<std::size_t> class_of;  // per cell
  std::vector<std::size_t> count;     // cells per class
};

/// A signed measure on [0,1) x T^d over a uniform grid of N base cells.
///
/// fibers[i] is the restriction to cell_i x T^d, so its mass is the measure of the
/// cell and N * fibers[i] is the per-length leaf measure. Fibers are immutable and
/// shared between cells when equal, which keeps x-constant measures cheap.
class Disintegration {
 public:
  Disintegration(std::vector<FiberPtr> fibers);

  static Disintegration zero(std::size_t n_cells, int dimension = 1);
  /// m (x) nu: every cell carries nu / N.
  static Disintegration product(std::size_t n_cells, const FiberMeasure& nu);
  /// Lebesgue probability with `atoms` equally spaced fiber atoms per cell.
  static Disintegration lebesgue(std::size_t n_cells, long atoms);
  /// Unit point mass at (x0, y0), placed in the cell containing x0.
  static Disintegration point_mass(std::size_t n_cells, double x0, double y0);
  /// Builds from owned fibers, sharing storage between equal ones.
  static Disintegration from_fibers(std::vector<FiberMeasure> fibers);

  std::size_t n_cells() const { return fibers_.size(); }
  int dimension() const { return fibers_.front()->dimension(); }
  const FiberMeasure& fiber(std::size_t i) const { return *fibers_[i]; }
  const FiberPtr& fiber_ptr(std::size_t i) const { return fibers_[i]; }

  double total_mass() const;
  bool is_positive() const;
  std::size_t atom_count() const;

  FiberClasses classes() const;

  Disintegration scaled(double c) const;

 private:
  std::vector<FiberPtr> fibers_;
};

/// ca * a + cb * b, cellwise. Grids must agree.
Disintegration combine(const Disintegration& a, double ca, const Disintegration& b, double cb);

inline Disintegration operator-(const Disintegration& a, const Disintegration& b) {
  return combine(a, 1.0, b, -1.0);
}

std::size_t fiber_hash(const FiberMeasure& mu);

}  // namespace skewstab::measures
