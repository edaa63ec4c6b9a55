#pragma once

#include "skewstab/arithmetic/diophantine.hpp"
#include "skewstab/dynamics/invariant.hpp"
#include "skewstab/dynamics/perturbation.hpp"
#include "skewstab/lab/sweep.hpp"

#include <cstddef>
#include <vector>

namespace skewstab::lab {

inline constexpr std::size_t kDefaultAtomBudget = std::size_t{1} << 20;

/// The rotation-to-periodic-orbit construction: reference y -> y + theta 1_I(x),
/// perturbed y -> D(y + (theta + delta_j) 1_I(x)) over the doubling map, I = [1/2, 1),
/// where D contracts onto the period-k_j orbit of the rational rotation.
struct PropBahh {
  dynamics::PerturbationSpec spec;
  arithmetic::Approximant approximant;
  long k = 0;
  double deformation_scale = 0.0;  // alpha of D is 1 + scale
  double gamma_prime = 2.5;
  double distance = 0.0;         // ||m (x) Leb - mu_j||_1 = 1/(4k)
  double lower_bound_delta = 0.0;  // (1/9) |delta_j|^{1/(gamma' - 1)}
  double lower_bound_k = 0.0;      // 1/(9k)

  /// m (x) (1/k) sum_i delta_{i/k} on an N-cell grid.
  measures::Disintegration orbit_measure(std::size_t n_cells) const;
  /// The repelling counterpart, shifted by 1/(2k).
  measures::Disintegration repeller_measure(std::size_t n_cells) const;
  SweepMember sweep_member() const;
};

PropBahh prop_bahh_system(const arithmetic::AngleSpec& theta, int j, double deformation_scale,
                          double gamma_prime = 2.5, std::size_t atom_budget = kDefaultAtomBudget);

struct PipelineResult {
  dynamics::InvariantResult invariant;
  double distance_to_orbit = 0.0;
  double distance_to_repeller = 0.0;
};

/// invariant_measure of the perturbed system from Lebesgue, compared with mu_j.
/// Needs 4N (the fiber grid) to be a multiple of k.
PipelineResult prop_bahh_pipeline(const PropBahh& pb, std::size_t n_cells, double tol, int n_max);

struct Prop30Term {
  int index = 0;          // i, frequency 2^{2^{2i}}
  Rational rational_part;  // weighted exact part of the term
  double value = 0.0;      // full term
  bool exactly_zero = false;
};

struct Prop30Value {
  std::vector<Prop30Term> terms;
  Rational rational_part;
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the omitted terms i > terms
};

/// Integral of psi(x, y) = sum_{i=1}^{terms} 2^{-2^{2i+1}} cos(2 pi 2^{2^{2i}} y)
/// against mu, with every phase reduced mod 1 in exact arithmetic.
Prop30Value prop30_observable_average(int terms, const measures::Disintegration& mu);

}  // namespace skewstab::lab
