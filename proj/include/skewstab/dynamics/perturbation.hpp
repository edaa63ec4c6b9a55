#pragma once

#include "skewstab/dynamics/transfer.hpp"

#include <cstdint>
#include <vector>

namespace skewstab::dynamics {

struct PerturbationSpec {
  SkewSystem reference;
  SkewSystem perturbed;
  double declared_delta = 0.0;
  Sigma sigma;                          // base reparametrization
  std::vector<Interval> base_exception;   // complement of A_1
  double fiber_displacement = 0.0;        // sup |G_0 - G_delta|
  std::vector<Interval> fiber_exception;  // complement of A_2
};

/// Total length of a union of intervals in [0, 1] (overlaps counted once).
double interval_measure(std::vector<Interval> set);

/// Problems with the declared perturbation data (empty when consistent).
std::vector<std::string> diagnose(const PerturbationSpec& spec);

struct OperatorDistance {
  double value = 0.0;
  std::size_t battery_size = 0;
  std::uint64_t seed = 0;
  std::size_t argmax = 0;  // battery member attaining the max (0 is the fiber dipole)
  double max_pbv = 0.0;
};

/// max over a seeded battery f of ||L_ref f - L_pert f||_1 with pbv(f) = 1 (p = 1).
/// Member 0 is the normalized dipole m (x) (delta_0 - delta_1/2); the rest are
/// random positive block measures.
OperatorDistance operator_distance(const PerturbationSpec& spec, std::size_t n_cells, std::size_t battery_size,
                                   std::uint64_t seed, double eps_f = 0.0);

/// max(||sigma - Id||_inf, ||1/sigma' - 1||_inf, m(A_1^c)) on a dense grid.
double skorokhod_bound(const PerturbationSpec& spec, std::size_t grid = 1 << 16);

}  // namespace skewstab::dynamics
