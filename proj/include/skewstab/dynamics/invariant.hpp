#pragma once

#include "skewstab/dynamics/transfer.hpp"

#include <optional>

namespace skewstab::dynamics {

struct InvariantResult {
  measures::Disintegration measure = measures::Disintegration::zero(1);
  bool converged = false;
  int iterations = 0;
  double last_increment = 0.0;  // ||A_{n+1} - A_n||_1 at the last step
  double mass_drift = 0.0;      // |mass(A_n) - 1| before any correction
  bool renormalized = false;
};

/// Cesaro averages A_n = (1/n) sum_{k<n} L^k m of the transfer iterates of
/// discretized Lebesgue (atoms per fiber default 4N), stopped once
/// ||A_{n+1} - A_n||_1 < tol or at n_max.
InvariantResult invariant_measure(const SkewSystem& sys, std::size_t n_cells, double tol, int n_max,
                                  double eps_f = kDefaultResolution, long atoms = 0,
                                  const std::optional<measures::Disintegration>& start = std::nullopt);

}  // namespace skewstab::dynamics
