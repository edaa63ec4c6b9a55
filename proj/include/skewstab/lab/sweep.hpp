#pragma once

#include "skewstab/dynamics/config.hpp"
#include "skewstab/util/fit.hpp"

#include <optional>
#include <vector>

namespace skewstab::lab {

struct SweepMember {
  dynamics::PerturbationSpec spec;
  /// Known ||f_delta - f_0||_1; the invariant measure is not computed when set.
  std::optional<double> closed_form_distance;
  /// Known lower bound for the distance (reported in the table).
  std::optional<double> lower_bound;
};

struct SweepRow {
  double delta = 0.0;
  double distance = 0.0;
  std::optional<double> lower_bound;
  double upper_bound_fit = 0.0;  // K delta^{1/(8 gamma + 1)}
  bool converged = true;
  bool closed_form = false;
  int iterations = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;  // delta strictly decreasing
  double gamma = 1.0;
  double exponent = 0.0;  // 1 / (8 gamma + 1)
  double K = 0.0;         // smallest constant with distance <= K delta^exponent on every fitted row
  double beta = 0.0;      // fitted log-log slope of distance vs delta
  LineFit fit;
  bool fitted = false;
  bool beta_at_least_exponent = false;
  bool all_converged = true;
};

/// Invariant measures of every perturbed system against the shared reference.
SweepTable stability_sweep(const std::vector<SweepMember>& family, double gamma, const dynamics::Numerics& num);

}  // namespace skewstab::lab
