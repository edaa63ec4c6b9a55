#pragma once

#include "skewstab/dynamics/transfer.hpp"
#include "skewstab/util/fit.hpp"

#include <string>
#include <vector>

namespace skewstab::lab {

struct DecaySeries {
  std::vector<int> n;
  std::vector<double> norm;  // ||L^n g||_1
  std::string description;
  LineFit fit;  // log norm against log n on the tail half (n >= 1, norm > 0)
  bool fitted = false;

  /// norm[k+1] <= norm[k] (1 + rel_tol) for every k >= burn_in.
  bool nonincreasing_after(int burn_in, double rel_tol = 1e-12) const;
};

/// ||L^n g||_1 for n = 0..n_max. g must have zero total mass (to 1e-12).
DecaySeries equilibrium_decay(const dynamics::SkewSystem& sys, const measures::Disintegration& g, int n_max,
                              double eps_f = dynamics::kDefaultResolution, std::string description = {});

}  // namespace skewstab::lab
