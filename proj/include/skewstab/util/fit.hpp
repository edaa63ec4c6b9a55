#pragma once

#include <span>
#include <vector>

namespace skewstab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::vector<double> residuals;
};

/// Ordinary least squares y = slope * x + intercept. Needs at least two points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit of log y against log x over the points with x > 0 and y > 0.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace skewstab
