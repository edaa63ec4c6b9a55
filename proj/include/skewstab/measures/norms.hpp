#pragma once

#include "skewstab/measures/disintegration.hpp"

#include <cstddef>
#include <vector>

namespace skewstab::measures {

inline constexpr double kDefaultRadiusCap = 0.5;

struct NormReport {
  double l1 = 0.0;
  double var_p = 0.0;
  double pbv = 0.0;  // l1 + var_p
  double p = 1.0;
  double A = kDefaultRadiusCap;
};

/// Sum over cells of the fiber W1 norms.
double l1_norm(const Disintegration& mu);

/// Max over cells a, b within distance r of cell i of W1(N fibers[a] - N fibers[b]).
/// r is read on the grid as j = floor(rN); j < 1 is an error.
double oscillation(const Disintegration& mu, std::size_t i, double r);

/// max over radii j/N, 1 <= j <= ceil(AN), of (1/N) sum_i (j/N)^-p osc(mu, i, j/N).
double var_p(const Disintegration& mu, double p, double A = kDefaultRadiusCap);

/// The full curve r -> var_p(mu, r) on grid radii; entry j-1 is radius j/N.
std::vector<double> var_p_profile(const Disintegration& mu, double p, double A = kDefaultRadiusCap);

NormReport pbv_norm(const Disintegration& mu, double p, double A = kDefaultRadiusCap);

/// Piecewise-constant base marginal x -> N mass(fibers[i]).
struct MarginalDensity {
  std::vector<double> values;
  double sup = 0.0;
  double bv = 0.0;        // sum of absolute jumps between neighbouring cells
  double integral = 0.0;  // sum(values) / N
};

MarginalDensity marginal_density(const Disintegration& mu);
MarginalDensity marginal_density(std::vector<double> values);

/// Averages fibers over blocks of N/m consecutive cells (epsilon = 1/m). m must divide N.
Disintegration piecewise_constant_approx(const Disintegration& mu, std::size_t m);

}  // namespace skewstab::measures
