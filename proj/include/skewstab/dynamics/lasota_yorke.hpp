#pragma once

#include "skewstab/dynamics/transfer.hpp"

namespace skewstab::dynamics {

struct LyRecord {
  double lhs = 0.0;     // var_p(L mu)
  double rhs = 0.0;     // lambda^p alpha var_p(mu) + (H + 3 q alpha C_h A^{xi-p}) ||mu_x||_inf
  double margin = 0.0;  // rhs - lhs
  double slack = 0.0;   // grid slack c / N
  double slack_constant = 2.0;
  double var_in = 0.0;
  double density_sup = 0.0;
  bool holds() const { return margin >= -slack; }
};

/// Lasota-Yorke inequality for one positive measure.
LyRecord ly_check(const SkewSystem& sys, const measures::Disintegration& mu, double p,
                  double eps_f = kDefaultResolution);

struct BaseLyRecord {
  double lhs = 0.0;  // BV(L_T^n f)
  double rhs = 0.0;  // A_T lambda^n BV(f) + B_T ||f||_1
  double margin = 0.0;
  double slack = 0.0;
  bool holds() const { return margin >= -slack; }
};

/// Base inequality for a piecewise-constant density given by its cell values.
BaseLyRecord base_ly_check(const SkewSystem& sys, const std::vector<double>& density, int n);

/// B_T (H + 3 q alpha C_h A^{xi-p}) / (1 - lambda^p alpha).
double regularity_coefficient(const SkewSystem& sys, double p);

struct RegularityRecord {
  double var = 0.0;
  double l1 = 0.0;
  double coefficient = 0.0;
  double bound = 0.0;  // coefficient * l1 + slack
  double slack = 0.0;
  bool holds() const { return var <= bound; }
};

/// var_p(f) <= coefficient ||f||_1 + 2/N for an (approximately) invariant f.
RegularityRecord regularity_check(const SkewSystem& sys, const measures::Disintegration& f, double p);

}  // namespace skewstab::dynamics
