#pragma once

#include "skewstab/util/fit.hpp"

#include <utility>
#include <vector>

namespace skewstab::lab {

/// Decreasing rate function: C x^-alpha, or a table of (x, phi(x)) interpolated log-log.
class Phi {
 public:
  static Phi power_law(double C, double alpha);
  static Phi tabulated(std::vector<std::pair<double, double>> table);

  bool is_power_law() const { return table_.empty(); }
  double C() const { return c_; }
  double alpha() const { return alpha_; }
  const std::vector<std::pair<double, double>>& table() const { return table_; }
  double lo() const;
  double hi() const;

  double operator()(double x) const;
  /// psi(x) = phi(x) / x.
  double psi(double x) const { return (*this)(x) / x; }

 private:
  double c_ = 1.0;
  double alpha_ = 1.0;
  std::vector<std::pair<double, double>> table_;
};

inline constexpr double kPsiUpper = 1152921504606846976.0;  // 2^60

/// x with psi(x) = y; closed form for power laws, bisection otherwise.
double psi_inverse(const Phi& phi, double y);
/// Bisection on [1, 2^60] (or the table range) to relative tolerance 1e-9.
double psi_inverse_bisection(const Phi& phi, double y);

struct StabilityBudget {
  Phi phi = Phi::power_law(1.0, 1.0);
  double M_tilde = 1.0;
  double C_tilde = 1.0;
  double epsilon = 0.0;
};

/// 2 M C eps (psi^-1(eps C / 2) + 1); zero when eps = 0.
double stability_bound(const StabilityBudget& b);

/// Log-log fit of eps -> stability_bound over eps = 2^-k, k = k_lo..k_hi, using the
/// tail half (small eps) of the sweep.
LineFit bound_scaling_fit(const StabilityBudget& b, int k_lo = 4, int k_hi = 20);

/// 1 - 1/(alpha + 1).
double holder_exponent(double alpha);

struct ObservableClass {
  bool lipschitz = true;
  double p = 1.0, q = 1.0, d = 1.0;  // Hoelder classes C^p against C^q on T^d
};

/// 1/(2 gamma) for Lipschitz observables, max(p, q, p + q - d)/(2 gamma) otherwise.
double decay_rate_formula(double gamma, const ObservableClass& cls);

}  // namespace skewstab::lab
