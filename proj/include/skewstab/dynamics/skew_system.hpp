#pragma once

#include "skewstab/dynamics/base_map.hpp"
#include "skewstab/dynamics/fiber_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skewstab::dynamics {

/// Constants entering the Lasota-Yorke estimates. Unset entries fall back to the
/// values derived from the built-in base and fiber maps.
struct DeclaredConstants {
  std::optional<double> alpha;
  std::optional<double> h_hat;
  double A = 0.5;
  std::optional<double> xi;
  std::optional<std::pair<double, double>> ly_base;  // (A_T, B_T)
};

/// F(x, y) = (T(x), G(x, y)).
struct SkewSystem {
  BaseMap base = BaseMap::linear(2);
  FiberMap fiber = FiberMap::identity();
  DeclaredConstants declared;

  int q() const { return base.branch_count(); }
  double lambda() const { return base.lambda(); }
  double c_h() const { return base.holder_constant(); }
  double xi() const { return declared.xi.value_or(base.xi()); }
  double alpha() const { return declared.alpha.value_or(fiber.alpha()); }
  double A() const { return declared.A; }
  double h_hat(double p) const { return declared.h_hat.value_or(fiber.h_hat(p, declared.A)); }
  /// (A_T, B_T); (1, 1) for full linear branches.
  std::pair<double, double> ly_base() const;

  /// lambda^xi alpha.
  double domination() const;
};

/// Doubling base with y -> y + theta on x in [1/2, 1).
SkewSystem rotation_extension(double theta);

/// Problems with the declared data for grid size N (empty when consistent).
std::vector<std::string> diagnose(const SkewSystem& sys, std::size_t n_cells, bool require_domination = true);

}  // namespace skewstab::dynamics
