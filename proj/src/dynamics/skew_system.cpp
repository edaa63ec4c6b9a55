#include "skewstab/dynamics/skew_system.hpp"

#include "skewstab/util/error.hpp"

#include <cmath>

namespace skewstab::dynamics {

std::pair<double, double> SkewSystem::ly_base() const {
  if (declared.ly_base) return *declared.ly_base;
  if (base.is_linear()) return {1.0, 1.0};
  throw ValidationError("non-linear base maps must declare ly_base = [A_T, B_T]");
}

double SkewSystem::domination() const { return std::pow(lambda(), xi()) * alpha(); }

SkewSystem rotation_extension(double theta) {
  SkewSystem s;
  s.base = BaseMap::linear(2);
  s.fiber = FiberMap::translation(theta, {{0.5, 1.0}});
  return s;
}

std::vector<std::string> diagnose(const SkewSystem& sys, std::size_t n_cells, bool require_domination) {
  std::vector<std::string> out;
  if (require_domination && !(sys.domination() < 1.0))
    out.push_back("Sk2 domination violated: lambda^xi * alpha = " + std::to_string(sys.domination()) + " >= 1");
  auto is_power = [](std::size_t n, std::size_t l) {
    while (n > 1 && n % l == 0) n /= l;
    return n == 1;
  };
  // cells map onto whole cells under every iterate only when N = l^m
  if (n_cells != 0 && sys.base.is_linear() && !is_power(n_cells, static_cast<std::size_t>(sys.q())))
    out.push_back("N must be multiple of branch count power: N = " + std::to_string(n_cells) +
                  ", branches = " + std::to_string(sys.q()));
  if (sys.declared.alpha && *sys.declared.alpha < sys.fiber.alpha() - 1e-12)
    out.push_back("declared alpha is below the Lipschitz constant of the fiber map");
  if (!(sys.declared.A > 0.0 && sys.declared.A <= 1.0)) out.push_back("A must lie in (0, 1]");
  if (sys.declared.xi && !(*sys.declared.xi > 0.0 && *sys.declared.xi <= 1.0)) out.push_back("xi must lie in (0, 1]");
  if (!sys.base.is_linear() && !sys.declared.ly_base)
    out.push_back("non-linear base maps must declare ly_base = [A_T, B_T]");
  return out;
}

}  // namespace skewstab::dynamics
