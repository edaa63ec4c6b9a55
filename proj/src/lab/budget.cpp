#include "skewstab/lab/budget.hpp"

#include "skewstab/util/error.hpp"

#include <algorithm>
#include <cmath>

namespace skewstab::lab {

Phi Phi::power_law(double C, double alpha) {
  if (!(C > 0.0) || !(alpha > 0.0)) throw ValidationError("power law needs C > 0 and alpha > 0");
  Phi p;
  p.c_ = C;
  p.alpha_ = alpha;
  return p;
}

Phi Phi::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw ValidationError("tabulated phi needs at least two points");
  std::sort(table.begin(), table.end());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i].first > 0.0) || !(table[i].second > 0.0)) throw ValidationError("tabulated phi must be positive");
    if (i > 0 && !(table[i].first > table[i - 1].first && table[i].second < table[i - 1].second))
      throw ValidationError("tabulated phi must be strictly decreasing");
  }
  Phi p;
  p.table_ = std::move(table);
  return p;
}

double Phi::lo() const { return is_power_law() ? 1.0 : table_.front().first; }
double Phi::hi() const { return is_power_law() ? kPsiUpper : table_.back().first; }

double Phi::operator()(double x) const {
  if (is_power_law()) return c_ * std::pow(x, -alpha_);
  if (x < lo() || x > hi()) throw ValidationError("x outside the tabulated range of phi");
  auto it = std::upper_bound(table_.begin(), table_.end(), std::make_pair(x, 0.0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == table_.end()) return table_.back().second;
  if (it == table_.begin()) return table_.front().second;
  const auto& [x1, y1] = *(it - 1);
  const auto& [x2, y2] = *it;
  const double t = std::log(x / x1) / std::log(x2 / x1);
  return std::exp(std::log(y1) + t * (std::log(y2) - std::log(y1)));
}

double psi_inverse_bisection(const Phi& phi, double y) {
  double lo = phi.lo(), hi = phi.hi();
  if (!(y > 0.0) || y > phi.psi(lo) || y < phi.psi(hi)) throw ValidationError("y outside the range of psi");
  // psi decreases; bisect in log x
  for (int it = 0; it < 400 && hi - lo > 1e-12 * lo; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (phi.psi(mid) > y) lo = mid; else hi = mid;
  }
  return std::sqrt(lo * hi);
}

double psi_inverse(const Phi& phi, double y) {
  if (!phi.is_power_law()) return psi_inverse_bisection(phi, y);
  if (!(y > 0.0)) throw ValidationError("y outside the range of psi");
  const double x = std::pow(phi.C() / y, 1.0 / (phi.alpha() + 1.0));
  if (x < 1.0 * (1.0 - 1e-12) || x > kPsiUpper) throw ValidationError("y outside the range of psi");
  return std::max(1.0, x);
}

double stability_bound(const StabilityBudget& b) {
  if (b.epsilon < 0.0 || b.M_tilde < 0.0 || b.C_tilde < 0.0) throw ValidationError("budget constants must be >= 0");
  if (b.epsilon == 0.0) return 0.0;
  return 2.0 * b.M_tilde * b.C_tilde * b.epsilon * (psi_inverse(b.phi, b.epsilon * b.C_tilde / 2.0) + 1.0);
}

LineFit bound_scaling_fit(const StabilityBudget& b, int k_lo, int k_hi) {
  if (k_hi - k_lo < 2) throw ValidationError("scaling fit needs at least three points");
  std::vector<double> x, y;
  const int start = k_lo + (k_hi - k_lo + 1) / 2;
  for (int k = start; k <= k_hi; ++k) {
    StabilityBudget c = b;
    c.epsilon = std::ldexp(1.0, -k);
    x.push_back(c.epsilon);
    y.push_back(stability_bound(c));
  }
  return fit_loglog(x, y);
}

double holder_exponent(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  return 1.0 - 1.0 / (alpha + 1.0);
}

double decay_rate_formula(double gamma, const ObservableClass& cls) {
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  if (cls.lipschitz) return 1.0 / (2.0 * gamma);
  return std::max({cls.p, cls.q, cls.p + cls.q - cls.d}) / (2.0 * gamma);
}

}  // namespace skewstab::lab
