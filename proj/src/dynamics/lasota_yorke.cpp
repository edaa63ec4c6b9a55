#include "skewstab/dynamics/lasota_yorke.hpp"

#include "skewstab/measures/norms.hpp"
#include "skewstab/util/error.hpp"

#include <cmath>

namespace skewstab::dynamics {

namespace {

double constant_term(const SkewSystem& sys, double p) {
  return sys.h_hat(p) + 3.0 * sys.q() * sys.alpha() * sys.c_h() * std::pow(sys.A(), sys.xi() - p);
}

}  // namespace

LyRecord ly_check(const SkewSystem& sys, const measures::Disintegration& mu, double p, double eps_f) {
  if (!mu.is_positive()) throw ValidationError("Lasota-Yorke check needs a positive measure");
  const std::size_t n = mu.n_cells();
  LyRecord r;
  r.var_in = measures::var_p(mu, p, sys.A());
  r.density_sup = measures::marginal_density(mu).sup;
  r.lhs = measures::var_p(transfer_step(sys, mu, eps_f), p, sys.A());
  r.rhs = std::pow(sys.lambda(), p) * sys.alpha() * r.var_in + constant_term(sys, p) * r.density_sup;
  r.margin = r.rhs - r.lhs;
  r.slack = r.slack_constant / static_cast<double>(n);
  return r;
}

BaseLyRecord base_ly_check(const SkewSystem& sys, const std::vector<double>& density, int n) {
  if (n < 0) throw ValidationError("iteration count must be nonnegative");
  const std::size_t cells = density.size();
  const double nd = static_cast<double>(cells);
  std::vector<double> masses(cells);
  for (std::size_t i = 0; i < cells; ++i) masses[i] = density[i] / nd;
  const TransferOperator op(sys, cells, 0.0);
  for (int k = 0; k < n; ++k) masses = op.apply_base(masses);
  std::vector<double> out(cells);
  for (std::size_t i = 0; i < cells; ++i) out[i] = masses[i] * nd;
  const auto in = measures::marginal_density(density);
  double l1 = 0.0;
  for (double v : density) l1 += std::fabs(v) / nd;
  const auto [a_t, b_t] = sys.ly_base();
  BaseLyRecord r;
  r.lhs = measures::marginal_density(out).bv;
  r.rhs = a_t * std::pow(sys.lambda(), n) * in.bv + b_t * l1;
  r.margin = r.rhs - r.lhs;
  r.slack = 2.0 / nd;
  return r;
}

double regularity_coefficient(const SkewSystem& sys, double p) {
  const double contraction = std::pow(sys.lambda(), p) * sys.alpha();
  if (!(contraction < 1.0)) throw ValidationError("lambda^p alpha >= 1: no regularity bound");
  return sys.ly_base().second * constant_term(sys, p) / (1.0 - contraction);
}

RegularityRecord regularity_check(const SkewSystem& sys, const measures::Disintegration& f, double p) {
  RegularityRecord r;
  r.var = measures::var_p(f, p, sys.A());
  r.l1 = measures::l1_norm(f);
  r.coefficient = regularity_coefficient(sys, p);
  r.slack = 2.0 / static_cast<double>(f.n_cells());
  r.bound = r.coefficient * r.l1 + r.slack;
  return r;
}

}  // namespace skewstab::dynamics
