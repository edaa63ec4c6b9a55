#include "skewstab/lab/decay.hpp"

#include "skewstab/measures/norms.hpp"
#include "skewstab/util/error.hpp"

#include <cmath>

namespace skewstab::lab {

bool DecaySeries::nonincreasing_after(int burn_in, double rel_tol) const {
  for (std::size_t k = static_cast<std::size_t>(std::max(0, burn_in)); k + 1 < norm.size(); ++k)
    if (norm[k + 1] > norm[k] * (1.0 + rel_tol)) return false;
  return true;
}

DecaySeries equilibrium_decay(const dynamics::SkewSystem& sys, const measures::Disintegration& g, int n_max,
                              double eps_f, std::string description) {
  if (n_max < 0) throw ValidationError("n_max must be nonnegative");
  if (std::fabs(g.total_mass()) > 1e-12) throw ValidationError("not in V_s: total mass of g is nonzero");
  const dynamics::TransferOperator op(sys, g.n_cells(), eps_f);
  DecaySeries s;
  s.description = std::move(description);
  measures::Disintegration cur = g;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) cur = op.apply(cur);
    s.n.push_back(n);
    s.norm.push_back(measures::l1_norm(cur));
  }
  std::vector<double> x, y;
  for (int n = std::max(1, (n_max + 1) / 2); n <= n_max; ++n) {
    if (s.norm[static_cast<std::size_t>(n)] > 0.0) {
      x.push_back(n);
      y.push_back(s.norm[static_cast<std::size_t>(n)]);
    }
  }
  if (x.size() >= 2) {
    s.fit = fit_loglog(x, y);
    s.fitted = true;
  }
  return s;
}

}  // namespace skewstab::lab
