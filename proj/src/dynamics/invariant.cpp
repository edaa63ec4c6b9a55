#include "skewstab/dynamics/invariant.hpp"

#include "skewstab/measures/norms.hpp"
#include "skewstab/util/error.hpp"

#include <cmath>

namespace skewstab::dynamics {

using measures::Disintegration;

InvariantResult invariant_measure(const SkewSystem& sys, std::size_t n_cells, double tol, int n_max,
                                  double eps_f, long atoms, const std::optional<Disintegration>& start) {
  if (!(sys.domination() < 1.0)) throw ValidationError("Sk2 domination violated: lambda^xi * alpha >= 1");
  if (n_max < 1) throw ValidationError("n_max must be positive");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  const TransferOperator op(sys, n_cells, eps_f);
  if (atoms <= 0) atoms = 4 * static_cast<long>(n_cells);
  Disintegration cur = start ? *start : Disintegration::lebesgue(n_cells, atoms);
  const double mass0 = cur.total_mass();
  Disintegration avg = cur;

  InvariantResult res{avg, false, 0, 0.0, 0.0, false};
  for (int n = 1; n <= n_max; ++n) {
    cur = op.apply(cur);
    const double w = 1.0 / (n + 1);
    res.last_increment = measures::l1_norm(cur - avg) * w;
    avg = measures::combine(avg, 1.0 - w, cur, w);
    res.iterations = n;
    if (res.last_increment < tol) {
      res.converged = true;
      break;
    }
  }
  res.mass_drift = std::fabs(avg.total_mass() - mass0);
  if (res.mass_drift > 1e-9) {
    avg = avg.scaled(mass0 / avg.total_mass());
    res.renormalized = true;
  }
  res.measure = avg;
  return res;
}

}  // namespace skewstab::dynamics
