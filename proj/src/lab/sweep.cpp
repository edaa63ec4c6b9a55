#include "skewstab/lab/sweep.hpp"

#include "skewstab/dynamics/invariant.hpp"
#include "skewstab/measures/norms.hpp"
#include "skewstab/util/error.hpp"
#include "skewstab/util/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace skewstab::lab {

SweepTable stability_sweep(const std::vector<SweepMember>& family, double gamma, const dynamics::Numerics& num) {
  if (family.empty()) throw ValidationError("sweep family is empty");
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(family[a].spec.declared_delta) > std::fabs(family[b].spec.declared_delta);
  });
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (std::fabs(family[order[i]].spec.declared_delta) == std::fabs(family[order[i + 1]].spec.declared_delta))
      throw ValidationError("sweep deltas must be distinct");

  const bool need_pipeline = std::any_of(family.begin(), family.end(), [](const SweepMember& m) {
    return !m.closed_form_distance;
  });
  std::optional<measures::Disintegration> f0;
  bool ref_converged = true;
  if (need_pipeline) {
    auto r = dynamics::invariant_measure(family.front().spec.reference, num.n_cells, num.tol, num.n_max, num.eps_f,
                                         num.atoms_per_fiber);
    f0 = r.measure;
    ref_converged = r.converged;
  }

  SweepTable t;
  t.gamma = gamma;
  t.exponent = 1.0 / (8.0 * gamma + 1.0);
  t.rows.resize(family.size());
  parallel_for(order.size(), [&](std::size_t i) {
    const SweepMember& m = family[order[i]];
    SweepRow& row = t.rows[i];
    row.delta = std::fabs(m.spec.declared_delta);
    row.lower_bound = m.lower_bound;
    if (m.closed_form_distance) {
      row.distance = *m.closed_form_distance;
      row.closed_form = true;
      return;
    }
    auto r = dynamics::invariant_measure(m.spec.perturbed, num.n_cells, num.tol, num.n_max, num.eps_f,
                                         num.atoms_per_fiber);
    row.converged = r.converged && ref_converged;
    row.iterations = r.iterations;
    row.distance = measures::l1_norm(r.measure - *f0);
  });

  std::vector<double> x, y;
  for (const SweepRow& row : t.rows) {
    t.all_converged = t.all_converged && row.converged;
    if (!row.converged || row.delta <= 0.0) continue;
    t.K = std::max(t.K, row.distance / std::pow(row.delta, t.exponent));
    if (row.distance > 0.0) {
      x.push_back(row.delta);
      y.push_back(row.distance);
    }
  }
  for (SweepRow& row : t.rows) row.upper_bound_fit = t.K * std::pow(row.delta, t.exponent);
  if (x.size() >= 2) {
    t.fit = fit_loglog(x, y);
    t.beta = t.fit.slope;
    t.fitted = true;
    t.beta_at_least_exponent = t.beta >= t.exponent;
  }
  return t;
}

}  // namespace skewstab::lab
