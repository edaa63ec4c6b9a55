#include "skewstab/dynamics/transfer.hpp"

#include "skewstab/util/error.hpp"
#include "skewstab/util/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace skewstab::dynamics {

using measures::Disintegration;
using measures::FiberMeasure;
using measures::FiberPtr;

double resolve_resolution(double eps_f, std::size_t n_cells) {
  if (eps_f < 0.0) return 1.0 / (4.0 * static_cast<double>(n_cells));
  if (eps_f >= 1.0) throw ValidationError("fiber resolution must lie in [0, 1)");
  return eps_f;
}

TransferOperator::TransferOperator(const SkewSystem& sys, std::size_t n_cells, double eps_f)
    : fiber_(sys.fiber), eps_f_(resolve_resolution(eps_f, n_cells)), plan_(n_cells) {
  if (n_cells == 0) throw ValidationError("n_cells must be positive");
  const int l = sys.q();
  const auto L = static_cast<std::size_t>(l);
  const double nd = static_cast<double>(n_cells);
  const std::vector<double> cuts = fiber_.breakpoints();

  if (sys.base.is_linear()) {
    if (n_cells % L != 0)
      throw ValidationError("grid/branch mismatch: N = " + std::to_string(n_cells) +
                            " is not a multiple of the branch count " + std::to_string(l));
    // branch b maps [j/(lN), (j+1)/(lN)), j = c + bN, onto cell c; that interval lies in cell j / l
    for (std::size_t c = 0; c < n_cells; ++c) {
      for (std::size_t b = 0; b < L; ++b) {
        const std::size_t j = c + b * n_cells;
        const std::size_t src = j / L;
        std::vector<double> rel{0.0};
        for (double beta : cuts) {
          const double r = beta * static_cast<double>(L) * nd - static_cast<double>(j);
          if (r > 0.0 && r < 1.0) rel.push_back(r);
        }
        rel.push_back(1.0);
        for (std::size_t k = 0; k + 1 < rel.size(); ++k) {
          const double frac = rel.size() == 2 ? 1.0 / l : (rel[k + 1] - rel[k]) / l;
          const double mid = (static_cast<double>(j) + 0.5 * (rel[k] + rel[k + 1])) / (static_cast<double>(L) * nd);
          plan_[c].push_back({src, frac, fiber_.key(mid)});
        }
      }
    }
    return;
  }

  for (std::size_t c = 0; c < n_cells; ++c) {
    for (int b = 0; b < l; ++b) {
      const double lo = sys.base.inverse(b, static_cast<double>(c) / nd);
      const double hi = sys.base.inverse(b, static_cast<double>(c + 1) / nd);
      std::vector<double> pts{lo};
      for (auto k = static_cast<std::size_t>(std::floor(lo * nd)) + 1; static_cast<double>(k) / nd < hi; ++k)
        pts.push_back(static_cast<double>(k) / nd);
      for (double beta : cuts)
        if (beta > lo && beta < hi) pts.push_back(beta);
      pts.push_back(hi);
      std::sort(pts.begin(), pts.end());
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (!(pts[k + 1] > pts[k])) continue;
        const double mid = 0.5 * (pts[k] + pts[k + 1]);
        const auto src = std::min(n_cells - 1, static_cast<std::size_t>(mid * nd));
        plan_[c].push_back({src, nd * (pts[k + 1] - pts[k]), fiber_.key(mid)});
      }
    }
  }
}

Disintegration TransferOperator::apply(const Disintegration& mu) const {
  if (mu.n_cells() != plan_.size()) throw ValidationError("grid/branch mismatch: measure and operator grids differ");
  if (mu.dimension() != 1) throw ValidationError("built-in fiber maps act on T^1");
  const measures::FiberClasses cls = mu.classes();

  // distinct (class, key) pushforwards
  std::map<std::pair<std::size_t, int>, std::size_t> push_index;
  std::vector<std::pair<std::size_t, int>> pushes;
  using Recipe = std::vector<std::pair<std::size_t, double>>;
  std::vector<Recipe> recipes(plan_.size());
  for (std::size_t c = 0; c < plan_.size(); ++c) {
    std::map<std::size_t, double> acc;
    for (const Piece& pc : plan_[c]) {
      const auto key = std::make_pair(cls.class_of[pc.source], pc.key);
      auto it = push_index.find(key);
      if (it == push_index.end()) {
        it = push_index.emplace(key, pushes.size()).first;
        pushes.push_back(key);
      }
      acc[it->second] += pc.fraction;
    }
    recipes[c].assign(acc.begin(), acc.end());
  }
  std::vector<FiberMeasure> pushed(pushes.size());
  parallel_for(pushes.size(), [&](std::size_t i) {
    const auto& [k, key] = pushes[i];
    pushed[i] = measures::pushforward_fiber(*cls.reps[k], fiber_.point_map(key));
  });

  std::map<Recipe, std::size_t> recipe_index;
  std::vector<const Recipe*> unique;
  std::vector<std::size_t> which(plan_.size());
  for (std::size_t c = 0; c < plan_.size(); ++c) {
    auto it = recipe_index.find(recipes[c]);
    if (it == recipe_index.end()) {
      it = recipe_index.emplace(recipes[c], unique.size()).first;
      unique.push_back(&recipes[c]);
    }
    which[c] = it->second;
  }
  std::vector<FiberPtr> built(unique.size());
  parallel_for(unique.size(), [&](std::size_t u) {
    std::vector<const FiberMeasure*> parts;
    std::vector<double> coeffs;
    for (const auto& [idx, f] : *unique[u]) {
      parts.push_back(&pushed[idx]);
      coeffs.push_back(f);
    }
    FiberMeasure out = measures::weighted_sum(parts, coeffs);
    if (eps_f_ > 0.0) out = measures::coarsen(out, eps_f_);
    built[u] = std::make_shared<const FiberMeasure>(std::move(out));
  });
  std::vector<FiberPtr> fibers(plan_.size());
  for (std::size_t c = 0; c < plan_.size(); ++c) fibers[c] = built[which[c]];
  return Disintegration(std::move(fibers));
}

std::vector<double> TransferOperator::apply_base(const std::vector<double>& masses) const {
  if (masses.size() != plan_.size()) throw ValidationError("grid/branch mismatch: mass vector size differs");
  std::vector<double> out(plan_.size(), 0.0);
  for (std::size_t c = 0; c < plan_.size(); ++c) {
    std::map<std::size_t, double> acc;
    for (const Piece& pc : plan_[c]) acc[pc.source] += pc.fraction;
    for (const auto& [src, f] : acc) out[c] += f * masses[src];
  }
  return out;
}

Disintegration transfer_step(const SkewSystem& sys, const Disintegration& mu, double eps_f) {
  return TransferOperator(sys, mu.n_cells(), eps_f).apply(mu);
}

Disintegration iterate(const SkewSystem& sys, const Disintegration& mu, int n, double eps_f) {
  if (n < 0) throw ValidationError("iteration count must be nonnegative");
  if (n == 0) return mu;
  const TransferOperator op(sys, mu.n_cells(), eps_f);
  Disintegration cur = mu;
  for (int i = 0; i < n; ++i) cur = op.apply(cur);
  return cur;
}

std::vector<double> base_transfer(const SkewSystem& sys, const std::vector<double>& masses) {
  return TransferOperator(sys, masses.size(), 0.0).apply_base(masses);
}

}  // namespace skewstab::dynamics
