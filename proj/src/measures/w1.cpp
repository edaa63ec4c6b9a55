#include "skewstab/measures/w1.hpp"

#include "lp.hpp"
#include "skewstab/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

namespace skewstab::measures {

namespace {

// Weighted L1 isotonic regression: argmin over nondecreasing r of sum w_i |y_i - r_i|.
// Slope trick on the prefix-minimized value functions; returns the least minimizer.
std::vector<double> isotonic_l1(const std::vector<double>& y, const std::vector<double>& w) {
  const std::size_t n = y.size();
  std::priority_queue<std::pair<double, double>> left;  // (breakpoint, slope weight)
  std::vector<double> opt(n);
  for (std::size_t i = 0; i < n; ++i) {
    left.emplace(y[i], 2.0 * w[i]);
    double excess = w[i];
    while (excess > 0.0 && !left.empty()) {
      auto top = left.top();
      left.pop();
      if (top.second > excess) {
        left.emplace(top.first, top.second - excess);
        excess = 0.0;
      } else {
        excess -= top.second;
      }
    }
    opt[i] = left.empty() ? y[i] : left.top().first;
  }
  for (std::size_t i = n - 1; i-- > 0;) opt[i] = std::min(opt[i], opt[i + 1]);
  return opt;
}

template <class Scalar, class Dist>
detail::DenseLp<Scalar> pairwise_program(std::size_t n, const std::vector<Scalar>& w, Dist dist) {
  detail::DenseLp<Scalar> lp;
  lp.vars = n;
  lp.objective = w;
  // u_i = g_i + 1 in [0, 2]
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> row(n, Scalar(0));
    row[i] = Scalar(1);
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(Scalar(2));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<Scalar> row(n, Scalar(0));
      row[i] = Scalar(1);
      row[j] = Scalar(-1);
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(dist(i, j));
    }
  }
  return lp;
}

}  // namespace

double w1_norm_circle(const FiberMeasure& mu) {
  if (mu.dimension() != 1) throw ValidationError("circle W1 needs a one-dimensional fiber");
  const std::size_t n = mu.size();
  if (n == 0) return 0.0;
  double m = mu.mass();
  const double sign = m < 0.0 ? -1.0 : 1.0;
  m *= sign;
  if (n == 1) return m;

  std::vector<double> gap(n);
  for (std::size_t i = 0; i + 1 < n; ++i) gap[i] = mu.x(i + 1) - mu.x(i);
  gap[n - 1] = 1.0 - mu.x(n - 1) + mu.x(0);

  // Cumulative weights on the n-1 open edges; the closing edge carries the circulation c.
  // For fixed c the optimal potentials solve an L1 isotonic regression of the
  // cumulative weights inside the box [c, c + m]; sentinels heavier than all edges
  // pin the box ends. The cost is convex in c, so a golden-section search finds it.
  std::vector<double> y(n + 1), w(n + 1);
  double acc = 0.0, total_gap = 0.0, lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    acc += sign * mu.weight(i);
    y[i + 1] = acc;
    w[i + 1] = gap[i];
    total_gap += gap[i];
    lo = std::min(lo, acc);
    hi = std::max(hi, acc);
  }
  lo -= m;
  const double heavy = 2.0 * total_gap + 1.0;
  w[0] = w[n] = heavy;

  auto cost = [&](double c) {
    y[0] = c;
    y[n] = c + m;
    const std::vector<double> r = isotonic_l1(y, w);
    double s = gap[n - 1] * std::fabs(c);
    for (std::size_t i = 1; i < n; ++i) s += w[i] * std::fabs(y[i] - std::clamp(r[i], c, c + m));
    return s;
  };

  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
  double f1 = cost(c1), f2 = cost(c2);
  for (int it = 0; it < 120 && b - a > 1e-17 * (1.0 + std::fabs(a)); ++it) {
    if (f1 <= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - phi * (b - a);
      f1 = cost(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + phi * (b - a);
      f2 = cost(c2);
    }
  }
  return m + std::min({f1, f2, cost(0.0), cost(lo), cost(hi)});
}

double w1_norm_pairwise(const FiberMeasure& mu) {
  const std::size_t n = mu.size();
  if (n == 0) return 0.0;
  auto lp = pairwise_program<double>(
      n, mu.weights(),
      [&](std::size_t i, std::size_t j) { return torus_distance(mu.position(i), mu.position(j)); });
  // Rescale so the simplex tolerance is relative to the largest weight.
  double scale = 0.0;
  for (double v : mu.weights()) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return 0.0;
  const double mass = mu.mass() / scale;
  for (auto& v : lp.objective) v /= scale;
  const double up = detail::solve_max<double>(lp, 1e-12) - mass;
  for (auto& v : lp.objective) v = -v;
  const double down = detail::solve_max<double>(lp, 1e-12) + mass;
  return scale * std::max(up, down);
}

Rational w1_norm_exact(const FiberMeasure& mu, std::size_t max_atoms) {
  const std::size_t n = mu.size();
  if (n == 0) return Rational(0);
  if (n > max_atoms)
    throw ValidationError("exact W1 limited to " + std::to_string(max_atoms) + " atoms");
  const std::size_t d = static_cast<std::size_t>(mu.dimension());
  std::vector<Rational> pos(mu.coords().size());
  for (std::size_t k = 0; k < pos.size(); ++k) pos[k] = rational_from_double(mu.coords()[k]);
  std::vector<Rational> w(n);
  Rational mass(0);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = rational_from_double(mu.weight(i));
    mass += w[i];
  }
  auto dist = [&](std::size_t i, std::size_t j) {
    Rational best(0);
    for (std::size_t k = 0; k < d; ++k) {
      Rational diff = pos[i * d + k] - pos[j * d + k];
      if (diff < 0) diff = -diff;
      const Rational other = Rational(1) - diff;
      const Rational c = diff < other ? diff : other;
      if (c > best) best = c;
    }
    return best;
  };
  auto lp = pairwise_program<Rational>(n, w, dist);
  return detail::solve_max<Rational>(lp, Rational(0)) - mass;
}

double w1_norm(const FiberMeasure& mu) {
  if (mu.dimension() == 1) return w1_norm_circle(mu);
  if (mu.size() <= 8) return to_double(w1_norm_exact(mu));
  return w1_norm_pairwise(mu);
}

double w1_distance(const FiberMeasure& mu, const FiberMeasure& nu) {
  return w1_norm(combine(mu, 1.0, nu, -1.0));
}

}  // namespace skewstab::measures
