#include "skewstab/measures/norms.hpp"

#include "skewstab/measures/w1.hpp"
#include "skewstab/util/error.hpp"
#include "skewstab/util/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace skewstab::measures {

namespace {

// Pairwise leaf distances between fiber classes, N * W1(f_a - f_b).
class ClassDistances {
 public:
  ClassDistances(const FiberClasses& cls, double n) : u_(cls.reps.size()), d_(u_ * u_, 0.0) {
    parallel_for(u_, [&](std::size_t a) {
      for (std::size_t b = a + 1; b < u_; ++b)
        d_[a * u_ + b] = n * w1_norm(combine(*cls.reps[a], 1.0, *cls.reps[b], -1.0));
    });
    for (std::size_t a = 0; a < u_; ++a)
      for (std::size_t b = 0; b < a; ++b) d_[a * u_ + b] = d_[b * u_ + a];
  }
  double operator()(std::size_t a, std::size_t b) const { return d_[a * u_ + b]; }
  std::size_t size() const { return u_; }

 private:
  std::size_t u_;
  std::vector<double> d_;
};

std::size_t grid_radius(double r, std::size_t n) {
  const double j = std::floor(r * static_cast<double>(n) + 1e-9);
  if (j < 1.0) throw ValidationError("radius unresolvable: r below grid resolution 1/N");
  return static_cast<std::size_t>(j);
}

std::size_t radius_count(double A, std::size_t n) {
  if (!(A > 0.0 && A <= 1.0)) throw ValidationError("radius cap A must lie in (0, 1]");
  const double j = std::ceil(A * static_cast<double>(n) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(j));
}

// osc(i, j) for j = 1..J, growing the window one cell to each side at a time.
void osc_row(const FiberClasses& cls, const ClassDistances& dist, std::size_t i, std::size_t J,
             double* out) {
  const std::size_t n = cls.class_of.size();
  std::vector<std::size_t> present{cls.class_of[i]};
  std::vector<char> seen(dist.size(), 0);
  seen[cls.class_of[i]] = 1;
  double best = 0.0;
  auto admit = [&](std::size_t cell) {
    const std::size_t c = cls.class_of[cell];
    if (seen[c]) return;
    for (std::size_t p : present) best = std::max(best, dist(c, p));
    seen[c] = 1;
    present.push_back(c);
  };
  for (std::size_t j = 1; j <= J; ++j) {
    if (i >= j) admit(i - j);
    if (i + j < n) admit(i + j);
    out[j - 1] = best;
  }
}

}  // namespace

double l1_norm(const Disintegration& mu) {
  const FiberClasses cls = mu.classes();
  std::vector<double> per(cls.reps.size());
  parallel_for(per.size(), [&](std::size_t k) { per[k] = w1_norm(*cls.reps[k]); });
  double s = 0.0;
  for (std::size_t k = 0; k < per.size(); ++k) s += static_cast<double>(cls.count[k]) * per[k];
  return s;
}

double oscillation(const Disintegration& mu, std::size_t i, double r) {
  const std::size_t n = mu.n_cells();
  if (i >= n) throw ValidationError("cell index out of range");
  const std::size_t j = grid_radius(r, n);
  const std::size_t lo = i >= j ? i - j : 0;
  const std::size_t hi = std::min(n - 1, i + j);
  std::vector<FiberPtr> window;
  for (std::size_t c = lo; c <= hi; ++c) window.push_back(mu.fiber_ptr(c));
  const Disintegration local(window);
  const FiberClasses cls = local.classes();
  const ClassDistances dist(cls, static_cast<double>(n));
  double best = 0.0;
  for (std::size_t a = 0; a < dist.size(); ++a)
    for (std::size_t b = a + 1; b < dist.size(); ++b) best = std::max(best, dist(a, b));
  return best;
}

std::vector<double> var_p_profile(const Disintegration& mu, double p, double A) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p must lie in (0, 1]");
  const std::size_t n = mu.n_cells();
  const std::size_t J = radius_count(A, n);
  const FiberClasses cls = mu.classes();
  std::vector<double> profile(J, 0.0);
  if (cls.reps.size() == 1) return profile;
  const ClassDistances dist(cls, static_cast<double>(n));
  std::vector<double> osc(n * J);
  parallel_for(n, [&](std::size_t i) { osc_row(cls, dist, i, J, osc.data() + i * J); });
  const double nd = static_cast<double>(n);
  for (std::size_t j = 1; j <= J; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += osc[i * J + (j - 1)];
    profile[j - 1] = std::pow(static_cast<double>(j) / nd, -p) * s / nd;
  }
  return profile;
}

double var_p(const Disintegration& mu, double p, double A) {
  const auto prof = var_p_profile(mu, p, A);
  return *std::max_element(prof.begin(), prof.end());
}

NormReport pbv_norm(const Disintegration& mu, double p, double A) {
  NormReport r;
  r.p = p;
  r.A = A;
  r.l1 = l1_norm(mu);
  r.var_p = var_p(mu, p, A);
  r.pbv = r.l1 + r.var_p;
  return r;
}

MarginalDensity marginal_density(std::vector<double> values) {
  MarginalDensity out;
  out.values = std::move(values);
  double s = 0.0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.sup = std::max(out.sup, std::fabs(out.values[i]));
    s += out.values[i];
    if (i > 0) out.bv += std::fabs(out.values[i] - out.values[i - 1]);
  }
  out.integral = out.values.empty() ? 0.0 : s / static_cast<double>(out.values.size());
  return out;
}

MarginalDensity marginal_density(const Disintegration& mu) {
  const std::size_t n = mu.n_cells();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(n) * mu.fiber(i).mass();
  return marginal_density(std::move(v));
}

Disintegration piecewise_constant_approx(const Disintegration& mu, std::size_t m) {
  const std::size_t n = mu.n_cells();
  if (m == 0 || n % m != 0) throw ValidationError("block count m must divide N");
  const std::size_t b = n / m;
  if (b == 1) return mu;
  std::vector<FiberPtr> out(n);
  const double c = 1.0 / static_cast<double>(b);
  const FiberClasses cls = mu.classes();
  for (std::size_t blk = 0; blk < m; ++blk) {
    std::vector<const FiberMeasure*> parts;
    bool uniform = true;
    for (std::size_t k = 0; k < b; ++k) {
      parts.push_back(&mu.fiber(blk * b + k));
      uniform = uniform && cls.class_of[blk * b + k] == cls.class_of[blk * b];
    }
    FiberPtr avg = uniform ? mu.fiber_ptr(blk * b)
                           : std::make_shared<const FiberMeasure>(
                                 weighted_sum(parts, std::vector<double>(b, c)));
    for (std::size_t k = 0; k < b; ++k) out[blk * b + k] = avg;
  }
  return Disintegration(std::move(out));
}

}  // namespace skewstab::measures
