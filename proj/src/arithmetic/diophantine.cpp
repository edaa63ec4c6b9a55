#include "skewstab/arithmetic/diophantine.hpp"

#include "skewstab/util/error.hpp"

#include <cmath>

namespace skewstab::arithmetic {

namespace {

double log_high(const BigInt& k) { return static_cast<double>(log(HighFloat(k))); }

double log_high(const Rational& r) { return static_cast<double>(log(to_high(r))); }

}  // namespace

IntegerDistance nearest_integer_norm(const BigInt& k, const AngleSpec& theta) {
  if (k < 1) throw ValidationError("k must be at least 1");
  IntegerDistance out;
  out.value = nearest_integer_distance(Rational(k) * theta.value);
  out.error = Rational(k) * theta.uncertainty;
  if (out.error != 0 && out.error * 2 >= out.value)
    throw NumericError("angle precision cannot resolve ||k theta|| at k = " + k.str());
  return out;
}

TypeEstimate linear_type_estimate(const AngleSpec& theta, const BigInt& K, const BigInt& q_min) {
  if (K < 2) throw ValidationError("type estimate needs K >= 2");
  TypeEstimate est;
  est.K = K;
  est.q_min = q_min;
  if (theta.is_rational()) {
    est.is_rational = true;
    est.gamma_hat = std::numeric_limits<double>::infinity();
    return est;
  }
  const ContinuedFraction cf = convergents_up_to(theta, K);
  for (const Convergent& c : cf.convergents) {
    if (c.q < 2) continue;
    IntegerDistance d;
    try {
      d = nearest_integer_norm(c.q, theta);
    } catch (const NumericError&) {
      break;
    }
    if (d.value == 0) {
      est.is_rational = true;
      est.gamma_hat = std::numeric_limits<double>::infinity();
      return est;
    }
    TypeSample s;
    s.k = c.q;
    s.distance = d.approx();
    s.local_exponent = -log_high(d.value) / log_high(c.q);
    est.samples.push_back(s);
  }
  // Anchor at the first convergent past the floor (or the first one at all). The
  // constant c0 is pinned there and gamma_hat is the smallest exponent with
  // ||q theta|| >= c0 q^-gamma_hat on every later convergent up to K.
  if (est.samples.empty()) throw NumericError("no convergent denominators available below K");
  std::size_t anchor = 0;
  while (anchor < est.samples.size() && est.samples[anchor].k < q_min) ++anchor;
  if (anchor == est.samples.size()) anchor = 0;
  const TypeSample& base = est.samples[anchor];
  est.gamma_hat = base.local_exponent;
  bool any = false;
  for (std::size_t i = anchor + 1; i < est.samples.size(); ++i) {
    const TypeSample& s = est.samples[i];
    const double slope = std::log(base.distance / s.distance) / (log_high(s.k) - log_high(base.k));
    est.gamma_hat = any ? std::max(est.gamma_hat, slope) : slope;
    any = true;
  }
  est.c0 = base.distance * std::exp(est.gamma_hat * log_high(base.k));
  return est;
}

Rational dyadic_local_exponent(const AngleSpec& theta, int n) {
  if (theta.kind != AngleKind::lacunary) throw ValidationError("dyadic local exponent needs a lacunary angle");
  if (n < 1 || n >= theta.lacunary_depth)
    throw ValidationError("local exponent at n = " + std::to_string(n) + " needs truncation depth > n");
  const long log2k = 1L << (2 * n);
  const BigInt k = BigInt(1) << static_cast<unsigned>(log2k);
  const IntegerDistance d = nearest_integer_norm(k, theta);
  const long fl = floor_log2(d.value);
  if (d.error != 0 && (floor_log2(d.value - d.error) != fl || floor_log2(d.value + d.error) != fl))
    throw NumericError("truncation tail reaches the leading binary digit");
  return Rational(-fl, log2k);
}

Approximant approximant_perturbation(const AngleSpec& theta, int j, double gamma_prime) {
  if (theta.is_rational()) throw ValidationError("approximant perturbation needs an irrational angle");
  if (j < 1) throw ValidationError("approximant index must be at least 1");
  Approximant out;
  out.gamma_prime = gamma_prime;
  Rational approx;
  if (theta.kind == AngleKind::lacunary) {
    if (j >= theta.lacunary_depth)
      throw ValidationError("approximant j = " + std::to_string(j) + " is beyond the truncation depth " +
                            std::to_string(theta.lacunary_depth));
    approx = 0;
    for (int i = 1; i <= j; ++i) approx += pow2(-(1L << (2 * i)));
  } else {
    const ContinuedFraction cf = continued_fraction(theta, static_cast<std::size_t>(j) + 1);
    if (cf.convergents.size() <= static_cast<std::size_t>(j))
      throw ValidationError("approximant j = " + std::to_string(j) + " is beyond the available expansion");
    approx = Rational(cf.convergents[static_cast<std::size_t>(j)].p, cf.convergents[static_cast<std::size_t>(j)].q);
  }
  out.p = numerator(approx);
  out.k = denominator(approx);
  out.delta = approx - theta.value;
  out.delta_error = theta.uncertainty;
  const HighFloat bound = pow(HighFloat(out.k), HighFloat(-(gamma_prime - 1.0)));
  out.within_bound = to_high(abs(out.delta) + out.delta_error) <= bound;
  return out;
}

}  // namespace skewstab::arithmetic
