#include "skewstab/arithmetic/continued_fraction.hpp"

#include "skewstab/util/error.hpp"

#include <functional>

namespace skewstab::arithmetic {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  return floor_rational(Rational(a, b));
}

// Appends a_i and the matching convergent.
void push_quotient(ContinuedFraction& cf, const BigInt& a) {
  const std::size_t i = cf.partial_quotients.size();
  cf.partial_quotients.push_back(a);
  Convergent c;
  if (i == 0) {
    c.p = a;
    c.q = 1;
  } else if (i == 1) {
    c.p = a * cf.convergents[0].p + 1;
    c.q = a;
  } else {
    c.p = a * cf.convergents[i - 1].p + cf.convergents[i - 2].p;
    c.q = a * cf.convergents[i - 1].q + cf.convergents[i - 2].q;
  }
  cf.convergents.push_back(c);
}

// Generic driver; `stop` sees the convergent just added.
ContinuedFraction expand(const AngleSpec& theta, const std::function<bool(const ContinuedFraction&)>& stop) {
  ContinuedFraction cf;
  if (theta.kind == AngleKind::quadratic) {
    BigInt P = theta.surd_p, D = theta.surd_d, Q = theta.surd_q;
    const BigInt s = sqrt(D);
    if (s * s == D) throw ValidationError("quadratic angle needs a non-square discriminant");
    if ((D - P * P) % Q != 0) throw ValidationError("quadratic angle must satisfy Q | D - P^2");
    for (;;) {
      const BigInt a = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
      push_quotient(cf, a);
      if (stop(cf)) return cf;
      P = a * Q - P;
      Q = (D - P * P) / Q;
    }
  }
  if (theta.kind == AngleKind::rational || theta.uncertainty == 0) {
    Rational x = theta.value;
    for (;;) {
      const BigInt a = floor_rational(x);
      push_quotient(cf, a);
      const Rational r = x - Rational(a);
      if (r == 0) {
        cf.terminated = true;
        return cf;
      }
      if (stop(cf)) return cf;
      x = Rational(1) / r;
    }
  }
  // Interval expansion: emit quotients common to every value in [lo, hi].
  Rational lo = theta.kind == AngleKind::lacunary ? theta.value : theta.value - theta.uncertainty;
  Rational hi = theta.value + theta.uncertainty;
  for (;;) {
    const BigInt a = floor_rational(lo);
    if (floor_rational(hi) != a || lo == Rational(a)) {
      cf.precision_limited = true;
      return cf;
    }
    push_quotient(cf, a);
    if (stop(cf)) return cf;
    const Rational nlo = Rational(1) / (hi - Rational(a));
    const Rational nhi = Rational(1) / (lo - Rational(a));
    lo = nlo;
    hi = nhi;
  }
}

}  // namespace

ContinuedFraction continued_fraction(const AngleSpec& theta, std::size_t depth) {
  if (depth < 1) throw ValidationError("continued fraction depth must be at least 1");
  return expand(theta, [&](const ContinuedFraction& cf) { return cf.partial_quotients.size() >= depth; });
}

ContinuedFraction convergents_up_to(const AngleSpec& theta, const BigInt& K) {
  ContinuedFraction cf = expand(theta, [&](const ContinuedFraction& c) { return c.convergents.back().q > K; });
  while (!cf.convergents.empty() && cf.convergents.back().q > K) {
    cf.convergents.pop_back();
    cf.partial_quotients.pop_back();
    cf.terminated = false;
  }
  return cf;
}

}  // namespace skewstab::arithmetic
