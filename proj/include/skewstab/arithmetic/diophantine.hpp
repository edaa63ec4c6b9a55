#pragma once

#include "skewstab/arithmetic/continued_fraction.hpp"

#include <limits>
#include <vector>

namespace skewstab::arithmetic {

/// ||k theta|| as an exact rational with an error radius; error is 0 when exact.
struct IntegerDistance {
  Rational value;
  Rational error;
  double approx() const { return to_double(value); }
};

/// Refuses (NumericError) when the angle's precision cannot resolve ||k theta||.
IntegerDistance nearest_integer_norm(const BigInt& k, const AngleSpec& theta);

struct TypeSample {
  BigInt k;
  double distance;
  double local_exponent;  // log(1/||k theta||) / log k
};

struct TypeEstimate {
  double gamma_hat = 0.0;
  double c0 = 0.0;
  BigInt K;
  BigInt q_min;
  std::vector<TypeSample> samples;
  bool is_rational = false;  // then gamma_hat = +inf
};

inline const BigInt kDefaultTypeFloor = 10000;

/// Type estimate over convergent denominators q <= K. c0 is fixed at the first
/// convergent q >= q_min and gamma_hat is the least exponent with
/// ||q theta|| >= c0 q^-gamma_hat on all later convergents; without a later one it is
/// the raw local exponent there. Nondecreasing in K.
TypeEstimate linear_type_estimate(const AngleSpec& theta, const BigInt& K,
                                  const BigInt& q_min = kDefaultTypeFloor);

/// For lacunary theta and k = 2^{2^{2n}}: -floor(log2 ||k theta||) / log2 k, exact.
Rational dyadic_local_exponent(const AngleSpec& theta, int n);

struct Approximant {
  BigInt p;
  BigInt k;
  Rational delta;        // p/k - theta (theta's partial value for truncated angles)
  Rational delta_error;  // |true delta - delta| bound
  double gamma_prime = 0.0;
  bool within_bound = false;  // |delta| <= (1/k)^{gamma_prime - 1}
};

/// j-th convergent (or j-th lacunary partial sum) and the perturbation that
/// turns theta into it.
Approximant approximant_perturbation(const AngleSpec& theta, int j, double gamma_prime = 2.5);

}  // namespace skewstab::arithmetic
