#pragma once

#include "skewstab/arithmetic/angle.hpp"

#include <vector>

namespace skewstab::arithmetic {

struct Convergent {
  BigInt p;
  BigInt q;
};

struct ContinuedFraction {
  std::vector<BigInt> partial_quotients;  // a_0, a_1, ...
  std::vector<Convergent> convergents;    // p_i / q_i, with p_0 / q_0 = a_0 / 1
  bool terminated = false;                // the expansion ended (rational value)
  bool precision_limited = false;         // stopped where the known digits run out
};

/// Up to `depth` partial quotients. Exact for rational and quadratic angles; for
/// decimal and lacunary angles only quotients shared by both ends of the
/// uncertainty interval are emitted.
ContinuedFraction continued_fraction(const AngleSpec& theta, std::size_t depth);

/// Convergents with denominator at most K (uses as many quotients as needed).
ContinuedFraction convergents_up_to(const AngleSpec& theta, const BigInt& K);

}  // namespace skewstab::arithmetic
