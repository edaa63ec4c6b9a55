#pragma once

#include "skewstab/util/rational.hpp"

#include <string>

namespace skewstab::arithmetic {

enum class AngleKind { rational, quadratic, lacunary, decimal };

/// A rotation angle in [0, 1) known either exactly or as value +- uncertainty.
///
/// rational: value exact. decimal: value is the literal, uncertainty half a unit in
/// the last digit. lacunary: value is the partial sum, uncertainty the tail bound.
/// quadratic: the surd (P + sqrt(D)) / Q, with value a 100-digit approximation.
struct AngleSpec {
  AngleKind kind = AngleKind::rational;
  std::string label;
  Rational value;
  Rational uncertainty;
  BigInt surd_p, surd_d, surd_q;
  int lacunary_depth = 0;

  bool is_rational() const { return kind == AngleKind::rational; }
  double to_double() const;
  HighFloat high() const;
};

AngleSpec rational_angle(const Rational& r);
AngleSpec golden_angle();
/// sum_{i=1}^{j_max} 2^{-2^{2i}} with tail bound 2^{-2^{2(j_max+1)}+1}. j_max in [1, 4].
AngleSpec lacunary_theta(int j_max, int cap = 4);
/// Decimal literal; `digits` significant digits are kept (default 50).
AngleSpec decimal_angle(const std::string& text, int digits = 50);

/// "golden", "p/q", a decimal literal, "liouville_j:<j>" or "lacunary:<j>".
AngleSpec parse_angle(const std::string& spec);

}  // namespace skewstab::arithmetic
