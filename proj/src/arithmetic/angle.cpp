#include "skewstab/arithmetic/angle.hpp"

#include "skewstab/util/error.hpp"

#include <cctype>

namespace skewstab::arithmetic {

double AngleSpec::to_double() const {
  if (kind == AngleKind::quadratic) return static_cast<double>(high());
  return skewstab::to_double(value);
}

HighFloat AngleSpec::high() const {
  if (kind == AngleKind::quadratic)
    return (HighFloat(surd_p) + sqrt(HighFloat(surd_d))) / HighFloat(surd_q);
  return to_high(value);
}

AngleSpec rational_angle(const Rational& r) {
  AngleSpec a;
  a.kind = AngleKind::rational;
  a.value = frac_rational(r);
  a.uncertainty = 0;
  a.label = to_string(a.value);
  return a;
}

AngleSpec golden_angle() {
  AngleSpec a;
  a.kind = AngleKind::quadratic;
  a.label = "golden";
  a.surd_p = -1;
  a.surd_d = 5;
  a.surd_q = 2;
  const HighFloat v = a.high();
  a.value = rational_from_high(v);
  a.uncertainty = pow2(-320);
  return a;
}

AngleSpec lacunary_theta(int j_max, int cap) {
  if (j_max < 1) throw ValidationError("lacunary depth must be at least 1");
  if (j_max > cap)
    throw ValidationError("lacunary depth " + std::to_string(j_max) + " exceeds the cap " +
                          std::to_string(cap) + " (denominator 2^(2^(2j)) too large)");
  AngleSpec a;
  a.kind = AngleKind::lacunary;
  a.lacunary_depth = j_max;
  a.label = "lacunary:" + std::to_string(j_max);
  a.value = 0;
  for (int i = 1; i <= j_max; ++i) a.value += pow2(-(1L << (2 * i)));
  a.uncertainty = pow2(-(1L << (2 * (j_max + 1))) + 1);
  return a;
}

AngleSpec decimal_angle(const std::string& text, int digits) {
  AngleSpec a;
  a.kind = AngleKind::decimal;
  a.label = text;
  Rational v = parse_rational(text);
  long frac_digits = 0;
  long sig = 0;
  bool point = false, leading = true;
  for (char c : text) {
    if (c == '.') point = true;
    if (c == 'e' || c == 'E') throw ValidationError("decimal angles take plain digits, got '" + text + "'");
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (point) ++frac_digits;
    if (c != '0') leading = false;
    if (!leading) ++sig;
  }
  if (sig > digits)
    throw ValidationError("decimal angle has more than " + std::to_string(digits) + " significant digits");
  Rational ulp(1);
  for (long i = 0; i < frac_digits; ++i) ulp /= 10;
  a.value = frac_rational(v);
  a.uncertainty = ulp / 2;
  return a;
}

AngleSpec parse_angle(const std::string& spec) {
  if (spec.empty()) throw ValidationError("empty angle spec");
  if (spec == "golden") return golden_angle();
  for (const std::string prefix : {"liouville_j:", "lacunary:"}) {
    if (spec.rfind(prefix, 0) == 0) {
      const std::string rest = spec.substr(prefix.size());
      if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError("malformed lacunary depth in '" + spec + "'");
      return lacunary_theta(std::stoi(rest));
    }
  }
  if (spec.find('/') != std::string::npos) {
    AngleSpec a = rational_angle(parse_rational(spec));
    a.label = spec;
    return a;
  }
  return decimal_angle(spec);
}

}  // namespace skewstab::arithmetic
