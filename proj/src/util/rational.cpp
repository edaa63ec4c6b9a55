#include "skewstab/util/rational.hpp"

#include "skewstab/util/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

namespace skewstab {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  return Rational(BigInt(scaled)) * pow2(exp - 53);
}

Rational pow2(long e) {
  if (e >= 0) return Rational(BigInt(1) << static_cast<unsigned>(e));
  return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-e));
}

namespace {

BigInt parse_integer(const std::string& s) {
  if (s.empty()) throw ValidationError("empty integer literal");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw ValidationError("malformed integer literal '" + s + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ValidationError("malformed integer literal '" + s + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

BigInt pow10(long e) {
  BigInt v = 1;
  for (long i = 0; i < e; ++i) v *= 10;
  return v;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw ValidationError("empty number");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt num = parse_integer(text.substr(0, slash));
    const BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + raw + "'");
    return Rational(num, den);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    exponent = static_cast<long>(parse_integer(text.substr(e + 1)));
    text = text.substr(0, e);
  }
  bool neg = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    neg = text[0] == '-';
    text = text.substr(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw ValidationError("malformed number '" + raw + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw ValidationError("malformed number '" + raw + "'");
    }
  }
  if (digits.empty()) throw ValidationError("malformed number '" + raw + "'");
  Rational v(parse_integer(digits));
  const long shift = exponent - frac_digits;
  if (shift >= 0)
    v *= Rational(pow10(shift));
  else
    v /= Rational(pow10(-shift));
  return neg ? Rational(-v) : v;
}

std::string to_string(const Rational& r) {
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

BigInt floor_rational(const Rational& r) {
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);  // always positive
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Rational frac_rational(const Rational& r) { return r - Rational(floor_rational(r)); }

Rational nearest_integer_distance(const Rational& r) {
  const Rational f = frac_rational(r);
  const Rational g = Rational(1) - f;
  return f < g ? f : g;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

HighFloat to_high(const Rational& r) {
  return HighFloat(numerator(r)) / HighFloat(denominator(r));
}

Rational rational_from_high(const HighFloat& x) {
  using boost::multiprecision::frexp;
  using boost::multiprecision::ldexp;
  if (x == 0) return Rational(0);
  int exp = 0;
  const HighFloat mant = frexp(x, &exp);
  constexpr int bits = 400;  // exceeds the mantissa width, so the scaled value is an integer
  const BigInt scaled = ldexp(mant, bits).convert_to<BigInt>();
  return Rational(scaled) * pow2(static_cast<long>(exp) - bits);
}

long floor_log2(const Rational& r) {
  if (r == 0) throw ValidationError("log2 of zero");
  const BigInt n = abs(numerator(r));
  const BigInt d = denominator(r);
  long e = static_cast<long>(msb(n)) - static_cast<long>(msb(d));
  // 2^e <= n/d < 2^{e+2}; settle the remaining bit by comparison
  if (Rational(n, d) < pow2(e)) --e;
  else if (Rational(n, d) >= pow2(e + 1)) ++e;
  return e;
}

long dyadic_exponent(const Rational& r) {
  const BigInt d = denominator(r);
  if (d == 0 || (d & (d - 1)) != 0) throw ValidationError("value is not dyadic");
  return static_cast<long>(msb(d));
}

}  // namespace skewstab
