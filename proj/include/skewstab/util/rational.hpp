#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace skewstab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// ~100 significant decimal digits.
using HighFloat = boost::multiprecision::cpp_bin_float_100;

/// Exact value of a finite double.
Rational rational_from_double(double x);

/// Parses "p/q", "-p/q", integers and decimal literals ("0.125", "1e-3") exactly.
Rational parse_rational(const std::string& text);

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);

BigInt floor_rational(const Rational& r);
Rational frac_rational(const Rational& r);  // r - floor(r), in [0, 1)
/// Distance to the nearest integer.
Rational nearest_integer_distance(const Rational& r);

double to_double(const Rational& r);
HighFloat to_high(const Rational& r);
/// Exact value of a finite HighFloat.
Rational rational_from_high(const HighFloat& x);
/// floor(log2 |r|) for r != 0.
long floor_log2(const Rational& r);

/// 2^e as a rational, e may be negative.
Rational pow2(long e);

/// For nonzero dyadic r = u * 2^-e with u odd, returns e (denominator exponent).
/// Throws if r is not dyadic.
long dyadic_exponent(const Rational& r);

}  // namespace skewstab
