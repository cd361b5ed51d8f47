#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <utility>

namespace symcert {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Floored quotient of two integers, denominator nonzero.
Integer floor_div(const Integer& num, const Integer& den);

Integer floor_rat(const Rational& x);
Integer ceil_rat(const Rational& x);

bool is_integral(const Rational& x);
/// True when x lies in Z + 1/2.
bool is_half_integral(const Rational& x);

/// Nearest integer to x; the flag is true when x is exactly halfway between
/// two integers (in which case the returned integer is the lower neighbour).
std::pair<Integer, bool> nearest_int(const Rational& x);

/// Parses "p/q", "p", or a plain decimal like "-0.61803398875" exactly.
Rational parse_rational(const std::string& text);

/// Canonical form "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& x);

/// Narrowing conversion that throws InvalidInput instead of wrapping.
long to_long(const Integer& v);

/// Closed interval with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_integer() const;
  bool contains_half_integer() const;

  RationalInterval operator+(const RationalInterval& other) const {
    return {lo + other.lo, hi + other.hi};
  }
  RationalInterval operator*(const Rational& s) const {
    if (s >= 0) return {lo * s, hi * s};
    return {hi * s, lo * s};
  }
  RationalInterval shifted(const Rational& s) const { return {lo + s, hi + s}; }
};

}  // namespace symcert
