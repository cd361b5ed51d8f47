#include "symcert/rational.hpp"

#include <limits>
#include <sstream>

#include "symcert/errors.hpp"

namespace symcert {

Integer floor_div(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidInput("floor_div: zero denominator");
  Integer q;
  mpz_fdiv_q(q.backend().data(), num.backend().data(), den.backend().data());
  return q;
}

Integer floor_rat(const Rational& x) {
  return floor_div(numerator(x), denominator(x));
}

Integer ceil_rat(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.backend().data(), numerator(x).backend().data(),
             denominator(x).backend().data());
  return q;
}

bool is_integral(const Rational& x) { return denominator(x) == 1; }

bool is_half_integral(const Rational& x) { return denominator(x) == 2; }

std::pair<Integer, bool> nearest_int(const Rational& x) {
  if (is_half_integral(x)) return {floor_rat(x), true};
  return {floor_rat(x + Rational(1, 2)), false};
}

namespace {

Rational parse_decimal(const std::string& text) {
  // [sign] digits [. digits]; exponents are deliberately not accepted.
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_point) throw ParseError("bad decimal literal '" + text + "'");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else {
      throw ParseError("bad decimal literal '" + text + "'");
    }
  }
  if (!seen_digit) throw ParseError("bad decimal literal '" + text + "'");
  // A leading zero would switch the GMP string constructor to octal.
  std::size_t first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  Integer num(digits);
  Integer den = 1;
  for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (num.empty() || den.empty() || den.find('.') != std::string::npos ||
      num.find('.') != std::string::npos) {
    throw ParseError("bad rational literal '" + text + "'");
  }
  Rational p = parse_decimal(num);
  Rational q = parse_decimal(den);
  if (!is_integral(p) || !is_integral(q)) {
    throw ParseError("bad rational literal '" + text + "'");
  }
  if (q == 0) throw ParseError("zero denominator in '" + text + "'");
  return p / q;
}

std::string format_rational(const Rational& x) {
  std::ostringstream out;
  out << numerator(x);
  if (denominator(x) != 1) out << '/' << denominator(x);
  return out.str();
}

long to_long(const Integer& v) {
  if (v < std::numeric_limits<long>::min() || v > std::numeric_limits<long>::max()) {
    throw InvalidInput("integer out of range for long: " + v.str());
  }
  return static_cast<long>(v);
}

bool RationalInterval::contains_integer() const {
  return floor_rat(hi) >= ceil_rat(lo);
}

bool RationalInterval::contains_half_integer() const {
  // Shift by 1/2 and reuse the integer test.
  RationalInterval s{lo + Rational(1, 2), hi + Rational(1, 2)};
  return s.contains_integer();
}

}  // namespace symcert
