#include "symcert/exact_angle.hpp"

#include <algorithm>
#include <sstream>

#include "symcert/errors.hpp"

namespace symcert {

namespace {

Rational pow2(long e) {
  Integer one = 1;
  if (e >= 0) return Rational(one << e, 1);
  return Rational(1, one << -e);
}

}  // namespace

void IrrationalBasis::add_decimal(const std::string& name,
                                  const std::string& decimal,
                                  unsigned declared_bits) {
  if (declared_bits == 0) throw InvalidInput("declared_bits must be positive");
  Rational value = parse_rational(decimal);
  Rational radius = pow2(-static_cast<long>(declared_bits));
  BasisEntry entry;
  entry.name = name;
  entry.max_bits = declared_bits;
  entry.refine = [value, radius](unsigned) -> RationalInterval {
    return {value - radius, value + radius};
  };
  add(std::move(entry));
}

void IrrationalBasis::add_sqrt(const std::string& name, const Rational& radicand) {
  if (radicand <= 0) throw InvalidInput("sqrt entry needs a positive radicand");
  Integer num = numerator(radicand);
  Integer den = denominator(radicand);
  Integer sn = sqrt(num), sd = sqrt(den);
  if (sn * sn == num && sd * sd == den) {
    throw InvalidInput("sqrt entry '" + name + "' would be rational");
  }
  BasisEntry entry;
  entry.name = name;
  entry.max_bits = 0;
  entry.refine = [num, den](unsigned bits) -> RationalInterval {
    // sqrt(num/den) = sqrt(num*den)/den; floor square root at scale 2^bits.
    Integer scaled = num * den << (2 * bits);
    Integer root = sqrt(scaled);
    Rational denom(den << bits, 1);
    return {Rational(root, 1) / denom, Rational(root + 1, 1) / denom};
  };
  add(std::move(entry));
}

void IrrationalBasis::add(BasisEntry entry) {
  if (entry.name.empty()) throw InvalidInput("basis entry needs a name");
  if (!entry.refine) throw InvalidInput("basis entry needs a refiner");
  if (entries_.count(entry.name)) {
    throw InvalidInput("duplicate basis name '" + entry.name + "'");
  }
  entries_.emplace(entry.name, std::move(entry));
}

bool IrrationalBasis::contains(const std::string& name) const {
  return entries_.count(name) != 0;
}

RationalInterval IrrationalBasis::approx(const std::string& name,
                                         unsigned bits) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownBasisName(name);
  const BasisEntry& entry = it->second;
  if (entry.max_bits != 0 && bits > entry.max_bits) {
    throw PrecisionExhausted("basis entry '" + name + "' is declared to " +
                             std::to_string(entry.max_bits) +
                             " bits, cannot serve " + std::to_string(bits));
  }
  RationalInterval box = entry.refine(bits);
  if (box.lo > box.hi || box.width() > pow2(1 - static_cast<long>(bits))) {
    throw Error("refiner for '" + name + "' broke its width contract");
  }
  return box;
}

unsigned IrrationalBasis::cap(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownBasisName(name);
  return it->second.max_bits;
}

std::vector<std::string> IrrationalBasis::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

ExactAngle::ExactAngle(Rational rational_part)
    : rational_part_(std::move(rational_part)) {}

ExactAngle::ExactAngle(Rational rational_part, std::map<std::string, Rational> coeffs)
    : rational_part_(std::move(rational_part)), coeffs_(std::move(coeffs)) {
  drop_zeros();
}

ExactAngle ExactAngle::multiple(const std::string& basis_name, const Rational& coeff) {
  ExactAngle a;
  if (coeff != 0) a.coeffs_.emplace(basis_name, coeff);
  return a;
}

void ExactAngle::drop_zeros() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
}

ExactAngle ExactAngle::operator+(const ExactAngle& other) const {
  ExactAngle out = *this;
  out += other;
  return out;
}

ExactAngle& ExactAngle::operator+=(const ExactAngle& other) {
  rational_part_ += other.rational_part_;
  for (const auto& [name, c] : other.coeffs_) {
    auto [it, inserted] = coeffs_.emplace(name, c);
    if (!inserted) it->second += c;
  }
  drop_zeros();
  return *this;
}

ExactAngle ExactAngle::operator-(const ExactAngle& other) const {
  return *this + (-other);
}

ExactAngle ExactAngle::operator-() const {
  ExactAngle out;
  out.rational_part_ = -rational_part_;
  for (const auto& [name, c] : coeffs_) out.coeffs_.emplace(name, -c);
  return out;
}

ExactAngle ExactAngle::operator*(const Rational& s) const {
  ExactAngle out;
  if (s == 0) return out;
  out.rational_part_ = rational_part_ * s;
  for (const auto& [name, c] : coeffs_) out.coeffs_.emplace(name, c * s);
  return out;
}

std::string ExactAngle::str() const {
  std::ostringstream out;
  bool wrote = false;
  if (rational_part_ != 0 || coeffs_.empty()) {
    out << format_rational(rational_part_);
    wrote = true;
  }
  for (const auto& [name, c] : coeffs_) {
    if (wrote) {
      out << (c >= 0 ? " + " : " - ");
    } else if (c < 0) {
      out << '-';
    }
    Rational mag = c >= 0 ? c : Rational(-c);
    if (mag != 1) out << format_rational(mag) << '*';
    out << name;
    wrote = true;
  }
  return out.str();
}

RationalInterval eval_interval(const ExactAngle& a, const IrrationalBasis& basis,
                               unsigned precision_bits) {
  RationalInterval acc{a.rational_part(), a.rational_part()};
  for (const auto& [name, c] : a.coefficients()) {
    acc = acc + basis.approx(name, precision_bits) * c;
  }
  return acc;
}

namespace {

// Largest precision eval_interval can be asked for on this angle.
unsigned precision_limit(const ExactAngle& a, const IrrationalBasis& basis,
                         unsigned max_precision_bits) {
  unsigned limit = max_precision_bits;
  for (const auto& [name, c] : a.coefficients()) {
    unsigned entry_cap = basis.cap(name);
    if (entry_cap != 0) limit = std::min(limit, entry_cap);
  }
  return limit;
}

}  // namespace

ReducedAngle reduce_mod1(const ExactAngle& a, const IrrationalBasis& basis,
                         unsigned max_precision_bits) {
  ReducedAngle out;
  if (a.is_rational()) {
    const Rational& v = a.rational_part();
    if (is_integral(v)) {
      out.floor = out.ceil = numerator(v);
      out.nearest = out.floor;
      out.is_integer = true;
      return out;
    }
    out.floor = floor_rat(v);
    out.ceil = out.floor + 1;
    if (is_half_integral(v)) {
      out.is_half_integer = true;
      out.tie = true;
      return out;
    }
    auto [near, tie] = nearest_int(v);
    out.nearest = near;
    return out;
  }

  // Irrational value: by the independence declaration it is neither an
  // integer nor a half-integer, so refine until both facts are visible.
  unsigned limit = precision_limit(a, basis, max_precision_bits);
  unsigned bits = std::min(128u, limit);
  for (;;) {
    RationalInterval box = eval_interval(a, basis, bits);
    if (!box.contains_integer() && !box.contains_half_integer()) {
      out.floor = floor_rat(box.lo);
      out.ceil = out.floor + 1;
      out.nearest = floor_rat(box.lo + Rational(1, 2));
      out.bits_used = bits;
      return out;
    }
    if (bits >= limit) {
      throw PrecisionExhausted("reduce_mod1: cannot separate " + a.str() +
                               " from an integer or half-integer boundary at " +
                               std::to_string(bits) + " bits");
    }
    bits = std::min(bits * 2, limit);
  }
}

namespace detail {

// Floor only. Cheaper than reduce_mod1 when the rounding data is not needed.
std::pair<Integer, unsigned> certified_floor(const ExactAngle& a,
                                             const IrrationalBasis& basis,
                                             unsigned max_precision_bits) {
  if (a.is_rational()) return {floor_rat(a.rational_part()), 0};
  unsigned limit = precision_limit(a, basis, max_precision_bits);
  unsigned bits = std::min(128u, limit);
  for (;;) {
    RationalInterval box = eval_interval(a, basis, bits);
    if (!box.contains_integer()) return {floor_rat(box.lo), bits};
    if (bits >= limit) {
      throw PrecisionExhausted("floor of " + a.str() +
                               " straddles an integer at " +
                               std::to_string(bits) + " bits");
    }
    bits = std::min(bits * 2, limit);
  }
}

int sign_of(const ExactAngle& a, const IrrationalBasis& basis,
            unsigned max_precision_bits) {
  if (a.is_rational()) {
    const Rational& v = a.rational_part();
    return v == 0 ? 0 : (v > 0 ? 1 : -1);
  }
  unsigned limit = precision_limit(a, basis, max_precision_bits);
  unsigned bits = std::min(128u, limit);
  for (;;) {
    RationalInterval box = eval_interval(a, basis, bits);
    if (box.lo > 0) return 1;
    if (box.hi < 0) return -1;
    if (bits >= limit) {
      throw PrecisionExhausted("sign of " + a.str() + " undecided at " +
                               std::to_string(bits) + " bits");
    }
    bits = std::min(bits * 2, limit);
  }
}

}  // namespace detail

namespace {

// Plain LLL with delta = 3/4 on integer row vectors, Gram-Schmidt data
// recomputed after every mutation. Dimensions here are tiny.
void lll_reduce(std::vector<std::vector<Integer>>& rows) {
  const std::size_t m = rows.size();
  if (m < 2) return;
  const std::size_t dim = rows[0].size();

  auto dot = [&](const std::vector<Integer>& a,
                 const std::vector<Integer>& b) -> Rational {
    Integer s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += a[i] * b[i];
    return Rational(s, 1);
  };

  std::vector<std::vector<Rational>> mu(m, std::vector<Rational>(m, 0));
  std::vector<Rational> norm2(m, 0);

  auto gram_schmidt = [&]() {
    std::vector<std::vector<Rational>> star(m, std::vector<Rational>(dim, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t d = 0; d < dim; ++d) star[i][d] = Rational(rows[i][d], 1);
      for (std::size_t j = 0; j < i; ++j) {
        Rational proj = 0;
        for (std::size_t d = 0; d < dim; ++d) {
          proj += Rational(rows[i][d], 1) * star[j][d];
        }
        mu[i][j] = norm2[j] == 0 ? Rational(0) : proj / norm2[j];
        for (std::size_t d = 0; d < dim; ++d) star[i][d] -= mu[i][j] * star[j][d];
      }
      norm2[i] = 0;
      for (std::size_t d = 0; d < dim; ++d) norm2[i] += star[i][d] * star[i][d];
    }
  };

  gram_schmidt();
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < m && ++guard < 100000) {
    for (std::size_t j = k; j-- > 0;) {
      auto [r, tie] = nearest_int(mu[k][j]);
      (void)tie;
      if (r != 0) {
        for (std::size_t d = 0; d < dim; ++d) rows[k][d] -= r * rows[j][d];
        gram_schmidt();
      }
    }
    Rational lhs = norm2[k];
    Rational rhs = (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(rows[k], rows[k - 1]);
      gram_schmidt();
      k = k > 1 ? k - 1 : 1;
    }
  }
  (void)dot;
}

}  // namespace

std::optional<std::vector<Integer>> detect_integer_relation(
    const IrrationalBasis& basis, unsigned bits, const Integer& coeff_bound) {
  std::vector<std::string> names = basis.names();
  const std::size_t m = names.size();
  if (m == 0) return std::nullopt;

  unsigned usable = bits;
  for (const auto& name : names) {
    unsigned c = basis.cap(name);
    if (c != 0) usable = std::min(usable, c);
  }

  Integer scale = Integer(1) << usable;
  std::vector<Integer> anchors(m);
  for (std::size_t i = 0; i < m; ++i) {
    RationalInterval box = basis.approx(names[i], usable);
    Rational mid = (box.lo + box.hi) / 2;
    anchors[i] = nearest_int(mid * Rational(scale, 1)).first;
  }

  // Rows span the lattice of tuples (c_1..c_m, c_1 a_1 + ... + c_m a_m + t K).
  std::vector<std::vector<Integer>> rows(m + 1, std::vector<Integer>(m + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    rows[i][i] = 1;
    rows[i][m] = anchors[i];
  }
  rows[m][m] = scale;

  lll_reduce(rows);

  // A genuine relation leaves a residual on the order of the rounding noise,
  // far below the 2^usable scale.
  Integer residual_cap = 16 * Integer(m) * coeff_bound;
  for (const auto& row : rows) {
    bool nonzero = false;
    bool small = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (row[i] != 0) nonzero = true;
      if (abs(row[i]) > coeff_bound) small = false;
    }
    if (!nonzero || !small) continue;
    if (abs(row[m]) > residual_cap) continue;
    Integer combo = 0;
    for (std::size_t i = 0; i < m; ++i) combo += row[i] * anchors[i];
    Integer shift_scaled = row[m] - combo;
    if (shift_scaled % scale != 0) continue;
    std::vector<Integer> relation(row.begin(), row.begin() + m);
    relation.push_back(shift_scaled / scale);
    return relation;
  }
  return std::nullopt;
}

}  // namespace symcert
