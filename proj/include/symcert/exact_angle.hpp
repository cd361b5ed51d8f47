#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symcert/rational.hpp"

namespace symcert {

/// One named irrational constant with a certified enclosure provider.
/// refine(bits) must return an interval containing the constant of width
/// at most 2^(1-bits). max_bits == 0 means the entry refines without limit.
struct BasisEntry {
  std::string name;
  std::function<RationalInterval(unsigned bits)> refine;
  unsigned max_bits = 0;
};

/// A declared set of irrational constants, assumed rationally independent
/// together with 1. The declaration is trusted; detect_integer_relation
/// offers a heuristic cross-check that can warn but never alters inputs.
class IrrationalBasis {
 public:
  /// Entry backed by an exact decimal literal. The literal is trusted to be
  /// within 2^-declared_bits of the true constant, and that radius is the
  /// best the entry can ever serve.
  void add_decimal(const std::string& name, const std::string& decimal,
                   unsigned declared_bits);

  /// Entry for sqrt(radicand), radicand a positive non-square rational.
  /// Refines without limit.
  void add_sqrt(const std::string& name, const Rational& radicand);

  void add(BasisEntry entry);

  bool contains(const std::string& name) const;

  /// Interval of width <= 2^(1-bits). Throws UnknownBasisName or, when bits
  /// exceeds the entry's cap, PrecisionExhausted.
  RationalInterval approx(const std::string& name, unsigned bits) const;

  /// Precision cap in bits for an entry, 0 meaning unlimited.
  unsigned cap(const std::string& name) const;

  std::vector<std::string> names() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, BasisEntry> entries_;
};

/// A real number of the form q + sum_m c_m * alpha_m with q, c_m rational and
/// alpha_m entries of an IrrationalBasis. Canonical form: zero coefficients
/// are never stored, so coefficients().empty() iff the value is rational.
class ExactAngle {
 public:
  ExactAngle() = default;
  explicit ExactAngle(Rational rational_part);
  ExactAngle(Rational rational_part, std::map<std::string, Rational> coeffs);

  static ExactAngle multiple(const std::string& basis_name, const Rational& coeff);

  const Rational& rational_part() const { return rational_part_; }
  const std::map<std::string, Rational>& coefficients() const { return coeffs_; }

  bool is_rational() const { return coeffs_.empty(); }
  /// Exact integrality test, sound under the independence declaration.
  bool is_integer() const { return is_rational() && is_integral(rational_part_); }
  bool is_half_integer() const {
    return is_rational() && is_half_integral(rational_part_);
  }
  bool is_zero() const { return is_rational() && rational_part_ == 0; }

  ExactAngle operator+(const ExactAngle& other) const;
  ExactAngle operator-(const ExactAngle& other) const;
  ExactAngle operator-() const;
  ExactAngle operator*(const Rational& s) const;
  ExactAngle& operator+=(const ExactAngle& other);

  bool operator==(const ExactAngle& other) const {
    return rational_part_ == other.rational_part_ && coeffs_ == other.coeffs_;
  }

  /// Human-readable form like "-3/2 + 2*alpha".
  std::string str() const;

 private:
  void drop_zeros();

  Rational rational_part_ = 0;
  std::map<std::string, Rational> coeffs_;
};

/// Certified enclosure of the angle's value; width is at most
/// 2^(1-precision_bits) * (1 + sum |c_m|). Throws PrecisionExhausted when a
/// basis entry cannot serve precision_bits.
RationalInterval eval_interval(const ExactAngle& a, const IrrationalBasis& basis,
                               unsigned precision_bits);

/// Floor, ceiling and nearest-integer data for an angle, decided exactly for
/// rational angles and by interval refinement otherwise.
struct ReducedAngle {
  Integer floor;
  Integer ceil;
  std::optional<Integer> nearest;  // empty exactly when tie is set
  bool tie = false;                // value sits exactly on z + 1/2
  bool is_integer = false;
  bool is_half_integer = false;
  unsigned bits_used = 0;  // 0 when no refinement was needed
};

/// Refinement starts at 128 bits and doubles up to max_precision_bits (and
/// never past an entry's own cap); throws PrecisionExhausted when floor or
/// nearest cannot be separated from a boundary within those limits.
ReducedAngle reduce_mod1(const ExactAngle& a, const IrrationalBasis& basis,
                         unsigned max_precision_bits);

namespace detail {
/// Certified floor alone, without the rounding data reduce_mod1 carries.
/// Returns the floor and the refinement bits used (0 for rational input).
std::pair<Integer, unsigned> certified_floor(const ExactAngle& a,
                                             const IrrationalBasis& basis,
                                             unsigned max_precision_bits);

/// Sign of the value as -1, 0 or +1. Exact for rational angles; irrational
/// angles (never zero under the independence declaration) are refined until
/// the enclosure excludes zero.
int sign_of(const ExactAngle& a, const IrrationalBasis& basis,
            unsigned max_precision_bits);
}  // namespace detail

/// Heuristic search for a small integer relation c_1*alpha_1 + ... +
/// c_m*alpha_m + c_0 = 0 among the declared constants, via lattice reduction
/// on scaled approximations. A returned vector (c_1, ..., c_m, c_0) is a
/// WARNING that the independence declaration looks wrong; it is never acted
/// on automatically. Entries are capped at coeff_bound in absolute value.
std::optional<std::vector<Integer>> detect_integer_relation(
    const IrrationalBasis& basis, unsigned bits, const Integer& coeff_bound);

}  // namespace symcert
