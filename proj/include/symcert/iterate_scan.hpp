#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symcert/symplectic_path.hpp"

namespace symcert {

/// Fixed-point acceleration for iterate searches. Each plane's fractional
/// part is enclosed in 62-bit fixed point, so floor and fractional data for
/// iterate k follow from one multiplication. Every decision the enclosure
/// cannot certify falls back to exact symbolic arithmetic, so this layer can
/// only speed searches up, never change their answers.
class IterateScan {
 public:
  static constexpr unsigned kFracBits = 62;
  static constexpr std::uint64_t kOne = std::uint64_t(1) << kFracBits;

  IterateScan(const SymplecticPath& path, long max_k);

  const SymplecticPath& path() const { return *path_; }
  long max_k() const { return max_k_; }
  std::size_t planes() const { return path_->planes(); }

  /// Some plane angle of iterate k is an integer (decided symbolically).
  bool degenerate(long k) const;

  /// Enclosure [lo, hi] of frac(k lambda_j) in units of 2^-62, or nothing
  /// when the enclosure straddles an integer and the split is ambiguous.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> frac62(
      long k, std::size_t j) const;

  /// Exact floor of k lambda_j (fixed-point fast path, symbolic fallback).
  Integer floor_exact(long k, std::size_t j) const;

  /// Exact Conley-Zehnder index of iterate k. Throws DegenerateIterate.
  Integer cz(long k) const;

  /// cz(k) reduced into [0, modulus).
  long cz_residue(long k, long modulus) const;

  /// Exact test: sum over the tuple of frac(k_i lambda_j) < 1 for every j.
  /// Tuple entries must be non-degenerate iterates.
  bool tuple_fracs_below_one(const std::vector<long>& ks) const;

  /// Exact strict comparison frac(k lambda_j) < bound, bound in (0, 1].
  bool frac_below(long k, std::size_t j, const Rational& bound) const;

  /// Exact strict comparison frac(k lambda_j) > bound, bound in [0, 1).
  bool frac_above(long k, std::size_t j, const Rational& bound) const;

  /// Centered fractional part of every plane lies in (-epsilon, epsilon).
  bool near_return(long k, const Rational& epsilon) const;

 private:
  struct Plane {
    Integer base_floor;      // floor(lambda_j)
    std::uint64_t lo = 0;    // fixed-point lower bound of frac(lambda_j)
    std::uint64_t hi = 0;    // fixed-point upper bound
    bool rational = false;
    Integer rat_num, rat_den;  // lambda_j = rat_num / rat_den when rational
  };

  // Exact fractional part of k*lambda_j compared against a rational bound;
  // returns sign of (frac - bound).
  int frac_cmp_exact(long k, std::size_t j, const Rational& bound) const;
  bool sum_below_one_exact(const std::vector<long>& ks, std::size_t j) const;
  Integer floor_symbolic(long k, std::size_t j) const;

  const SymplecticPath* path_;
  long max_k_;
  std::vector<Plane> planes_;
};

}  // namespace symcert
