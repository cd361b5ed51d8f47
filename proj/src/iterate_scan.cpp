#include "symcert/iterate_scan.hpp"

#include "symcert/errors.hpp"

namespace symcert {

namespace {

using u128 = unsigned __int128;

std::uint64_t to_u64(const Integer& v) {
  return static_cast<std::uint64_t>(v);
}

}  // namespace

IterateScan::IterateScan(const SymplecticPath& path, long max_k)
    : path_(&path), max_k_(max_k) {
  if (max_k < 1) throw InvalidInput("scan bound must be positive");
  planes_.reserve(path.planes());
  const Rational one_scale(Integer(1) << kFracBits, 1);
  for (std::size_t j = 0; j < path.planes(); ++j) {
    const ExactAngle& l = path.lambda(j);
    Plane plane;
    if (l.is_rational()) {
      plane.rational = true;
      plane.rat_num = numerator(l.rational_part());
      plane.rat_den = denominator(l.rational_part());
      plane.base_floor = floor_rat(l.rational_part());
      Rational f = l.rational_part() - Rational(plane.base_floor, 1);
      plane.lo = to_u64(floor_rat(f * one_scale));
      Integer hi = ceil_rat(f * one_scale);
      plane.hi = hi > Integer(kOne) ? kOne : to_u64(hi);
    } else {
      auto [fl, bits] = detail::certified_floor(l, path.basis(),
                                                path.max_precision_bits());
      plane.base_floor = fl;
      unsigned used = bits == 0 ? 32 : bits;
      RationalInterval box = eval_interval(l, path.basis(), used);
      Rational shift(fl, 1);
      Rational lo = (box.lo - shift) * one_scale;
      Rational hi = (box.hi - shift) * one_scale;
      Integer ilo = floor_rat(lo);
      Integer ihi = ceil_rat(hi);
      plane.lo = ilo < 0 ? 0 : to_u64(ilo);
      plane.hi = ihi > Integer(kOne) ? kOne : to_u64(ihi);
    }
    planes_.push_back(std::move(plane));
  }
}

bool IterateScan::degenerate(long k) const {
  for (const Plane& plane : planes_) {
    if (plane.rational && Integer(k) % plane.rat_den == 0) return true;
  }
  return false;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> IterateScan::frac62(
    long k, std::size_t j) const {
  const Plane& plane = planes_[j];
  u128 lo = u128(k) * plane.lo;
  u128 hi = u128(k) * plane.hi;
  u128 qlo = lo >> kFracBits;
  u128 qhi = hi >> kFracBits;
  if (qlo != qhi) return std::nullopt;
  const u128 mask = (u128(1) << kFracBits) - 1;
  return std::make_pair(std::uint64_t(lo & mask), std::uint64_t(hi & mask));
}

Integer IterateScan::floor_symbolic(long k, std::size_t j) const {
  return detail::certified_floor(path_->iterate_angle(j, k), path_->basis(),
                                 path_->max_precision_bits())
      .first;
}

Integer IterateScan::floor_exact(long k, std::size_t j) const {
  const Plane& plane = planes_[j];
  if (plane.rational) {
    return floor_div(Integer(k) * plane.rat_num, plane.rat_den);
  }
  u128 lo = u128(k) * plane.lo;
  u128 hi = u128(k) * plane.hi;
  if ((lo >> kFracBits) == (hi >> kFracBits)) {
    return Integer(k) * plane.base_floor +
           Integer(std::uint64_t(lo >> kFracBits));
  }
  return floor_symbolic(k, j);
}

Integer IterateScan::cz(long k) const {
  if (degenerate(k)) {
    throw DegenerateIterate("iterate " + std::to_string(k) +
                            " has an integral plane angle");
  }
  Integer total = 0;
  for (std::size_t j = 0; j < planes_.size(); ++j) {
    total += 2 * floor_exact(k, j) + 1;
  }
  return total;
}

long IterateScan::cz_residue(long k, long modulus) const {
  if (modulus <= 0) throw InvalidInput("modulus must be positive");
  Integer r = cz(k) % modulus;
  if (r < 0) r += modulus;
  return to_long(r);
}

bool IterateScan::sum_below_one_exact(const std::vector<long>& ks,
                                      std::size_t j) const {
  // floor(sum k_i lambda_j) equals sum floor(k_i lambda_j) exactly when the
  // fractional parts add to less than one.
  long total = 0;
  Integer floor_sum = 0;
  for (long k : ks) {
    total += k;
    floor_sum += floor_exact(k, j);
  }
  return floor_exact(total, j) == floor_sum;
}

bool IterateScan::tuple_fracs_below_one(const std::vector<long>& ks) const {
  for (std::size_t j = 0; j < planes_.size(); ++j) {
    bool certified = true;
    u128 sum_lo = 0, sum_hi = 0;
    for (long k : ks) {
      auto f = frac62(k, j);
      if (!f) {
        certified = false;
        break;
      }
      sum_lo += f->first;
      sum_hi += f->second;
    }
    if (certified) {
      if (sum_hi < u128(kOne)) continue;
      if (sum_lo >= u128(kOne)) return false;
    }
    if (!sum_below_one_exact(ks, j)) return false;
  }
  return true;
}

int IterateScan::frac_cmp_exact(long k, std::size_t j,
                                const Rational& bound) const {
  ExactAngle angle = path_->iterate_angle(j, k);
  Integer fl = floor_exact(k, j);
  ExactAngle diff = angle - ExactAngle(Rational(fl, 1) + bound);
  return detail::sign_of(diff, path_->basis(), path_->max_precision_bits());
}

bool IterateScan::frac_below(long k, std::size_t j, const Rational& bound) const {
  auto f = frac62(k, j);
  if (f) {
    Rational scaled = bound * Rational(Integer(1) << kFracBits, 1);
    if (Rational(Integer(f->second), 1) < scaled) return true;
    if (Rational(Integer(f->first), 1) >= scaled) return false;
  }
  return frac_cmp_exact(k, j, bound) < 0;
}

bool IterateScan::frac_above(long k, std::size_t j, const Rational& bound) const {
  auto f = frac62(k, j);
  if (f) {
    Rational scaled = bound * Rational(Integer(1) << kFracBits, 1);
    if (Rational(Integer(f->first), 1) > scaled) return true;
    if (Rational(Integer(f->second), 1) <= scaled) return false;
  }
  return frac_cmp_exact(k, j, bound) > 0;
}

bool IterateScan::near_return(long k, const Rational& epsilon) const {
  for (std::size_t j = 0; j < planes_.size(); ++j) {
    if (frac_below(k, j, epsilon)) continue;
    if (frac_above(k, j, Rational(1) - epsilon)) continue;
    return false;
  }
  return true;
}

}  // namespace symcert
