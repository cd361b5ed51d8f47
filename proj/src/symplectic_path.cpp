#include "symcert/symplectic_path.hpp"

#include "symcert/errors.hpp"

namespace symcert {

SymplecticPath::SymplecticPath(std::vector<ExactAngle> lambdas,
                               std::shared_ptr<const IrrationalBasis> basis,
                               unsigned max_precision_bits)
    : lambdas_(std::move(lambdas)),
      basis_(std::move(basis)),
      max_precision_bits_(max_precision_bits) {
  if (lambdas_.empty()) throw InvalidInput("path needs at least one plane");
  if (!basis_) throw InvalidInput("path needs a basis (may be empty)");
  if (max_precision_bits_ == 0) throw InvalidInput("precision cap must be positive");
  for (const auto& l : lambdas_) {
    for (const auto& [name, c] : l.coefficients()) {
      if (!basis_->contains(name)) throw UnknownBasisName(name);
    }
  }
}

ExactAngle SymplecticPath::iterate_angle(std::size_t j, long k) const {
  return lambda(j) * Rational(k);
}

bool is_degenerate(const SymplecticPath& path, long k) {
  if (k <= 0) throw InvalidInput("iterate index must be positive");
  for (std::size_t j = 0; j < path.planes(); ++j) {
    const ExactAngle& l = path.lambda(j);
    if (l.is_rational() && is_integral(l.rational_part() * k)) return true;
  }
  return false;
}

Integer cz_index(const SymplecticPath& path, long k) {
  if (k <= 0) throw InvalidInput("iterate index must be positive");
  Integer total = 0;
  for (std::size_t j = 0; j < path.planes(); ++j) {
    ExactAngle angle = path.iterate_angle(j, k);
    if (angle.is_integer()) {
      throw DegenerateIterate("plane " + std::to_string(j) + " of iterate " +
                              std::to_string(k) + " has integral angle " +
                              angle.str());
    }
    auto [fl, bits] = detail::certified_floor(angle, path.basis(),
                                              path.max_precision_bits());
    (void)bits;
    // Non-integral angle, so ceil = floor + 1.
    total += 2 * fl + 1;
  }
  return total;
}

ExactAngle mean_index(const SymplecticPath& path, long k) {
  if (k <= 0) throw InvalidInput("iterate index must be positive");
  ExactAngle sum;
  for (std::size_t j = 0; j < path.planes(); ++j) sum += path.lambda(j);
  return sum * Rational(2 * Integer(k), 1);
}

Integer loop_part(const SymplecticPath& path, long k) {
  if (k <= 0) throw InvalidInput("iterate index must be positive");
  Integer total = 0;
  for (std::size_t j = 0; j < path.planes(); ++j) {
    ExactAngle angle = path.iterate_angle(j, k);
    ReducedAngle red = reduce_mod1(angle, path.basis(), path.max_precision_bits());
    if (red.is_integer) {
      throw DegenerateIterate("plane " + std::to_string(j) + " of iterate " +
                              std::to_string(k) + " has integral angle " +
                              angle.str());
    }
    if (red.tie) {
      throw LoopPartUndefined("plane " + std::to_string(j) + " of iterate " +
                              std::to_string(k) + " sits exactly between " +
                              red.floor.str() + " and " + red.ceil.str());
    }
    total += *red.nearest;
  }
  return 2 * total;
}

std::vector<FracEntry> endpoint_fracs(const SymplecticPath& path, long k,
                                      unsigned precision_bits) {
  if (k <= 0) throw InvalidInput("iterate index must be positive");
  if (precision_bits == 0) throw InvalidInput("precision_bits must be positive");
  std::vector<FracEntry> out;
  out.reserve(path.planes());
  for (std::size_t j = 0; j < path.planes(); ++j) {
    ExactAngle angle = path.iterate_angle(j, k);
    FracEntry entry;
    if (angle.is_integer()) {
      entry.exact_zero = true;
      entry.box = {Rational(0), Rational(0)};
      out.push_back(std::move(entry));
      continue;
    }
    if (angle.is_rational()) {
      Rational f = angle.rational_part() - Rational(floor_rat(angle.rational_part()), 1);
      entry.box = {f, f};
      out.push_back(std::move(entry));
      continue;
    }
    // Refine from the requested precision until the floor is certified, so
    // the reported box sits strictly inside (0, 1).
    unsigned bits = precision_bits;
    const unsigned limit = std::max(precision_bits, path.max_precision_bits());
    for (;;) {
      RationalInterval box = eval_interval(angle, path.basis(), bits);
      if (!box.contains_integer()) {
        Rational fl(floor_rat(box.lo), 1);
        entry.box = {box.lo - fl, box.hi - fl};
        break;
      }
      if (bits >= limit) {
        throw PrecisionExhausted("fractional part of " + angle.str() +
                                 " straddles an integer at " +
                                 std::to_string(bits) + " bits");
      }
      bits = std::min(bits * 2, limit);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

IterateSnapshot snapshot(const SymplecticPath& path, long k,
                         unsigned precision_bits) {
  IterateSnapshot snap;
  snap.k = k;
  snap.fracs = endpoint_fracs(path, k, precision_bits);
  snap.mean = mean_index(path, k);
  snap.degenerate = is_degenerate(path, k);
  if (!snap.degenerate) {
    snap.cz = cz_index(path, k);
    try {
      snap.loop = loop_part(path, k);
    } catch (const LoopPartUndefined&) {
      snap.loop_tie = true;
    }
  }
  return snap;
}

}  // namespace symcert
