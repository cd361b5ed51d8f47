#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "symcert/exact_angle.hpp"

namespace symcert {

/// An elliptic semi-simple path: the direct sum of n planar rotations, one per
/// symplectic eigenplane, each described by the full real lift lambda_j of its
/// rotation number (one unit per full counterclockwise turn). The path carries
/// the basis its angles refer to and the refinement cap used when a decision
/// needs interval arithmetic.
class SymplecticPath {
 public:
  SymplecticPath(std::vector<ExactAngle> lambdas,
                 std::shared_ptr<const IrrationalBasis> basis,
                 unsigned max_precision_bits = 512);

  std::size_t planes() const { return lambdas_.size(); }
  const ExactAngle& lambda(std::size_t j) const { return lambdas_.at(j); }
  const std::vector<ExactAngle>& lambdas() const { return lambdas_; }
  const IrrationalBasis& basis() const { return *basis_; }
  const std::shared_ptr<const IrrationalBasis>& basis_ptr() const { return basis_; }
  unsigned max_precision_bits() const { return max_precision_bits_; }

  /// The angle k * lambda_j of the k-th iterate in plane j.
  ExactAngle iterate_angle(std::size_t j, long k) const;

 private:
  std::vector<ExactAngle> lambdas_;
  std::shared_ptr<const IrrationalBasis> basis_;
  unsigned max_precision_bits_;
};

/// True when some k * lambda_j is an integer, decided symbolically.
bool is_degenerate(const SymplecticPath& path, long k);

/// Conley-Zehnder index of the k-th iterate: sum over planes of
/// floor(k lambda_j) + ceil(k lambda_j). Throws DegenerateIterate when some
/// plane angle is an integer.
Integer cz_index(const SymplecticPath& path, long k);

/// Mean index of the k-th iterate, exactly: 2k * sum lambda_j.
ExactAngle mean_index(const SymplecticPath& path, long k);

/// Loop part of the k-th iterate: 2 * sum round(k lambda_j). Throws
/// DegenerateIterate on integer angles and LoopPartUndefined on exact
/// half-integer angles.
Integer loop_part(const SymplecticPath& path, long k);

/// One fractional part k*lambda_j mod 1 as a certified enclosure in [0, 1).
struct FracEntry {
  RationalInterval box;     // subset of [0,1); [0,0] exactly when exact_zero
  bool exact_zero = false;  // k*lambda_j was an integer
};

/// Certified fractional parts of all plane angles of the k-th iterate. Width
/// of each box is at most 2^(1-precision_bits) * (1 + sum |c_m|); a box never
/// straddles 0, and an integral angle is reported as the exact zero.
std::vector<FracEntry> endpoint_fracs(const SymplecticPath& path, long k,
                                      unsigned precision_bits);

/// Everything the CLI prints about one iterate. Degenerate iterates carry
/// fracs and the mean index but no Conley-Zehnder index or loop part.
struct IterateSnapshot {
  long k = 0;
  std::vector<FracEntry> fracs;
  std::optional<Integer> cz;
  ExactAngle mean;
  std::optional<Integer> loop;
  bool degenerate = false;
  bool loop_tie = false;
};

IterateSnapshot snapshot(const SymplecticPath& path, long k,
                         unsigned precision_bits);

}  // namespace symcert
