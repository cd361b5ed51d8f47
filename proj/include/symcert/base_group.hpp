#pragma once

#include <optional>
#include <vector>

#include "symcert/intmat.hpp"
#include "symcert/rational.hpp"
#include "symcert/symplectic_path.hpp"

namespace symcert {

/// Closure of the iterate orbit on the n-torus, described by lattices.
/// relation_lattice rows span {v in Z^n : v.lambda is an integer}; the group
/// is the common zero set of those characters. loop_lattice rows span the
/// integer points of the subspace the relation rows annihilate over Q, i.e.
/// the homotopy classes of loops inside the identity component.
struct BaseGroup {
  std::size_t n = 0;
  IntMat relation_lattice;  // HNF rows, rank n - dim
  IntMat loop_lattice;      // HNF rows, rank dim
  std::size_t dim = 0;
  Integer torsion_order = 1;  // number of connected components

  bool connected() const { return torsion_order == 1; }
  std::size_t codim() const { return n - dim; }
};

/// Derives the orbit-closure group from the structured rotation numbers.
/// Exact: a vector v annihilates lambda precisely when it kills every
/// irrational coefficient column and sends the rational parts to an integer.
/// Throws FullyRationalSpectrum when no irrational part is present at all.
BaseGroup compute_base_group(const SymplecticPath& path);

/// The subgroup of Z_N generated by coordinate sums of loop generators,
/// reported through its canonical generator in [0, N) (0 = trivial subgroup).
struct MaslovClassData {
  Integer generator_residue;
};
MaslovClassData maslov_class(const BaseGroup& g, const Integer& N);

struct ConditionB1 {
  bool holds = false;
  Integer generator_residue;  // generator of the coordinate-sum subgroup of Z_N
  std::optional<std::vector<Integer>> witness;  // loop vector with sum not 0 mod N
};

/// Holds when some loop generator has coordinate sum not divisible by N.
/// Always fails for N = 1.
ConditionB1 check_condition_b1(const BaseGroup& g, const Integer& N);

struct ConditionB2 {
  enum class Status { HOLDS, FAILS_UP_TO_BOUND, NOT_APPLICABLE };
  Status status = Status::FAILS_UP_TO_BOUND;
  std::optional<long> witness_k;
  std::optional<Integer> loop_at_witness;
  Rational epsilon_used;  // after any halving forced by the separation check
  long bound = 0;         // iterate range actually scanned
};

/// Searches k <= max_iterate whose centered fractional parts all lie in
/// (-epsilon, epsilon) and whose loop part is not divisible by 2N. The
/// epsilon cube is first shrunk until it meets only the identity component of
/// the orbit-closure preimage, so "near the identity" is certified, not
/// assumed. NOT_APPLICABLE when the group is disconnected; a miss is
/// FAILS_UP_TO_BOUND, never a disproof.
ConditionB2 check_condition_b2(const SymplecticPath& path, const Integer& N,
                               const Rational& epsilon, long max_iterate);

}  // namespace symcert
