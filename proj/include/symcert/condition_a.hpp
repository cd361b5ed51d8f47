#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symcert/base_group.hpp"
#include "symcert/rational.hpp"
#include "symcert/symplectic_path.hpp"

namespace symcert {

/// One connected piece of the orbit-closure preimage inside the unit cube:
/// the polytope {x in [0,1]^n : Bx = offset}, B the relation rows.
struct CubeComponent {
  long q = 0;                   // position in the sorted listing
  std::vector<Integer> offset;  // one integer per relation row
  Rational distance;            // max-norm distance from the origin
  std::size_t codim = 0;        // number of relation rows
};

/// Every component of the preimage in [0,1]^n, sorted by distance from the
/// origin with ties broken by offset; entry 0 is the piece through the origin.
std::vector<CubeComponent> enumerate_components(const BaseGroup& g);

struct CubeIntersection {
  bool nonempty = false;
  std::vector<Rational> witness;  // group point strictly inside (0, 1/r)^n
  Rational margin;                // its clearance to the cube faces
  std::optional<std::vector<Integer>> component_offset;
};

/// Exact decision of "the group meets the open cube (0, 1/r)^n", through a
/// margin-maximizing rational program on every component. A positive optimal
/// margin is the nonemptiness certificate.
CubeIntersection cube_intersection(const BaseGroup& g, long r);

struct ConditionAVerdict {
  enum class Status { YES, NO, UNKNOWN };
  Status status = Status::UNKNOWN;
  std::optional<std::vector<Rational>> witness_point;
  std::string scope_note;
};

/// YES whenever the cube test is nonempty. Emptiness is only decisive in
/// codimension at most one; beyond that the verdict is UNKNOWN.
ConditionAVerdict decide_condition_a(const BaseGroup& g, long r);

/// Bounded search for iterates k_1 <= ... <= k_r, each at most max_iterate,
/// whose fractional parts sum below one in every plane. Least witness in
/// (sum, lex) order, or nothing; certified exactly.
std::optional<std::vector<long>> search_condition_a(const SymplecticPath& path, long r,
                                                    long max_iterate,
                                                    unsigned precision_bits);

}  // namespace symcert
