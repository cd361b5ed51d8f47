#pragma once

#include <optional>

#include "symcert/base_group.hpp"
#include "symcert/condition_a.hpp"
#include "symcert/partitions.hpp"

namespace symcert {

/// The line direction of a one-dimensional orbit closure in two planes,
/// read off the relation row (s1, s2) after stripping its content: the
/// closure's identity component is the line s1*x1 + s2*x2 = const of slope
/// s = -s1/s2. Both coefficients are nonzero for totally non-degenerate
/// input (a zero would make one angle rational).
struct SlopeData {
  long s1 = 0;
  long s2 = 0;
  Rational s;
  bool connected = true;
};

/// Throws WrongDimension unless n = 2 and the closure has dimension one,
/// DegenerateInput when a relation coefficient vanishes.
SlopeData slope(const BaseGroup& g);

/// Whether the slope falls in the short list of directions for which no
/// residue-admissible length-3 splitting exists (N = 2) respectively the
/// corresponding list for N = 3. Throws UnsupportedN for any other N.
bool blacklisted_slope(const SlopeData& sd, const Integer& N);

/// Index residue mod 2N shared by every iterate whose endpoint lies on the
/// given component; nothing if no endpoint lands on it within max_iterate.
/// Requires n = 2, closure dimension one, and the divisibility facts that
/// make the residue a function of the component in the first place: 2N must
/// divide the index of every loop in the closure, and the integer slice
/// value of the angle vector must move in steps of 2N as well. Throws
/// HypothesesNotMet when either fails.
std::optional<long> component_index_residue(const SymplecticPath& path,
                                            const CubeComponent& component,
                                            const Integer& N, long max_iterate);

/// Bounded search for an extremal length-3 partition all of whose parts have
/// index different from 2 mod 2N. For a one-dimensional closure the slope
/// classification prunes hopeless inputs: a failed cube intersection or a
/// certified all-components residue obstruction returns nothing without any
/// sweep. Everything else delegates to find_extremal with the residue
/// constraint on.
std::optional<Partition> find_length3(const SymplecticPath& path, const Integer& N,
                                      long max_iterate);

}  // namespace symcert
