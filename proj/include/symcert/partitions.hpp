#pragma once

#include <optional>
#include <vector>

#include "symcert/rational.hpp"
#include "symcert/symplectic_path.hpp"

namespace symcert {

/// A partition k = k_1 + ... + k_r of an iterate order, with the index data
/// attached. defect = sum of part indices minus the index of the total; it
/// never exceeds (r-1)*n, and partitions attaining the bound are extremal.
struct Partition {
  std::vector<long> parts;
  long total = 0;
  std::vector<Integer> indices;
  Integer total_index;
  Integer defect_value;

  std::size_t length() const { return parts.size(); }
};

/// Index bookkeeping for the given parts (order preserved). Throws
/// DegenerateIterate when any part or the total is degenerate.
Partition make_partition(const SymplecticPath& path, const std::vector<long>& parts);

Integer defect(const SymplecticPath& path, const std::vector<long>& parts);

bool is_extremal(const SymplecticPath& path, const std::vector<long>& parts);

/// Shared bounded search for the least non-decreasing tuple (k_1,...,k_r),
/// parts in [1, max_iterate], whose fractional parts sum below one in every
/// plane; "least" means smallest part sum, then lexicographic. Degenerate
/// iterates are skipped; an optional per-part filter bans one index residue.
struct TupleSearchOptions {
  long r = 1;
  long max_iterate = 100000;
  std::optional<long> forbid_modulus;  // filter parts by index residue mod this
  long forbid_residue = 0;             // the banned residue class
  unsigned long long node_budget = 100000000ULL;
  std::optional<long> total_cap;       // inclusive bound on the part sum
};
std::optional<std::vector<long>> least_fracsum_tuple(const SymplecticPath& path,
                                                     const TupleSearchOptions& opt);

/// Bounded search for an extremal partition of length r. With the residue
/// constraint on, every part additionally satisfies index(part) != n mod 2N.
/// Returns the least witness in (sum, lex) order, or nothing; absence is a
/// bounded-search answer, never a disproof.
std::optional<Partition> find_extremal(const SymplecticPath& path, long r, const Integer& N,
                                       long max_iterate, bool residue_constraint);

/// For a path whose orbit closure fills the torus: least m with every
/// fractional part of m*lambda below 1/r (so the constant partition m+...+m
/// of length r is extremal) and index(m) = n-2 mod 2N. Throws NotToric when
/// the closure is a proper subgroup.
std::optional<long> find_toric_power(const SymplecticPath& path, long r, const Integer& N,
                                     long max_iterate);

}  // namespace symcert
