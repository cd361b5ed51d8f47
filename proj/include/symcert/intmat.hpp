#pragma once

#include <cstddef>
#include <vector>

#include "symcert/rational.hpp"

namespace symcert {

/// Dense integer matrix, row major. Sizes here are tiny (a handful of rows),
/// so clarity wins over sparsity.
struct IntMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> a;

  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Integer(0)) {}

  Integer& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMat identity(std::size_t n);

  std::vector<Integer> row(std::size_t i) const;
  bool operator==(const IntMat& other) const = default;
};

IntMat matmul(const IntMat& x, const IntMat& y);
std::vector<Integer> apply(const IntMat& m, const std::vector<Integer>& v);

/// Row-style Hermite normal form of the row lattice of m: zero rows dropped,
/// pivots positive, entries above each pivot reduced into [0, pivot).
IntMat hnf_rows(IntMat m);

/// Basis of the full integer kernel {v : m v = 0}, as HNF rows. The result is
/// saturated: every integer vector of the kernel subspace lies in its span.
IntMat integer_kernel(const IntMat& m);

/// Absolute determinant of a square matrix, by fraction-free elimination.
Integer abs_det(IntMat m);

}  // namespace symcert
