#include "symcert/intmat.hpp"

#include "symcert/errors.hpp"

namespace symcert {

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<Integer> IntMat::row(std::size_t i) const {
  return std::vector<Integer>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

IntMat matmul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw InvalidInput("matmul: shape mismatch");
  IntMat out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        out.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    }
  }
  return out;
}

std::vector<Integer> apply(const IntMat& m, const std::vector<Integer>& v) {
  if (m.cols != v.size()) throw InvalidInput("apply: shape mismatch");
  std::vector<Integer> out(m.rows, Integer(0));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out[i] += m.at(i, j) * v[j];
  }
  return out;
}

namespace {

// Replaces rows r and i by unimodular combinations that put gcd(a(r,c), a(i,c))
// at (r, c) and zero at (i, c).
void gcd_rows(IntMat& m, std::size_t r, std::size_t i, std::size_t c) {
  Integer u = m.at(r, c), v = m.at(i, c);
  if (v == 0) return;
  Integer g, x, y;
  mpz_gcdext(g.backend().data(), x.backend().data(), y.backend().data(),
             u.backend().data(), v.backend().data());
  Integer us = u / g, vs = v / g;
  for (std::size_t j = 0; j < m.cols; ++j) {
    Integer mr = m.at(r, j), mi = m.at(i, j);
    m.at(r, j) = x * mr + y * mi;
    m.at(i, j) = -vs * mr + us * mi;
  }
}

}  // namespace

IntMat hnf_rows(IntMat m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    }
    for (std::size_t i = r + 1; i < m.rows; ++i) gcd_rows(m, r, i, c);
    if (m.at(r, c) < 0) {
      for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(m.at(i, c), m.at(r, c));
      if (q == 0) continue;
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(r, j);
    }
    ++r;
  }
  IntMat out(r, m.cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  }
  return out;
}

IntMat integer_kernel(const IntMat& m) {
  // Rows of t span {(m v, v) : v integer}; kernel vectors are the lattice
  // members whose first block vanishes, which HNF isolates as trailing rows.
  const std::size_t n = m.cols;
  IntMat t(n, m.rows + n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m.rows; ++i) t.at(j, i) = m.at(i, j);
    t.at(j, m.rows + j) = 1;
  }
  IntMat h = hnf_rows(std::move(t));
  IntMat kernel(0, n);
  std::vector<Integer> rows;
  std::size_t count = 0;
  for (std::size_t i = 0; i < h.rows; ++i) {
    bool lead_zero = true;
    for (std::size_t j = 0; j < m.rows && lead_zero; ++j) {
      lead_zero = h.at(i, j) == 0;
    }
    if (!lead_zero) continue;
    ++count;
    for (std::size_t j = 0; j < n; ++j) rows.push_back(h.at(i, m.rows + j));
  }
  kernel.rows = count;
  kernel.a = std::move(rows);
  return hnf_rows(std::move(kernel));
}

Integer abs_det(IntMat m) {
  if (m.rows != m.cols) throw InvalidInput("abs_det: matrix not square");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  Integer prev = 1;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m.at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  Integer d = m.at(n - 1, n - 1);
  (void)negate;
  return abs(d);
}

}  // namespace symcert
