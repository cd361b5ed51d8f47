#include "symcert/base_group.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "symcert/errors.hpp"
#include "symcert/fourier_motzkin.hpp"
#include "symcert/iterate_scan.hpp"

namespace symcert {

namespace {

Integer lcm_int(const Integer& a, const Integer& b) {
  using boost::multiprecision::gcd;
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// True when the cube [-eps, eps]^n meets no nonzero-offset component of the
/// relation-lattice preimage, i.e. {x : Rx = z} stays clear of the cube for
/// every integer offset z != 0. Exact rational feasibility per offset.
bool cube_separated(const IntMat& R, std::size_t n, const Rational& eps) {
  if (R.rows == 0) return true;
  std::vector<long> bound(R.rows);
  for (std::size_t i = 0; i < R.rows; ++i) {
    Integer l1 = 0;
    for (std::size_t j = 0; j < n; ++j) l1 += abs(R.at(i, j));
    bound[i] = to_long(Integer(floor_rat(eps * Rational(l1, 1))));
  }
  std::vector<long> z(R.rows, 0);
  for (std::size_t i = 0; i < R.rows; ++i) z[i] = -bound[i];
  for (;;) {
    bool all_zero = std::all_of(z.begin(), z.end(), [](long v) { return v == 0; });
    if (!all_zero) {
      std::vector<LinIneq> sys;
      for (std::size_t i = 0; i < R.rows; ++i) {
        LinIneq up, lo;
        up.a.resize(n);
        lo.a.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
          up.a[j] = Rational(R.at(i, j), 1);
          lo.a[j] = Rational(-R.at(i, j), 1);
        }
        up.b = Rational(z[i], 1);
        lo.b = Rational(-z[i], 1);
        sys.push_back(std::move(up));
        sys.push_back(std::move(lo));
      }
      for (std::size_t j = 0; j < n; ++j) {
        LinIneq up, lo;
        up.a.assign(n, Rational(0));
        lo.a.assign(n, Rational(0));
        up.a[j] = 1;
        up.b = eps;
        lo.a[j] = -1;
        lo.b = eps;
        sys.push_back(std::move(up));
        sys.push_back(std::move(lo));
      }
      if (fm_witness(std::move(sys), n)) return false;
    }
    // odometer step through the offset box
    std::size_t i = 0;
    while (i < z.size() && z[i] == bound[i]) {
      z[i] = -bound[i];
      ++i;
    }
    if (i == z.size()) return true;
    ++z[i];
  }
}

}  // namespace

BaseGroup compute_base_group(const SymplecticPath& path) {
  const std::size_t n = path.planes();

  std::set<std::string> name_set;
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [name, c] : path.lambda(j).coefficients()) {
      (void)c;
      name_set.insert(name);
    }
  const std::vector<std::string> names(name_set.begin(), name_set.end());
  const std::size_t m = names.size();

  // Clear all denominators at once; scaling columns by a positive integer
  // leaves the integer kernel unchanged.
  Integer den = 1;
  std::vector<std::vector<Rational>> coeff(n, std::vector<Rational>(m, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [name, c] : path.lambda(j).coefficients()) {
      std::size_t col = std::size_t(
          std::lower_bound(names.begin(), names.end(), name) - names.begin());
      coeff[j][col] = c;
      den = lcm_int(den, Integer(denominator(c)));
    }
  }
  IntMat ct(m, n);  // the transposed coefficient matrix, integerized
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t col = 0; col < m; ++col) {
      const Rational& c = coeff[j][col];
      ct.at(col, j) = Integer(numerator(c)) * (den / Integer(denominator(c)));
    }

  // Integer vectors killing every irrational coefficient column.
  IntMat K = integer_kernel(ct);
  const std::size_t d = K.rows;
  if (d == n) {
    throw FullyRationalSpectrum(
        "every rotation number is rational; the orbit closure is finite");
  }

  BaseGroup g;
  g.n = n;
  g.dim = n - d;

  if (d == 0) {
    g.relation_lattice = IntMat(0, n);
    g.loop_lattice = IntMat::identity(n);
    g.torsion_order = 1;
    return g;
  }

  // Inside that kernel, pick out the vectors sending the rational parts to an
  // integer: with s_i = K_i . q = p_i / D, the condition t.s in Z becomes an
  // integer kernel in one more variable, projected back down.
  std::vector<Rational> s(d, Rational(0));
  Integer D = 1;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      s[i] += Rational(K.at(i, j), 1) * path.lambda(j).rational_part();
    D = lcm_int(D, Integer(denominator(s[i])));
  }
  IntMat form(1, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    const Rational& si = s[i];
    form.at(0, i) = Integer(numerator(si)) * (D / Integer(denominator(si)));
  }
  form.at(0, d) = D;
  IntMat kd1 = integer_kernel(form);
  if (kd1.rows != d) throw Error("internal: unexpected kernel rank in group computation");
  IntMat T(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) T.at(i, j) = kd1.at(i, j);

  g.relation_lattice = hnf_rows(matmul(T, K));
  g.torsion_order = abs_det(T);
  g.loop_lattice = integer_kernel(g.relation_lattice);
  return g;
}

MaslovClassData maslov_class(const BaseGroup& g, const Integer& N) {
  if (N < 1) throw InvalidInput("chern number must be positive");
  using boost::multiprecision::gcd;
  Integer acc = N;
  for (std::size_t i = 0; i < g.loop_lattice.rows; ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < g.loop_lattice.cols; ++j) sum += g.loop_lattice.at(i, j);
    acc = gcd(acc, sum);
  }
  MaslovClassData out;
  out.generator_residue = acc % N;
  return out;
}

ConditionB1 check_condition_b1(const BaseGroup& g, const Integer& N) {
  ConditionB1 out;
  out.generator_residue = maslov_class(g, N).generator_residue;
  out.holds = out.generator_residue != 0;
  if (out.holds) {
    for (std::size_t i = 0; i < g.loop_lattice.rows; ++i) {
      Integer sum = 0;
      for (std::size_t j = 0; j < g.loop_lattice.cols; ++j) sum += g.loop_lattice.at(i, j);
      if (sum % N != 0) {
        out.witness = g.loop_lattice.row(i);
        break;
      }
    }
  }
  return out;
}

ConditionB2 check_condition_b2(const SymplecticPath& path, const Integer& N,
                               const Rational& epsilon, long max_iterate) {
  if (N < 1) throw InvalidInput("chern number must be positive");
  if (!(epsilon > 0 && epsilon < Rational(1, 4)))
    throw InvalidInput("epsilon must lie in (0, 1/4)");
  if (max_iterate < 1) throw InvalidInput("iterate bound must be positive");

  BaseGroup g = compute_base_group(path);

  ConditionB2 out;
  out.epsilon_used = epsilon;
  if (!g.connected()) {
    out.status = ConditionB2::Status::NOT_APPLICABLE;
    return out;
  }
  if (N == 1) {
    // The loop part is always even, so divisibility by 2N = 2 never fails.
    out.status = ConditionB2::Status::FAILS_UP_TO_BOUND;
    out.bound = max_iterate;
    return out;
  }

  // Shrink the cube until it is a certified neighborhood: no component of the
  // preimage other than the one through the origin may touch it.
  Rational eps = epsilon;
  while (!cube_separated(g.relation_lattice, g.n, eps)) eps /= 2;
  out.epsilon_used = eps;
  out.bound = max_iterate;

  IterateScan scan(path, max_iterate);
  const Integer two_n_chern = 2 * N;
  for (long k = 1; k <= max_iterate; ++k) {
    if (scan.degenerate(k)) continue;
    if (!scan.near_return(k, eps)) continue;
    Integer loop = loop_part(path, k);
    if (loop % two_n_chern != 0) {
      out.status = ConditionB2::Status::HOLDS;
      out.witness_k = k;
      out.loop_at_witness = loop;
      return out;
    }
  }
  out.status = ConditionB2::Status::FAILS_UP_TO_BOUND;
  return out;
}

}  // namespace symcert
