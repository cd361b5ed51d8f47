#include "symcert/condition_a.hpp"

#include <algorithm>

#include "symcert/errors.hpp"
#include "symcert/fourier_motzkin.hpp"
#include "symcert/partitions.hpp"

namespace symcert {

namespace {

/// All integer offset vectors z with |z_i| bounded by the l1 norm of relation
/// row i; any component meeting the unit cube has its offset in this box.
std::vector<std::vector<Integer>> offset_box(const IntMat& R) {
  std::vector<long> bound(R.rows);
  for (std::size_t i = 0; i < R.rows; ++i) {
    Integer l1 = 0;
    for (std::size_t j = 0; j < R.cols; ++j) l1 += abs(R.at(i, j));
    bound[i] = to_long(l1);
  }
  std::vector<std::vector<Integer>> out;
  std::vector<long> z(R.rows);
  for (std::size_t i = 0; i < R.rows; ++i) z[i] = -bound[i];
  for (;;) {
    out.emplace_back(z.begin(), z.end());
    std::size_t i = 0;
    while (i < z.size() && z[i] == bound[i]) {
      z[i] = -bound[i];
      ++i;
    }
    if (i == z.size()) break;
    ++z[i];
  }
  return out;
}

/// Equality rows Rx = z as inequality pairs over nvars >= n variables.
void push_equalities(std::vector<LinIneq>& sys, const IntMat& R,
                     const std::vector<Integer>& z, std::size_t nvars) {
  for (std::size_t i = 0; i < R.rows; ++i) {
    LinIneq up, lo;
    up.a.assign(nvars, Rational(0));
    lo.a.assign(nvars, Rational(0));
    for (std::size_t j = 0; j < R.cols; ++j) {
      up.a[j] = Rational(R.at(i, j), 1);
      lo.a[j] = Rational(-R.at(i, j), 1);
    }
    up.b = Rational(z[i], 1);
    lo.b = Rational(-z[i], 1);
    sys.push_back(std::move(up));
    sys.push_back(std::move(lo));
  }
}

}  // namespace

std::vector<CubeComponent> enumerate_components(const BaseGroup& g) {
  if (g.dim < 1)
    throw InvalidInput("component enumeration expects a positive-dimensional group");
  const std::size_t n = g.n;
  const IntMat& R = g.relation_lattice;

  std::vector<CubeComponent> comps;
  if (R.rows == 0) {
    CubeComponent whole;
    whole.q = 0;
    whole.distance = 0;
    whole.codim = 0;
    comps.push_back(std::move(whole));
    return comps;
  }

  for (const auto& z : offset_box(R)) {
    // Distance and feasibility in one program: minimize the max coordinate s
    // over the slice, i.e. maximize -s subject to Rx = z, 0 <= x <= 1, x <= s.
    std::vector<LinIneq> sys;
    const std::size_t nvars = n + 1;
    push_equalities(sys, R, z, nvars);
    for (std::size_t j = 0; j < n; ++j) {
      LinIneq up, lo, vs;
      up.a.assign(nvars, Rational(0));
      up.a[j] = 1;
      up.b = 1;
      lo.a.assign(nvars, Rational(0));
      lo.a[j] = -1;
      lo.b = 0;
      vs.a.assign(nvars, Rational(0));
      vs.a[j] = 1;
      vs.a[n] = -1;
      vs.b = 0;
      sys.push_back(std::move(up));
      sys.push_back(std::move(lo));
      sys.push_back(std::move(vs));
    }
    std::vector<Rational> objective(nvars, Rational(0));
    objective[n] = -1;
    LinOpt opt = fm_maximize(std::move(sys), objective);
    if (opt.status != LinOpt::Status::OPTIMAL) continue;
    CubeComponent c;
    c.offset = z;
    c.distance = -opt.value;
    c.codim = R.rows;
    comps.push_back(std::move(c));
  }
  std::sort(comps.begin(), comps.end(), [](const CubeComponent& a, const CubeComponent& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.offset < b.offset;
  });
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i].q = long(i);
  return comps;
}

CubeIntersection cube_intersection(const BaseGroup& g, long r) {
  if (r < 1) throw InvalidInput("cube exponent must be positive");
  if (g.dim < 1) throw InvalidInput("cube test expects a positive-dimensional group");
  const std::size_t n = g.n;
  const IntMat& R = g.relation_lattice;
  const Rational side(1, r);

  CubeIntersection out;
  out.margin = 0;

  for (const CubeComponent& comp : enumerate_components(g)) {
    // Maximize the face clearance delta subject to Rx = z and
    // delta <= x_j <= 1/r - delta.
    std::vector<LinIneq> sys;
    const std::size_t nvars = n + 1;
    push_equalities(sys, R, comp.offset, nvars);
    for (std::size_t j = 0; j < n; ++j) {
      LinIneq lo, up;
      lo.a.assign(nvars, Rational(0));
      lo.a[j] = -1;
      lo.a[n] = 1;
      lo.b = 0;  // delta - x_j <= 0
      up.a.assign(nvars, Rational(0));
      up.a[j] = 1;
      up.a[n] = 1;
      up.b = side;  // x_j + delta <= 1/r
      sys.push_back(std::move(lo));
      sys.push_back(std::move(up));
    }
    std::vector<Rational> objective(nvars, Rational(0));
    objective[n] = 1;
    LinOpt opt = fm_maximize(std::move(sys), objective);
    if (opt.status != LinOpt::Status::OPTIMAL || !(opt.value > 0)) continue;
    out.nonempty = true;
    out.margin = opt.value;
    out.witness.assign(opt.witness.begin(), opt.witness.begin() + long(n));
    out.component_offset = comp.offset;
    return out;
  }
  return out;
}

ConditionAVerdict decide_condition_a(const BaseGroup& g, long r) {
  ConditionAVerdict v;
  CubeIntersection cut = cube_intersection(g, r);
  if (cut.nonempty) {
    v.status = ConditionAVerdict::Status::YES;
    v.witness_point = cut.witness;
    v.scope_note = "the group meets the open cube; exact rational witness attached";
    return v;
  }
  if (g.codim() <= 1) {
    v.status = ConditionAVerdict::Status::NO;
    v.scope_note =
        "empty cube intersection is decisive in codimension at most one";
    return v;
  }
  v.status = ConditionAVerdict::Status::UNKNOWN;
  v.scope_note =
      "cube intersection is empty, but emptiness is not decisive in codimension "
      "two or higher";
  return v;
}

std::optional<std::vector<long>> search_condition_a(const SymplecticPath& path, long r,
                                                    long max_iterate,
                                                    unsigned precision_bits) {
  if (r < 1) throw InvalidInput("tuple length must be positive");
  SymplecticPath capped(path.lambdas(), path.basis_ptr(), precision_bits);
  TupleSearchOptions opt;
  opt.r = r;
  opt.max_iterate = max_iterate;
  return least_fracsum_tuple(capped, opt);
}

}  // namespace symcert
