#include "symcert/dim4.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "symcert/errors.hpp"
#include "symcert/fourier_motzkin.hpp"
#include "symcert/iterate_scan.hpp"

namespace symcert {

namespace {

long small_chern(const Integer& N) {
  if (N < 1 || N > 1000000) throw InvalidInput("N out of range");
  return to_long(N);
}

// Bezout pair for (a, b): returns g = gcd(|a|, |b|) with a*x + b*y = g.
long egcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return std::labs(a);
  }
  long x1 = 0, y1 = 0;
  long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  if (g < 0) {
    g = -g;
    x = -x;
    y = -y;
  }
  return g;
}

// One pass over the orbit: slice values z_k and the index residue mod 2N per
// slice. Residues are only a function of the slice when two divisibility
// facts hold; when one fails the scan reports it instead of scanning.
struct ResidueScan {
  bool hypotheses_ok = false;
  std::string failure;
  std::map<Integer, long> residue_by_offset;
};

ResidueScan scan_residues(const SymplecticPath& path, const BaseGroup& g,
                          const Integer& N, long bound) {
  ResidueScan out;
  long nn = small_chern(N);
  long modulus = 2 * nn;

  // Every loop inside the closure must have index divisible by 2N, else two
  // endpoints on one component can differ.
  for (std::size_t i = 0; i < g.loop_lattice.rows; ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < g.loop_lattice.cols; ++j) sum += g.loop_lattice.at(i, j);
    if (sum % nn != 0) {
      out.failure = "a loop in the orbit closure has index 2*(" + sum.str() +
                    "), not divisible by " + std::to_string(modulus);
      return out;
    }
  }

  const std::vector<Integer> r = g.relation_lattice.row(0);
  ExactAngle combo;
  for (std::size_t j = 0; j < 2; ++j) combo += path.lambda(j) * Rational(r[j]);
  if (!combo.is_rational() || !is_integral(combo.rational_part()))
    throw Error("internal: relation row does not annihilate the angle vector");
  Integer m0 = numerator(combo.rational_part());

  // Revisits of one slice happen at multiples of content/gcd(m0, content);
  // each such revisit shifts the index by 2*step*(w dot 1) up to loop terms,
  // where w is a Bezout pair for the relation row.
  long w0 = 0, w1 = 0;
  long content = egcd(to_long(r[0]), to_long(r[1]), w0, w1);
  if (r[0] * w0 + r[1] * w1 != content)
    throw Error("internal: Bezout pair check failed");
  Integer step = 0;
  if (m0 != 0) step = m0 / gcd(abs(m0), Integer(content));
  if (step * (w0 + w1) % nn != 0) {
    out.failure = "the angle vector has slice value " + m0.str() +
                  ", which shifts index residues between revisits of a slice "
                  "by an amount not divisible by " + std::to_string(modulus);
    return out;
  }
  out.hypotheses_ok = true;

  IterateScan scan(path, bound);
  std::map<Integer, int> hits;
  for (long k = 1; k <= bound; ++k) {
    if (scan.degenerate(k)) continue;
    Integer z = m0 * k;
    for (std::size_t j = 0; j < 2; ++j) z -= r[j] * scan.floor_exact(k, j);
    int& count = hits[z];
    if (count >= 100) continue;  // constancy is proven; spot checks suffice
    ++count;
    long res = scan.cz_residue(k, modulus);
    auto it = out.residue_by_offset.find(z);
    if (it == out.residue_by_offset.end()) {
      out.residue_by_offset.emplace(z, res);
    } else if (it->second != res) {
      throw Error("internal: index residue varies along one component");
    }
  }
  return out;
}

// Largest margin of a triple of points constrained to the given slices and
// to the open cube condition of a length-3 splitting.
bool admits_margin(const IntMat& relation, const std::vector<Integer>& zs) {
  const std::size_t n = 2;
  const std::size_t parts = zs.size();
  const std::size_t delta = parts * n;
  const std::size_t nvars = delta + 1;
  std::vector<LinIneq> sys;
  for (std::size_t i = 0; i < parts; ++i) {
    std::vector<Rational> a(nvars, Rational(0));
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = Rational(relation.at(0, j));
    sys.push_back({a, Rational(zs[i])});
    for (auto& c : a) c = -c;
    sys.push_back({a, Rational(-zs[i])});
  }
  for (std::size_t i = 0; i < parts; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> a(nvars, Rational(0));
      a[i * n + j] = -1;
      a[delta] = 1;
      sys.push_back({a, Rational(0)});
    }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> a(nvars, Rational(0));
    for (std::size_t i = 0; i < parts; ++i) a[i * n + j] = 1;
    a[delta] = 1;
    sys.push_back({a, Rational(1)});
  }
  std::vector<Rational> obj(nvars, Rational(0));
  obj[delta] = 1;
  LinOpt best = fm_maximize(sys, obj);
  return best.status == LinOpt::Status::OPTIMAL && best.value > 0;
}

}  // namespace

SlopeData slope(const BaseGroup& g) {
  if (g.n != 2 || g.dim != 1)
    throw WrongDimension("the slope needs two planes and a one-dimensional closure, got n = " +
                         std::to_string(g.n) + ", dim = " + std::to_string(g.dim));
  std::vector<Integer> row = g.relation_lattice.row(0);
  if (row[0] == 0 || row[1] == 0)
    throw DegenerateInput(
        "a vanishing relation coefficient means one angle is rational, so some "
        "iterate is degenerate and the slope is not defined");
  Integer content = gcd(abs(row[0]), abs(row[1]));
  SlopeData sd;
  sd.s1 = to_long(row[0] / content);
  sd.s2 = to_long(row[1] / content);
  sd.s = Rational(-row[0] / content, row[1] / content);
  sd.connected = (g.torsion_order == 1);
  return sd;
}

bool blacklisted_slope(const SlopeData& sd, const Integer& N) {
  if (N == 2) {
    static const Rational list[] = {Rational(1),      Rational(-1), Rational(3),
                                    Rational(1, 3),   Rational(-2), Rational(-1, 2)};
    return std::find(std::begin(list), std::end(list), sd.s) != std::end(list);
  }
  if (N == 3) {
    static const Rational list[] = {Rational(-1),   Rational(2),     Rational(-2),
                                    Rational(1, 2), Rational(-1, 2)};
    return std::find(std::begin(list), std::end(list), sd.s) != std::end(list);
  }
  throw UnsupportedN(
      "the slope lists cover N = 2 and N = 3 only; larger values are extremely "
      "hypothetical in four dimensions and are not classified here. Run "
      "find_extremal with the residue constraint instead.");
}

std::optional<long> component_index_residue(const SymplecticPath& path,
                                            const CubeComponent& component,
                                            const Integer& N, long max_iterate) {
  if (max_iterate < 1) throw InvalidInput("max_iterate must be positive");
  BaseGroup g = compute_base_group(path);
  if (g.n != 2 || g.dim != 1)
    throw WrongDimension("component residues need two planes and a one-dimensional closure");
  if (component.offset.size() != 1)
    throw InvalidInput("component offset does not match a one-dimensional closure");
  ResidueScan rs = scan_residues(path, g, N, max_iterate);
  if (!rs.hypotheses_ok) throw HypothesesNotMet(rs.failure);
  auto it = rs.residue_by_offset.find(component.offset[0]);
  if (it == rs.residue_by_offset.end()) return std::nullopt;
  return it->second;
}

std::optional<Partition> find_length3(const SymplecticPath& path, const Integer& N,
                                      long max_iterate) {
  if (path.planes() != 2)
    throw WrongDimension("the length-3 search specializes to two planes, got " +
                         std::to_string(path.planes()));
  if (max_iterate < 1) throw InvalidInput("max_iterate must be positive");
  BaseGroup g = compute_base_group(path);
  if (g.dim == 2) return find_extremal(path, 3, N, max_iterate, true);

  SlopeData sd = slope(g);
  blacklisted_slope(sd, N);  // N gate; the verdict below is derived, not looked up
  if (decide_condition_a(g, 3).status == ConditionAVerdict::Status::NO)
    return std::nullopt;

  // Component screen: a witness triple must put its three endpoints on
  // slices of non-banned residue with room to spare. If no multiset of such
  // slices has positive margin, no witness exists at any bound and the sweep
  // is pointless. Unresolved slices count as usable to stay conservative.
  ResidueScan rs = scan_residues(path, g, N, std::min(max_iterate, 20000L));
  if (rs.hypotheses_ok) {
    long banned = 2 % (2 * small_chern(N));
    std::vector<CubeComponent> comps = enumerate_components(g);
    std::vector<Integer> open_slices;
    for (const CubeComponent& c : comps) {
      auto it = rs.residue_by_offset.find(c.offset[0]);
      if (it != rs.residue_by_offset.end() && it->second == banned) continue;
      open_slices.push_back(c.offset[0]);
    }
    bool possible = false;
    for (std::size_t i = 0; i < open_slices.size() && !possible; ++i)
      for (std::size_t j = i; j < open_slices.size() && !possible; ++j)
        for (std::size_t k = j; k < open_slices.size() && !possible; ++k)
          possible = admits_margin(g.relation_lattice,
                                   {open_slices[i], open_slices[j], open_slices[k]});
    if (!possible) return std::nullopt;
  }
  return find_extremal(path, 3, N, max_iterate, true);
}

}  // namespace symcert
