#include <doctest.h>

#include <map>
#include <memory>
#include <vector>

#include "symcert/base_group.hpp"
#include "symcert/condition_a.hpp"
#include "symcert/dim4.hpp"
#include "symcert/errors.hpp"
#include "symcert/exact_angle.hpp"
#include "symcert/iterate_scan.hpp"
#include "symcert/symplectic_path.hpp"

using namespace symcert;

namespace {

const char* kInvPhi = "0.61803398874989484820458683436564";

std::shared_ptr<IrrationalBasis> alpha_basis() {
  auto b = std::make_shared<IrrationalBasis>();
  b->add_decimal("alpha", kInvPhi, 100);
  return b;
}

SymplecticPath line_path(const Rational& c1, const Rational& c2) {
  return SymplecticPath({ExactAngle::multiple("alpha", c1), ExactAngle::multiple("alpha", c2)},
                        alpha_basis());
}

const CubeComponent* by_offset(const std::vector<CubeComponent>& comps, long z) {
  for (const auto& c : comps)
    if (c.offset[0] == z) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("slope of a one-dimensional closure") {
  SUBCASE("reads the relation row") {
    SlopeData sd = slope(compute_base_group(line_path(1, 2)));
    CHECK(sd.s1 == 2);
    CHECK(sd.s2 == -1);
    CHECK(sd.s == Rational(2));
    CHECK(sd.connected);

    sd = slope(compute_base_group(line_path(1, -1)));
    CHECK(sd.s1 == 1);
    CHECK(sd.s2 == 1);
    CHECK(sd.s == Rational(-1));
    CHECK(sd.connected);
  }

  SUBCASE("strips the content of a disconnected closure") {
    SymplecticPath p({ExactAngle::multiple("alpha", 1),
                      ExactAngle(Rational(1, 2)) + ExactAngle::multiple("alpha", 1)},
                     alpha_basis());
    BaseGroup g = compute_base_group(p);
    CHECK(g.torsion_order == 2);
    SlopeData sd = slope(g);
    CHECK(sd.s1 == 1);
    CHECK(sd.s2 == -1);
    CHECK(sd.s == Rational(1));
    CHECK(!sd.connected);
  }

  SUBCASE("wrong dimensions are rejected") {
    auto b = std::make_shared<IrrationalBasis>();
    b->add_decimal("alpha", kInvPhi, 100);
    b->add_sqrt("rt2", Rational(2));
    SymplecticPath torus({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("rt2", 1)}, b);
    CHECK_THROWS_AS(slope(compute_base_group(torus)), WrongDimension);

    SymplecticPath three({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("alpha", -1),
                          ExactAngle::multiple("alpha", 1)},
                         alpha_basis());
    CHECK_THROWS_AS(slope(compute_base_group(three)), WrongDimension);
  }

  SUBCASE("a rational angle has no slope") {
    SymplecticPath p({ExactAngle(Rational(1, 2)), ExactAngle::multiple("alpha", 1)},
                     alpha_basis());
    CHECK_THROWS_AS(slope(compute_base_group(p)), DegenerateInput);
  }
}

TEST_CASE("slope lists per Chern number") {
  auto sd = [](long num, long den) {
    SlopeData d;
    d.s = Rational(num, den);
    return d;
  };
  for (auto [num, den] : {std::pair<long, long>{1, 1}, {-1, 1}, {3, 1}, {1, 3}, {-2, 1}, {-1, 2}})
    CHECK(blacklisted_slope(sd(num, den), 2));
  for (auto [num, den] : {std::pair<long, long>{5, 1}, {-3, 1}, {1, 5}, {-4, 1}, {2, 1}, {-5, 3}})
    CHECK(!blacklisted_slope(sd(num, den), 2));
  for (auto [num, den] : {std::pair<long, long>{-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}})
    CHECK(blacklisted_slope(sd(num, den), 3));
  for (auto [num, den] : {std::pair<long, long>{1, 1}, {3, 1}, {-4, 1}, {-1, 4}, {5, 2}})
    CHECK(!blacklisted_slope(sd(num, den), 3));
  CHECK_THROWS_AS(blacklisted_slope(sd(1, 1), 1), UnsupportedN);
  CHECK_THROWS_AS(blacklisted_slope(sd(1, 1), 4), UnsupportedN);
}

TEST_CASE("index residues per component") {
  SUBCASE("slope three alternates around the allowed middle slice") {
    SymplecticPath p = line_path(1, 3);
    BaseGroup g = compute_base_group(p);
    auto comps = enumerate_components(g);
    REQUIRE(comps.size() == 5);  // slices -1..3, corners included
    std::map<long, std::optional<long>> got;
    for (long z = -1; z <= 3; ++z) {
      const CubeComponent* c = by_offset(comps, z);
      REQUIRE(c != nullptr);
      got[z] = component_index_residue(p, *c, 2, 4000);
    }
    CHECK(got[-1] == std::nullopt);  // corner points are never endpoints
    CHECK(got[3] == std::nullopt);
    CHECK(got[0] == 2);
    CHECK(got[1] == 0);
    CHECK(got[2] == 2);
  }

  SUBCASE("opposite rotations sit on the slice through the corners") {
    SymplecticPath p = line_path(1, -1);
    auto comps = enumerate_components(compute_base_group(p));
    const CubeComponent* middle = by_offset(comps, 1);
    REQUIRE(middle != nullptr);
    CHECK(component_index_residue(p, *middle, 2, 1000) == 0);
    CHECK(component_index_residue(p, *by_offset(comps, 0), 2, 1000) == std::nullopt);
    CHECK(component_index_residue(p, *by_offset(comps, 2), 2, 1000) == std::nullopt);
  }

  SUBCASE("steep negative slope alternates and meets the corner slices at zero") {
    SymplecticPath p = line_path(3, -5);  // relation (5, 3), slices 0..8
    auto comps = enumerate_components(compute_base_group(p));
    REQUIRE(comps.size() == 9);
    for (long z = 1; z <= 7; ++z) {
      auto res = component_index_residue(p, *by_offset(comps, z), 2, 20000);
      REQUIRE(res.has_value());
      CHECK(*res == ((z % 2 == 1) ? 0 : 2));
    }
    // The slices through the cube corners (0,1) and (1,0) carry residue 0.
    CHECK(component_index_residue(p, *by_offset(comps, 3), 2, 20000) == 0);
    CHECK(component_index_residue(p, *by_offset(comps, 5), 2, 20000) == 0);
  }

  SUBCASE("matches a direct orbit tally") {
    SymplecticPath p = line_path(3, -5);
    BaseGroup g = compute_base_group(p);
    auto comps = enumerate_components(g);
    IterateScan scan(p, 3000);
    std::map<long, long> tally;
    for (long k = 1; k <= 3000; ++k) {
      if (scan.degenerate(k)) continue;
      Integer z = -(5 * scan.floor_exact(k, 0) + 3 * scan.floor_exact(k, 1));
      long res = scan.cz_residue(k, 4);
      auto [it, fresh] = tally.emplace(to_long(z), res);
      CHECK(it->second == res);
    }
    CHECK(tally.size() == 7);  // every interior slice gets hit
    for (const auto& [z, res] : tally)
      CHECK(component_index_residue(p, *by_offset(comps, z), 2, 3000) == res);
  }

  SUBCASE("a nonzero slice value is fine when its step is even") {
    // lambda = (3a, 2-a): relation (1, 3), slice value 6.
    SymplecticPath p({ExactAngle::multiple("alpha", 3),
                      ExactAngle(Rational(2)) - ExactAngle::multiple("alpha", 1)},
                     alpha_basis());
    BaseGroup g = compute_base_group(p);
    REQUIRE(g.relation_lattice.row(0) == std::vector<Integer>{Integer(1), Integer(3)});
    auto comps = enumerate_components(g);
    CHECK(component_index_residue(p, *by_offset(comps, 1), 2, 4000) == 0);
    CHECK(component_index_residue(p, *by_offset(comps, 2), 2, 4000) == 2);
    CHECK(component_index_residue(p, *by_offset(comps, 3), 2, 4000) == 0);
  }

  SUBCASE("divisibility failures are reported") {
    // Loop (1, 3) has index 8, not divisible by 6.
    SymplecticPath p13 = line_path(1, 3);
    auto comps13 = enumerate_components(compute_base_group(p13));
    CHECK_THROWS_AS(component_index_residue(p13, comps13[0], 3, 100), HypothesesNotMet);

    // lambda = (3a, 1-a): slice value 3 shifts residues by an odd step.
    SymplecticPath podd({ExactAngle::multiple("alpha", 3),
                         ExactAngle(Rational(1)) - ExactAngle::multiple("alpha", 1)},
                        alpha_basis());
    auto compsodd = enumerate_components(compute_base_group(podd));
    CHECK_THROWS_AS(component_index_residue(podd, compsodd[0], 2, 100), HypothesesNotMet);
  }
}

TEST_CASE("length-3 search with the residue filter") {
  SUBCASE("slope five delivers the doubled triple") {
    SymplecticPath p = line_path(1, 5);
    auto part = find_length3(p, 2, 10000);
    REQUIRE(part.has_value());
    CHECK(part->parts == std::vector<long>{2, 2, 2});
    CHECK(is_extremal(p, part->parts));
    IterateScan scan(p, 3);
    for (long k : part->parts) CHECK(scan.cz_residue(k, 4) != 2);
  }

  SUBCASE("slope two with N = 2 falls back to a plain sweep") {
    // The loop (1, 2) has index 6, so the component screen does not apply.
    SymplecticPath p = line_path(1, 2);
    auto part = find_length3(p, 2, 10000);
    REQUIRE(part.has_value());
    CHECK(part->parts == std::vector<long>{1, 2, 5});
    CHECK(is_extremal(p, part->parts));
  }

  SUBCASE("blocked slopes certify their misses without sweeping") {
    CHECK(!find_length3(line_path(1, -1), 2, 100000).has_value());   // cube miss
    CHECK(!find_length3(line_path(1, 1), 2, 100000).has_value());    // diagonal banned
    CHECK(!find_length3(line_path(1, 3), 2, 100000).has_value());    // middle slice only
    CHECK(!find_length3(line_path(3, 1), 2, 100000).has_value());    // transposed
    CHECK(!find_length3(line_path(1, 2), 3, 100000).has_value());    // N = 3 island
    CHECK(!find_length3(line_path(2, 1), 3, 100000).has_value());
    CHECK(!find_length3(line_path(1, -2), 3, 100000).has_value());   // cube miss again
  }

  SUBCASE("the quarter slope for N = 3 goes through a corner slice") {
    SymplecticPath p = line_path(4, -1);  // slope -1/4
    auto part = find_length3(p, 3, 100000);
    REQUIRE(part.has_value());
    CHECK(is_extremal(p, part->parts));
    IterateScan scan(p, part->parts.back() + 1);
    for (long k : part->parts) CHECK(scan.cz_residue(k, 6) != 2);
  }

  SUBCASE("full torus closures delegate to the generic search") {
    auto b = std::make_shared<IrrationalBasis>();
    b->add_decimal("alpha", kInvPhi, 100);
    b->add_sqrt("rt2", Rational(2));
    SymplecticPath p({ExactAngle::multiple("alpha", Rational(1, 5)),
                      ExactAngle::multiple("rt2", Rational(1, 3))},
                     b);
    auto part = find_length3(p, 2, 4000);
    REQUIRE(part.has_value());
    CHECK(is_extremal(p, part->parts));
    IterateScan scan(p, part->parts.back() + 1);
    for (long k : part->parts) CHECK(scan.cz_residue(k, 4) != 2);
  }

  SUBCASE("gates") {
    CHECK_THROWS_AS(find_length3(line_path(1, 2), 4, 100), UnsupportedN);
    SymplecticPath one({ExactAngle::multiple("alpha", 1)}, alpha_basis());
    CHECK_THROWS_AS(find_length3(one, 2, 100), WrongDimension);
  }
}

TEST_CASE("boundary slice counts") {
  CHECK(enumerate_components(compute_base_group(line_path(1, -1))).size() == 3);
  CHECK(enumerate_components(compute_base_group(line_path(1, 3))).size() == 5);
  CHECK(enumerate_components(compute_base_group(line_path(3, -5))).size() == 9);
  CHECK(enumerate_components(compute_base_group(line_path(4, -1))).size() == 6);
}
