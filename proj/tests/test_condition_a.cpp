#include <doctest.h>

#include <memory>

#include "symcert/base_group.hpp"
#include "symcert/condition_a.hpp"
#include "symcert/errors.hpp"
#include "symcert/exact_angle.hpp"
#include "symcert/partitions.hpp"
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

}  // namespace

TEST_CASE("components of the cube preimage") {
  SUBCASE("antidiagonal line has three pieces") {
    BaseGroup g = compute_base_group(line_path(1, -1));
    REQUIRE(g.relation_lattice.rows == 1);
    CHECK(g.relation_lattice.row(0) == std::vector<Integer>{Integer(1), Integer(1)});
    auto comps = enumerate_components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0].offset == std::vector<Integer>{Integer(0)});
    CHECK(comps[0].distance == Rational(0));
    CHECK(comps[1].offset == std::vector<Integer>{Integer(1)});
    CHECK(comps[1].distance == Rational(1, 2));
    CHECK(comps[2].offset == std::vector<Integer>{Integer(2)});
    CHECK(comps[2].distance == Rational(1));
    for (const auto& c : comps) CHECK(c.codim == 1);
    CHECK(comps[0].q == 0);
    CHECK(comps[2].q == 2);
  }

  SUBCASE("full torus is one piece") {
    auto b = std::make_shared<IrrationalBasis>();
    b->add_decimal("alpha", kInvPhi, 100);
    b->add_sqrt("rt2", Rational(2));
    SymplecticPath p({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("rt2", 1)}, b);
    auto comps = enumerate_components(compute_base_group(p));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].codim == 0);
    CHECK(comps[0].distance == Rational(0));
  }

  SUBCASE("steep line meets the cube in the predicted number of segments") {
    // Relation row (4, 1): offsets 0..5 are feasible, nothing negative is.
    BaseGroup g = compute_base_group(line_path(1, -4));
    REQUIRE(g.relation_lattice.rows == 1);
    CHECK(g.relation_lattice.row(0) == std::vector<Integer>{Integer(4), Integer(1)});
    auto comps = enumerate_components(g);
    CHECK(comps.size() == 6);
    for (const auto& c : comps) {
      CHECK(c.offset[0] >= 0);
      CHECK(c.offset[0] <= 5);
    }
  }
}

TEST_CASE("open cube intersection") {
  SUBCASE("slope minus one misses the third cube") {
    BaseGroup g = compute_base_group(line_path(1, -1));
    CubeIntersection cut = cube_intersection(g, 3);
    CHECK(!cut.nonempty);
    CHECK(cut.margin == Rational(0));
  }

  SUBCASE("slope plus one hits it at the center sixth") {
    // lambda = (a, a) has relation row (1, -1), the diagonal.
    BaseGroup g = compute_base_group(line_path(1, 1));
    CubeIntersection cut = cube_intersection(g, 3);
    REQUIRE(cut.nonempty);
    CHECK(cut.margin > 0);
    CHECK(cut.witness == std::vector<Rational>{Rational(1, 6), Rational(1, 6)});
    // Witness satisfies the relation exactly.
    Rational dot = 0;
    for (std::size_t j = 0; j < 2; ++j)
      dot += Rational(g.relation_lattice.at(0, j), 1) * cut.witness[j];
    CHECK(is_integral(dot));
  }

  SUBCASE("slope minus four still hits it") {
    BaseGroup g = compute_base_group(line_path(1, -4));
    CubeIntersection cut = cube_intersection(g, 3);
    REQUIRE(cut.nonempty);
    CHECK(cut.margin > 0);
    for (const Rational& w : cut.witness) {
      CHECK(w > 0);
      CHECK(w < Rational(1, 3));
    }
  }

  SUBCASE("slope minus two misses for r = 3") {
    BaseGroup g = compute_base_group(line_path(1, -2));
    CHECK(!cube_intersection(g, 3).nonempty);
  }
}

TEST_CASE("condition decisions by codimension") {
  SUBCASE("full torus is always a yes") {
    auto b = std::make_shared<IrrationalBasis>();
    b->add_decimal("alpha", kInvPhi, 100);
    b->add_sqrt("rt2", Rational(2));
    SymplecticPath p({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("rt2", 1)}, b);
    BaseGroup g = compute_base_group(p);
    for (long r : {1L, 2L, 5L})
      CHECK(decide_condition_a(g, r).status == ConditionAVerdict::Status::YES);
  }

  SUBCASE("empty at codimension one is a no") {
    BaseGroup g = compute_base_group(line_path(1, -2));
    ConditionAVerdict v = decide_condition_a(g, 3);
    CHECK(v.status == ConditionAVerdict::Status::NO);
    CHECK(!v.witness_point.has_value());
  }

  SUBCASE("empty at codimension two is unknown") {
    SymplecticPath p({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("alpha", -1),
                      ExactAngle::multiple("alpha", 1)},
                     alpha_basis());
    BaseGroup g = compute_base_group(p);
    CHECK(g.codim() == 2);
    ConditionAVerdict v = decide_condition_a(g, 3);
    CHECK(v.status == ConditionAVerdict::Status::UNKNOWN);
  }

  SUBCASE("yes carries a witness in any codimension") {
    // theta, -theta, theta/2: lifts (t, 1-t, t/2) cannot all be small... use
    // a genuinely feasible codim-2 case instead: theta, theta, theta.
    SymplecticPath p({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("alpha", 1),
                      ExactAngle::multiple("alpha", 1)},
                     alpha_basis());
    BaseGroup g = compute_base_group(p);
    CHECK(g.codim() == 2);
    ConditionAVerdict v = decide_condition_a(g, 3);
    CHECK(v.status == ConditionAVerdict::Status::YES);
    REQUIRE(v.witness_point.has_value());
  }
}

TEST_CASE("bounded tuple search") {
  SUBCASE("small positive angles take the all-ones tuple") {
    SymplecticPath p({ExactAngle::multiple("alpha", Rational(1, 2)),
                      ExactAngle::multiple("alpha", Rational(1, 3))},
                     alpha_basis());
    auto t = search_condition_a(p, 2, 50, 80);
    REQUIRE(t.has_value());
    CHECK(*t == std::vector<long>{1, 1});
    CHECK(is_extremal(p, *t));
  }

  SUBCASE("opposite rotations admit singletons but no longer tuples") {
    SymplecticPath p = line_path(1, -1);
    auto t1 = search_condition_a(p, 1, 100, 80);
    REQUIRE(t1.has_value());
    CHECK(*t1 == std::vector<long>{1});
    CHECK(!search_condition_a(p, 2, 300, 80).has_value());
    CHECK(!search_condition_a(p, 3, 300, 80).has_value());
  }

  SUBCASE("clockwise rotations need the golden denominators") {
    SymplecticPath p({ExactAngle::multiple("alpha", -1)}, alpha_basis());
    auto t = search_condition_a(p, 3, 100, 80);
    REQUIRE(t.has_value());
    CHECK(*t == std::vector<long>{1, 1, 3});
    CHECK(is_extremal(p, *t));
  }

  SUBCASE("found tuples convert to extremal partitions") {
    SymplecticPath p = line_path(1, -4);
    auto t = search_condition_a(p, 3, 10000, 80);
    REQUIRE(t.has_value());
    CHECK(is_extremal(p, *t));
  }
}
