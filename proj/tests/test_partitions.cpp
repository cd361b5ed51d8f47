#include <doctest.h>

#include <memory>
#include <numeric>
#include <vector>

#include "symcert/errors.hpp"
#include "symcert/exact_angle.hpp"
#include "symcert/iterate_scan.hpp"
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

std::shared_ptr<IrrationalBasis> two_basis() {
  auto b = std::make_shared<IrrationalBasis>();
  b->add_decimal("alpha", kInvPhi, 100);
  b->add_sqrt("rt2", Rational(2));
  return b;
}

SymplecticPath small_positive(std::size_t n) {
  std::vector<ExactAngle> angs;
  for (std::size_t j = 0; j < n; ++j)
    angs.push_back(ExactAngle::multiple("alpha", Rational(1, long(7 + 2 * j))));
  return SymplecticPath(angs, alpha_basis());
}

}  // namespace

TEST_CASE("index drop of a splitting") {
  SUBCASE("all ones on small positive angles meets the ceiling") {
    for (std::size_t n : {1u, 2u, 3u}) {
      SymplecticPath p = small_positive(n);
      for (long r = 2; r <= 6; ++r) {
        std::vector<long> parts(std::size_t(r), 1);
        Partition part = make_partition(p, parts);
        CHECK(part.defect_value == (r - 1) * long(n));
        CHECK(is_extremal(p, parts));
      }
    }
  }

  SUBCASE("opposite rotations always drop to zero") {
    SymplecticPath p({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("alpha", -1)},
                     alpha_basis());
    for (long a = 1; a <= 6; ++a)
      for (long b = a; b <= 6; ++b) {
        Partition part = make_partition(p, {a, b});
        CHECK(part.defect_value == 0);
        CHECK(!is_extremal(p, {a, b}));
      }
  }

  SUBCASE("single part splittings are free") {
    SymplecticPath p = small_positive(2);
    for (long k : {1L, 4L, 9L}) {
      CHECK(defect(p, {k}) == 0);
      CHECK(is_extremal(p, {k}));
    }
  }

  SUBCASE("partition records totals and indices consistently") {
    SymplecticPath p = small_positive(2);
    Partition part = make_partition(p, {2, 3, 4});
    CHECK(part.total == 9);
    REQUIRE(part.indices.size() == 3);
    Integer sum = std::accumulate(part.indices.begin(), part.indices.end(), Integer(0));
    CHECK(part.defect_value == sum - part.total_index);
    CHECK(part.total_index == cz_index(p, 9));
  }
}

TEST_CASE("splitting algebra") {
  SymplecticPath base({ExactAngle::multiple("alpha", Rational(1, 5)),
                       ExactAngle::multiple("rt2", Rational(1, 3))},
                      two_basis());
  std::vector<std::vector<long>> samples = {{1, 1}, {1, 2}, {2, 3, 4}, {1, 1, 1, 1}};

  SUBCASE("integer shifts of every angle change nothing") {
    SymplecticPath shifted({ExactAngle::multiple("alpha", Rational(1, 5)) + ExactAngle(Rational(3)),
                            ExactAngle::multiple("rt2", Rational(1, 3)) + ExactAngle(Rational(-2))},
                           two_basis());
    for (const auto& parts : samples)
      CHECK(is_extremal(base, parts) == is_extremal(shifted, parts));
  }

  SUBCASE("scaling the path matches scaling the parts") {
    for (long m : {2L, 3L}) {
      SymplecticPath scaled({ExactAngle::multiple("alpha", Rational(m, 5)),
                             ExactAngle::multiple("rt2", Rational(m, 3))},
                            two_basis());
      for (const auto& parts : samples) {
        std::vector<long> mparts;
        for (long k : parts) mparts.push_back(m * k);
        CHECK(is_extremal(scaled, parts) == is_extremal(base, mparts));
      }
    }
  }

  SUBCASE("direct sums are extremal exactly when both factors are") {
    SymplecticPath left({ExactAngle::multiple("alpha", Rational(1, 5))}, two_basis());
    SymplecticPath right({ExactAngle::multiple("rt2", Rational(1, 3))}, two_basis());
    for (const auto& parts : samples) {
      bool both = is_extremal(left, parts) && is_extremal(right, parts);
      CHECK(is_extremal(base, parts) == both);
    }
    // A sum with one non-extremal factor: three clockwise fractions exceed one.
    SymplecticPath bad({ExactAngle::multiple("alpha", Rational(1, 5)),
                        ExactAngle::multiple("alpha", -1)},
                       two_basis());
    CHECK(is_extremal(bad, {1, 1}));
    CHECK(!is_extremal(bad, {1, 1, 1}));
  }

  SUBCASE("merging parts preserves extremality") {
    SymplecticPath p = small_positive(2);
    std::vector<long> fine = {1, 1, 2};
    REQUIRE(is_extremal(p, fine));
    CHECK(is_extremal(p, {2, 2}));
    CHECK(is_extremal(p, {1, 3}));
    CHECK(is_extremal(p, {4}));
  }

  SUBCASE("index of a sum never undershoots the shifted parts") {
    SymplecticPath p({ExactAngle::multiple("alpha", Rational(2, 3)),
                      ExactAngle::multiple("rt2", Rational(-3, 5))},
                     two_basis());
    long n = long(p.planes());
    for (long a = 1; a <= 12; ++a)
      for (long b = 1; b <= 12; ++b) {
        Integer lhs = cz_index(p, a + b) - n;
        Integer rhs = cz_index(p, a) - n + cz_index(p, b) - n;
        CHECK(lhs >= rhs);
      }
  }
}

TEST_CASE("searching for maximal splittings") {
  SUBCASE("small positive angles are found immediately") {
    SymplecticPath p = small_positive(3);
    auto part = find_extremal(p, 4, 2, 100, false);
    REQUIRE(part.has_value());
    CHECK(part->parts == std::vector<long>{1, 1, 1, 1});
    CHECK(part->defect_value == 9);
  }

  SUBCASE("opposite rotations never split") {
    SymplecticPath p({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("alpha", -1)},
                     alpha_basis());
    CHECK(!find_extremal(p, 2, 2, 2000, false).has_value());
    CHECK(!find_extremal(p, 3, 2, 2000, false).has_value());
  }

  SUBCASE("residue constraints discard the trivial witness") {
    // Full torus in two planes, ban index residue n mod 2N for N = 2.
    SymplecticPath p({ExactAngle::multiple("alpha", Rational(1, 5)),
                      ExactAngle::multiple("rt2", Rational(1, 3))},
                     two_basis());
    // Second plane: 3*frac(rt2/3) = 1.414.. so the all-ones triple is out;
    // frac(17*rt2/3) = 0.0139 rescues the pair of ones at total 19.
    auto free_part = find_extremal(p, 3, 2, 4000, false);
    REQUIRE(free_part.has_value());
    CHECK(free_part->parts == std::vector<long>{1, 1, 17});
    auto part = find_extremal(p, 3, 2, 4000, true);
    REQUIRE(part.has_value());
    IterateScan scan(p, part->parts.back() + 1);
    for (long k : part->parts) CHECK(scan.cz_residue(k, 4) != 2);
    CHECK(is_extremal(p, part->parts));
    CHECK(part->parts != free_part->parts);
  }

  SUBCASE("no residue survives when the quotient is trivial") {
    SymplecticPath p = small_positive(2);
    CHECK(!find_extremal(p, 2, 1, 500, true).has_value());
  }

  SUBCASE("a tiny node budget aborts loudly") {
    SymplecticPath p = small_positive(1);
    TupleSearchOptions opt;
    opt.r = 3;
    opt.max_iterate = 100000;
    opt.node_budget = 2;
    CHECK_THROWS_AS(least_fracsum_tuple(p, opt), SearchBudgetExhausted);
  }
}

TEST_CASE("powers returning near the identity") {
  SUBCASE("full torus paths admit them") {
    SymplecticPath p({ExactAngle::multiple("alpha", Rational(1, 5)),
                      ExactAngle::multiple("rt2", Rational(1, 3))},
                     two_basis());
    auto m_opt = find_toric_power(p, 3, 2, 100000);
    REQUIRE(m_opt.has_value());
    long m = *m_opt;
    IterateScan scan(p, m + 1);
    CHECK(!scan.degenerate(m));
    for (std::size_t j = 0; j < p.planes(); ++j)
      CHECK(scan.frac_below(m, j, Rational(1, 3)));
    CHECK(scan.cz_residue(m, 4) == 0);
    // Least such power: nothing earlier qualifies.
    for (long k = 1; k < m; ++k) {
      bool ok = !scan.degenerate(k) && scan.cz_residue(k, 4) == 0;
      for (std::size_t j = 0; ok && j < p.planes(); ++j)
        ok = scan.frac_below(k, j, Rational(1, 3));
      CHECK(!ok);
    }
    // The constant splitting it certifies is extremal.
    CHECK(is_extremal(p, {m, m, m}));
  }

  SUBCASE("rationally dependent angles are rejected") {
    SymplecticPath p({ExactAngle::multiple("alpha", 1), ExactAngle::multiple("alpha", 2)},
                     alpha_basis());
    CHECK_THROWS_AS(find_toric_power(p, 3, 2, 1000), NotToric);
  }
}
