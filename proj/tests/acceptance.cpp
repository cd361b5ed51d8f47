// Acceptance suite. Nine end-to-end checks, each reporting a single PASS or
// FAIL line; the process exits nonzero when anything fails. Bounds, seeds and
// tolerances are pinned here on purpose so a rerun is comparable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_crossing.hpp"
#include "symcert/base_group.hpp"
#include "symcert/certify.hpp"
#include "symcert/condition_a.hpp"
#include "symcert/dim4.hpp"
#include "symcert/errors.hpp"
#include "symcert/exact_angle.hpp"
#include "symcert/instance_io.hpp"
#include "symcert/partitions.hpp"
#include "symcert/quasimorphism.hpp"
#include "symcert/symplectic_path.hpp"

using namespace symcert;

namespace {

constexpr const char* kEtaDigits =
    "0.61803398874989484820458683436563811772030917980576";
constexpr unsigned kBits = 320;

std::shared_ptr<const IrrationalBasis> shared_basis() {
  static std::shared_ptr<const IrrationalBasis> basis = [] {
    auto b = std::make_shared<IrrationalBasis>();
    b->add_decimal("eta", kEtaDigits, kBits);
    b->add_sqrt("rt2", Rational(2));
    return std::shared_ptr<const IrrationalBasis>(b);
  }();
  return basis;
}

ExactAngle eta_times(const Rational& c) { return ExactAngle::multiple("eta", c); }
ExactAngle rt2_times(const Rational& c) { return ExactAngle::multiple("rt2", c); }

SymplecticPath structured_path(std::vector<ExactAngle> lambdas) {
  return SymplecticPath(std::move(lambdas), shared_basis(), kBits);
}

SymplecticPath rational_path(const std::vector<Rational>& lambdas) {
  static std::shared_ptr<const IrrationalBasis> empty =
      std::make_shared<IrrationalBasis>();
  std::vector<ExactAngle> angles;
  for (const Rational& l : lambdas) angles.emplace_back(l);
  return SymplecticPath(std::move(angles), empty, 64);
}

ProblemInstance make_instance(long n, long chern, long r, SymplecticPath path,
                              long max_iterate) {
  return ProblemInstance{n,           Integer(chern), r,
                         shared_basis(), std::move(path), max_iterate,
                         kBits,       Rational(1, 20), "acceptance"};
}

// Non-increasing partitions of every total in [1, cap], visitor-style.
void for_all_partitions(long cap,
                        const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> parts;
  std::function<void(long, long)> rec = [&](long left, long biggest) {
    if (left == 0) {
      f(parts);
      return;
    }
    for (long next = std::min(left, biggest); next >= 1; --next) {
      parts.push_back(next);
      rec(left - next, next);
      parts.pop_back();
    }
  };
  for (long total = 1; total <= cap; ++total) rec(total, total);
}

// Random structured angles: a modest rational part plus at least one nonzero
// coefficient on the two basis elements.
std::vector<ExactAngle> random_angles(std::mt19937& rng, long n) {
  std::vector<ExactAngle> lambdas;
  for (long j = 0; j < n; ++j) {
    auto small = [&](long lo, long hi) {
      return static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)) + lo;
    };
    Rational c_eta, c_rt2;
    do {
      c_eta = Rational(small(-3, 3), small(1, 5));
      c_rt2 = Rational(small(-3, 3), small(1, 5));
    } while (c_eta == 0 && c_rt2 == 0);
    ExactAngle lambda{Rational(small(-9, 9), small(1, 9))};
    lambda += eta_times(c_eta);
    lambda += rt2_times(c_rt2);
    lambdas.push_back(lambda);
  }
  return lambdas;
}

int failures = 0;

void report(int num, bool ok, const std::string& label,
            const std::string& detail) {
  std::printf("criterion %d: %s  %s%s%s\n", num, ok ? "PASS" : "FAIL",
              label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

void run(int num, const std::string& label,
         const std::function<std::string()>& body) {
  try {
    report(num, true, label, body());
  } catch (const std::exception& e) {
    report(num, false, label, e.what());
  }
}

struct CheckFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& why) {
  if (!ok) throw CheckFail(why);
}

// 1. Ten irrational clockwise half-to-full turns on one plane: the first two
// indices are -1 and -3 exactly and the pipeline certifies the deformation
// through the (1,1) partition, in under a second.
std::string criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  for (long i = 1; i <= 10; ++i) {
    ExactAngle lambda{Rational(-1, 2)};
    lambda += eta_times(Rational(-i, 13));
    SymplecticPath path = structured_path({lambda});
    need(cz_index(path, 1) == -1, "index at k=1 is not -1");
    need(cz_index(path, 2) == -3, "index at k=2 is not -3");
    Certificate cert =
        certify(make_instance(1, 2, 2, structured_path({lambda}), 500));
    need(cert.conclusion == Conclusion::DeformedQuantumProduct,
         "sample " + std::to_string(i) + " did not certify the deformation");
    need(cert.partition && cert.partition->parts == std::vector<long>{1, 1},
         "sample " + std::to_string(i) + " did not use the (1,1) partition");
  }
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count();
  need(sec < 1.0, "took " + std::to_string(sec) + " s, budget 1 s");
  std::ostringstream d;
  d << "10 samples certified in " << std::fixed << sec << " s";
  return d.str();
}

// 2. The three worked families: all-ones extremality with its exact defect,
// the opposite-angle pair with defect zero over every partition with parts
// up to 50, and an all-clockwise datum where a bounded search must succeed.
std::string criterion2() {
  for (long n = 1; n <= 4; ++n) {
    std::vector<ExactAngle> lambdas;
    for (long j = 0; j < n; ++j)
      lambdas.push_back(eta_times(Rational(1, 14 + 3 * j + n)));
    SymplecticPath path = structured_path(std::move(lambdas));
    for (long r = 2; r <= 6; ++r) {
      std::vector<long> ones(static_cast<std::size_t>(r), 1);
      Partition p = make_partition(path, ones);
      need(is_extremal(path, ones), "all-ones is not extremal");
      need(p.defect_value == (r - 1) * n, "all-ones defect is not (r-1)n");
    }
  }

  SymplecticPath pair =
      structured_path({eta_times(Rational(1)), eta_times(Rational(-1))});
  std::vector<Integer> cz(51);
  for (long k = 1; k <= 50; ++k) cz[static_cast<std::size_t>(k)] = cz_index(pair, k);
  long long seen = 0;
  for_all_partitions(50, [&](const std::vector<long>& parts) {
    Integer sum = 0;
    long total = 0;
    for (long k : parts) {
      sum += cz[static_cast<std::size_t>(k)];
      total += k;
    }
    need(sum - cz[static_cast<std::size_t>(total)] == 0,
         "opposite angles produced a nonzero defect");
    if (seen % 50000 == 0)
      need(defect(pair, parts) == 0, "library defect disagrees at a sample");
    ++seen;
  });
  need(seen == 1295970, "partition enumeration is off: " + std::to_string(seen));

  SymplecticPath clockwise = structured_path(
      {eta_times(Rational(-1, 3)), rt2_times(Rational(-1, 4)),
       ExactAngle{Rational(-1, 9)} + eta_times(Rational(-2, 7))});
  TupleSearchOptions opt;
  opt.r = 3;
  opt.max_iterate = 10000;
  auto tuple = least_fracsum_tuple(clockwise, opt);
  need(tuple.has_value(), "no extremal partition found for the clockwise datum");
  need(is_extremal(clockwise, *tuple), "clockwise witness is not extremal");
  return "24 all-ones cases, 1295970 exhaustive partitions, clockwise witness (" +
         std::to_string((*tuple)[0]) + "," + std::to_string((*tuple)[1]) + "," +
         std::to_string((*tuple)[2]) + ")";
}

// 3. Defect bound on random pairs with the commuting cross-check.
std::string criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  long checked_total = 0;
  for (long n = 1; n <= 3; ++n) {
    long checked = 0, trial = 0;
    while (checked < 1000) {
      need(trial < 1300, "too many degenerate draws at n = " + std::to_string(n));
      std::uint32_t base = static_cast<std::uint32_t>(90000 * n + 2 * trial);
      ++trial;
      try {
        SymplecticMatrix p = random_symplectic(n, base);
        SymplecticMatrix q = random_symplectic(n, base + 1);
        long d = hormander_defect(p, q);
        need(-n <= d && d <= n, "defect " + std::to_string(d) +
                                    " escapes [-n, n] at n = " + std::to_string(n));
        ++checked;
      } catch (const DegenerateInput&) {
      } catch (const SingularEigenvalue&) {
      } catch (const ComplementNotFound&) {
      }
    }
    checked_total += checked;
  }

  // Commuting elliptic pairs with exactly representable angles: the defect
  // must match the index arithmetic closed form.
  auto cz_of = [](const std::vector<Rational>& lambdas) {
    return to_long(cz_index(rational_path(lambdas), 1));
  };
  std::mt19937 rng(20260822u);
  long matched = 0;
  for (long n = 1; n <= 3; ++n) {
    Eigen::MatrixXd t = random_symplectic(n, static_cast<std::uint32_t>(70 + n)).entries;
    Eigen::MatrixXd t_inv = t.inverse();
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Rational> a, b, ab;
      std::vector<double> da, db;
      for (long j = 0; j < n; ++j) {
        long ka, kb;
        do {
          ka = 2 * static_cast<long>(rng() % 16) + 1;
          kb = 2 * static_cast<long>(rng() % 16) + 1;
        } while ((ka + kb) % 32 == 0);
        a.emplace_back(ka, 32);
        b.emplace_back(kb, 32);
        ab.emplace_back(ka + kb, 32);
        da.push_back(double(ka) / 32.0);
        db.push_back(double(kb) / 32.0);
      }
      SymplecticMatrix p{t * block_rotation(da) * t_inv};
      SymplecticMatrix q{t * block_rotation(db) * t_inv};
      long expected = cz_of(ab) - cz_of(a) - cz_of(b);
      need(hormander_defect(q, p) == expected,
           "commuting pair disagrees with the closed form");
      ++matched;
    }
  }
  need(matched >= 50, "fewer than 50 commuting matches");
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count();
  need(sec < 60.0, "took " + std::to_string(sec) + " s, budget 60 s");
  std::ostringstream d;
  d << checked_total << " bounded pairs, " << matched
    << " commuting exact matches in " << std::fixed << sec << " s";
  return d.str();
}

// 4. Superadditivity: the defect never exceeds (r-1)n, over every partition
// with total at most 30 on 200 random structured paths.
std::string criterion4() {
  std::mt19937 rng(41u);
  long long inequalities = 0;
  for (int trial = 0; trial < 200; ++trial) {
    long n = 1 + static_cast<long>(rng() % 3);
    SymplecticPath path = structured_path(random_angles(rng, n));
    std::vector<Integer> cz(31);
    for (long k = 1; k <= 30; ++k)
      cz[static_cast<std::size_t>(k)] = cz_index(path, k);
    long long seen = 0;
    for_all_partitions(30, [&](const std::vector<long>& parts) {
      Integer sum = 0;
      long total = 0;
      for (long k : parts) {
        sum += cz[static_cast<std::size_t>(k)];
        total += k;
      }
      Integer lhs = sum - cz[static_cast<std::size_t>(total)];
      Integer bound = (static_cast<long>(parts.size()) - 1) * n;
      need(lhs <= bound, "defect exceeds (r-1)n");
      if (seen % 2999 == 0)
        need(defect(path, parts) == lhs, "library defect disagrees");
      ++seen;
      ++inequalities;
    });
    need(seen == 28628, "partition enumeration is off");
  }
  return std::to_string(inequalities) + " exact inequalities";
}

// 5. Partition algebra on random cases: integer shifts of the angles, common
// scaling, direct sums and pairwise merges all act on the defect exactly as
// the closed form says.
std::string criterion5() {
  std::mt19937 rng(52u);
  for (int trial = 0; trial < 500; ++trial) {
    long n = 1 + static_cast<long>(rng() % 3);
    std::vector<ExactAngle> lambdas = random_angles(rng, n);
    SymplecticPath path = structured_path(lambdas);
    long r = 2 + static_cast<long>(rng() % 3);
    std::vector<long> parts;
    for (long i = 0; i < r; ++i)
      parts.push_back(1 + static_cast<long>(rng() % 12));
    Integer base = defect(path, parts);

    // (i) shifting any angle by an integer changes nothing
    std::vector<ExactAngle> shifted = lambdas;
    for (ExactAngle& l : shifted)
      l += ExactAngle{Rational(static_cast<long>(rng() % 5) - 2)};
    need(defect(structured_path(shifted), parts) == base,
         "integer shift moved the defect");

    // (ii) scaling the parts equals scaling the angles
    long c = 2 + static_cast<long>(rng() % 2);
    std::vector<long> scaled_parts = parts;
    for (long& k : scaled_parts) k *= c;
    std::vector<ExactAngle> scaled_angles;
    for (const ExactAngle& l : lambdas) scaled_angles.push_back(l * Rational(c));
    need(defect(path, scaled_parts) ==
             defect(structured_path(scaled_angles), parts),
         "scaling equivalence broke");

    // (iii) the defect of a direct sum is the sum of the defects
    long nb = 1 + static_cast<long>(rng() % 2);
    std::vector<ExactAngle> other = random_angles(rng, nb);
    std::vector<ExactAngle> joint = lambdas;
    joint.insert(joint.end(), other.begin(), other.end());
    need(defect(structured_path(joint), parts) ==
             base + defect(structured_path(other), parts),
         "direct sum is not additive");

    // (iv) merging two parts splits the defect into pair + reduced
    std::vector<long> merged = {parts[0] + parts[1]};
    merged.insert(merged.end(), parts.begin() + 2, parts.end());
    need(base == defect(path, {parts[0], parts[1]}) + defect(path, merged),
         "merge decomposition failed");
  }
  return "500 cases, four identities each";
}

// 6. Exhaustive slope sweep at r = 3: the cube intersection is empty on
// exactly three slopes, and every nonempty slope yields a verified witness
// within ten thousand iterates.
std::string criterion6() {
  long swept = 0, empty_count = 0;
  for (long s2 = 1; s2 <= 10; ++s2) {
    for (long s1 = -10; s1 <= 10; ++s1) {
      if (s1 == 0 || std::gcd(std::abs(s1), s2) != 1) continue;
      SymplecticPath path = structured_path(
          {eta_times(Rational(s2, 17)), eta_times(Rational(-s1, 17))});
      BaseGroup g = compute_base_group(path);
      need(g.dim == 1 && g.connected(), "slope construction is off");
      Rational s(-s1, s2);
      bool empty = !cube_intersection(g, 3).nonempty;
      bool listed = s == Rational(-1) || s == Rational(-2) || s == Rational(-1, 2);
      need(empty == listed, "emptiness disagrees at slope " + format_rational(s));
      if (empty) {
        ++empty_count;
      } else {
        auto tuple = search_condition_a(path, 3, 10000, kBits);
        need(tuple.has_value(), "no witness at slope " + format_rational(s));
        need(is_extremal(path, *tuple),
             "witness is not extremal at slope " + format_rational(s));
      }
      ++swept;
    }
  }
  need(empty_count == 3, "wrong number of empty slopes");
  return std::to_string(swept) + " slopes, 3 empty, the rest witnessed";
}

// 7. The length-3 search over both small Chern numbers: success exactly off
// the classified lists, and the through-origin component carries residue 0 in
// the odd-odd cases.
std::string criterion7() {
  std::mt19937 rng(77u);
  const Rational qs[] = {Rational(1, 5), Rational(2, 7), Rational(3, 11),
                         Rational(1, 9), Rational(4, 13)};
  long swept = 0, denied = 0, residue_checks = 0;
  for (long chern = 2; chern <= 3; ++chern) {
    for (long s2 = 1; s2 <= 8; ++s2) {
      for (long s1 = -8; s1 <= 8; ++s1) {
        if (s1 == 0 || std::gcd(std::abs(s1), s2) != 1) continue;
        Rational gamma = qs[rng() % 5];
        SymplecticPath path = structured_path(
            {eta_times(gamma * Rational(s2)), eta_times(gamma * Rational(-s1))});
        BaseGroup g = compute_base_group(path);
        SlopeData sd = slope(g);
        bool listed = blacklisted_slope(sd, chern);
        auto p = find_length3(path, chern, 100000);
        need(p.has_value() != listed,
             "length-3 outcome disagrees with the list at slope " +
                 format_rational(sd.s) + ", chern " + std::to_string(chern));
        if (p) {
          need(is_extremal(path, p->parts), "length-3 witness is not extremal");
        } else {
          ++denied;
        }
        // Negative slope with both coefficients odd: the nearest piece of the
        // torus-origin component that iterates actually reach carries index
        // residue 0 mod 4.
        if (chern == 2 && s1 > 0 && s1 % 2 != 0 && s2 % 2 != 0) {
          std::optional<long> nearest;
          for (const CubeComponent& c : enumerate_components(g)) {
            nearest = component_index_residue(path, c, 2, 100000);
            if (nearest) break;
          }
          need(nearest.has_value() && *nearest == 0,
               "origin-side component residue is not 0 mod 4");
          ++residue_checks;
        }
        ++swept;
      }
    }
  }
  return std::to_string(swept) + " runs, " + std::to_string(denied) +
         " certified denials, " + std::to_string(residue_checks) +
         " odd-odd residue checks";
}

// 8. The index agrees with the crossing-count oracle on rational vectors.
std::string criterion8() {
  std::mt19937 rng(88u);
  long compared = 0;
  for (int v = 0; v < 300; ++v) {
    long n = 1 + static_cast<long>(rng() % 3);
    std::vector<Rational> lambdas;
    for (long j = 0; j < n; ++j) {
      // Keep the reduced denominator in [2, 12]; an integral rotation number
      // is degenerate at every iterate and would contribute nothing.
      Rational l;
      do {
        long num = 0;
        while (num == 0) num = static_cast<long>(rng() % 61) - 30;
        long den = 2 + static_cast<long>(rng() % 11);
        l = Rational(num, den);
      } while (denominator(l) == 1);
      lambdas.push_back(l);
    }
    SymplecticPath path = rational_path(lambdas);
    for (long k = 1; k <= 12; ++k) {
      if (is_degenerate(path, k)) continue;
      need(cz_index(path, k) == crossing_oracle_cz(lambdas, k),
           "index disagrees with the crossing oracle");
      ++compared;
    }
  }
  need(compared >= 1500, "too few non-degenerate comparisons");
  return "300 vectors, " + std::to_string(compared) + " exact comparisons";
}

// 9. The Chern gate: reject above twice the dimension with the documented
// diagnostic, accept on the boundary.
std::string criterion9() {
  SymplecticPath path = structured_path(
      {eta_times(Rational(1, 5)), rt2_times(Rational(1, 3))});
  Certificate rejected =
      certify(make_instance(2, 5, 3, structured_path(path.lambdas()), 500));
  need(rejected.conclusion == Conclusion::NoCertificate, "gate did not reject");
  need(!rejected.chern_bound_ok, "gate flag is wrong");
  need(!rejected.group.has_value(), "gate failed to short-circuit");
  need(!rejected.caveats.empty() &&
           rejected.caveats[0].find("no pseudo-rotation can exist") !=
               std::string::npos,
       "diagnostic text is missing");
  Certificate boundary =
      certify(make_instance(2, 4, 3, structured_path(path.lambdas()), 500));
  need(boundary.chern_bound_ok, "boundary chern was rejected");
  need(boundary.group.has_value(), "boundary run did not proceed");
  Certificate sphere = certify(make_instance(
      1, 2, 2,
      structured_path({ExactAngle{Rational(-1, 2)} + eta_times(Rational(-1, 4))}),
      500));
  need(sphere.chern_bound_ok, "one-plane boundary was rejected");
  return "rejects above the bound, proceeds on it";
}

}  // namespace

int main() {
  run(1, "one-plane golden datum", criterion1);
  run(2, "worked partition families", criterion2);
  run(3, "defect bound and commuting closed form", criterion3);
  run(4, "superadditivity sweep", criterion4);
  run(5, "partition algebra identities", criterion5);
  run(6, "exhaustive slope cube decision", criterion6);
  run(7, "length-3 classification sweep", criterion7);
  run(8, "crossing oracle equivalence", criterion8);
  run(9, "chern gate", criterion9);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
