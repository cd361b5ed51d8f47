#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symcert/base_group.hpp"
#include "symcert/condition_a.hpp"
#include "symcert/partitions.hpp"

namespace symcert {

struct ProblemInstance;

/// The existence bound on the minimal Chern number: a closed monotone
/// manifold carrying a pseudo-rotation has chern_min <= 2n. False routes the
/// pipeline straight to NO_CERTIFICATE with a diagnostic.
bool check_chern_bound(long n, const Integer& chern_min);

/// Degree bookkeeping for one part of the certified partition. degree is
/// n + index; the class it names misses the fundamental-class degree exactly
/// when degree != 2n mod 2*chern_min, which is what check records.
struct DegreeEntry {
  long part = 0;
  Integer index;
  Integer degree;
  bool check = false;
};

enum class Conclusion {
  DeformedQuantumProduct,
  NonzeroLongProductOnly,
  NoCertificate,
};

const char* conclusion_name(Conclusion c);

/// Everything the pipeline decided, with the evidence for each stage. Stages
/// after a short-circuit (failed Chern gate, exact Condition A failure) stay
/// unset rather than being filled with guesses.
struct Certificate {
  long n = 0;
  Integer chern_min = 1;
  long r = 1;

  bool chern_bound_ok = false;
  std::optional<BaseGroup> group;
  std::optional<ConditionB1> b1;
  std::optional<ConditionB2> b2;
  std::optional<ConditionAVerdict> condition_a;
  /// Set when Condition A returned an exact NO, the one case where
  /// NO_CERTIFICATE is a mathematical negative instead of a bounded miss.
  bool condition_a_exact_no = false;

  std::string search_method = "none";  // none | toric-power | length-3 | extremal
  long search_max_iterate = 0;
  bool budget_exhausted = false;
  std::optional<Partition> partition;
  bool extremal_reverified = false;
  std::vector<DegreeEntry> degrees;

  Conclusion conclusion = Conclusion::NoCertificate;
  std::vector<std::string> caveats;
};

/// Runs the pipeline: Chern gate, orbit-closure group, Conditions B1/B2 and
/// A, then the partition search routed by the group shape (constant
/// partitions when the closure fills the torus; the length-3 classifier for
/// two planes with a one-dimensional closure and chern_min 2 or 3; the
/// residue-constrained general search otherwise). A DEFORMED_QUANTUM_PRODUCT
/// conclusion is only ever emitted after is_extremal re-verifies the found
/// partition and every degree check passes.
Certificate certify(const ProblemInstance& instance);

enum class ReportFormat { Structured, Table };

/// Renders the certificate. Deterministic: identical instance bytes produce
/// byte-identical reports.
std::string render_report(const Certificate& cert, const ProblemInstance& inst,
                          ReportFormat format);

}  // namespace symcert
