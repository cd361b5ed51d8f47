#include "symcert/certify.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <utility>

#include "symcert/dim4.hpp"
#include "symcert/errors.hpp"
#include "symcert/instance_io.hpp"
#include "symcert/version.hpp"

namespace symcert {
namespace {

using nlohmann::ordered_json;

const char* b2_status_name(ConditionB2::Status s) {
  switch (s) {
    case ConditionB2::Status::HOLDS:
      return "HOLDS";
    case ConditionB2::Status::FAILS_UP_TO_BOUND:
      return "FAILS_UP_TO_BOUND";
    case ConditionB2::Status::NOT_APPLICABLE:
      return "NOT_APPLICABLE";
  }
  return "?";
}

const char* a_status_name(ConditionAVerdict::Status s) {
  switch (s) {
    case ConditionAVerdict::Status::YES:
      return "YES";
    case ConditionAVerdict::Status::NO:
      return "NO";
    case ConditionAVerdict::Status::UNKNOWN:
      return "UNKNOWN";
  }
  return "?";
}

ordered_json intmat_rows(const IntMat& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(to_long(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string join_parts(const std::vector<long>& parts) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out << ", ";
    out << parts[i];
  }
  out << ")";
  return out.str();
}

}  // namespace

bool check_chern_bound(long n, const Integer& chern_min) {
  return chern_min <= 2 * Integer(n);
}

const char* conclusion_name(Conclusion c) {
  switch (c) {
    case Conclusion::DeformedQuantumProduct:
      return "DEFORMED_QUANTUM_PRODUCT";
    case Conclusion::NonzeroLongProductOnly:
      return "NONZERO_LONG_PRODUCT_ONLY";
    case Conclusion::NoCertificate:
      return "NO_CERTIFICATE";
  }
  return "?";
}

Certificate certify(const ProblemInstance& instance) {
  Certificate cert;
  cert.n = instance.dimension_n;
  cert.chern_min = instance.chern_min;
  cert.r = instance.product_length_r;
  cert.search_max_iterate = instance.max_iterate;

  cert.chern_bound_ok = check_chern_bound(cert.n, cert.chern_min);
  if (!cert.chern_bound_ok) {
    cert.caveats.push_back(
        "chern_min exceeds 2n, so no pseudo-rotation can exist on a manifold "
        "with these invariants; there is nothing to certify");
    return cert;
  }

  BaseGroup group = compute_base_group(instance.path);
  cert.group = group;
  cert.b1 = check_condition_b1(group, instance.chern_min);
  cert.b2 = check_condition_b2(instance.path, instance.chern_min,
                               instance.b2_epsilon, instance.max_iterate);

  ConditionAVerdict verdict = decide_condition_a(group, cert.r);
  cert.condition_a = verdict;
  if (verdict.status == ConditionAVerdict::Status::NO) {
    cert.condition_a_exact_no = true;
    cert.caveats.push_back(
        "the orbit closure misses the open cube exactly, so no extremal "
        "partition of length " +
        std::to_string(cert.r) +
        " exists; this NO_CERTIFICATE is a mathematical negative");
    return cert;
  }

  const long n = cert.n;
  const bool dim4_route = n == 2 && group.dim == 1 && cert.r == 3 &&
                          (cert.chern_min == 2 || cert.chern_min == 3);
  std::optional<Partition> found;
  try {
    if (group.dim == static_cast<std::size_t>(n)) {
      cert.search_method = "toric-power";
      std::optional<long> m = find_toric_power(instance.path, cert.r,
                                               cert.chern_min,
                                               instance.max_iterate);
      if (m) {
        found = make_partition(instance.path,
                               std::vector<long>(
                                   static_cast<std::size_t>(cert.r), *m));
      }
    } else if (dim4_route) {
      cert.search_method = "length-3";
      found = find_length3(instance.path, cert.chern_min,
                           instance.max_iterate);
    } else {
      cert.search_method = "extremal";
      found = find_extremal(instance.path, cert.r, cert.chern_min,
                            instance.max_iterate, true);
    }
  } catch (const SearchBudgetExhausted& e) {
    cert.budget_exhausted = true;
    cert.caveats.push_back(
        std::string("the partition search ran out of node budget before "
                    "covering its bounded range: ") +
        e.what());
    return cert;
  }

  if (!found) {
    cert.caveats.push_back(
        "no residue-compliant extremal partition of length " +
        std::to_string(cert.r) + " was found with parts up to " +
        std::to_string(instance.max_iterate) +
        "; a bounded search coming up empty is not a disproof");
    return cert;
  }

  cert.partition = *found;
  cert.extremal_reverified = is_extremal(instance.path, found->parts);
  if (!cert.extremal_reverified) {
    throw Error(
        "internal invariant broken: the search returned a partition that "
        "is_extremal rejects");
  }

  const Integer two_n = 2 * Integer(n);
  const Integer modulus = 2 * cert.chern_min;
  bool all_checks = true;
  for (std::size_t i = 0; i < found->parts.size(); ++i) {
    DegreeEntry entry;
    entry.part = found->parts[i];
    entry.index = found->indices[i];
    entry.degree = Integer(n) + entry.index;
    entry.check = (entry.degree - two_n) % modulus != 0;
    bool via_index = (entry.index - Integer(n)) % modulus != 0;
    if (entry.check != via_index) {
      throw Error("internal invariant broken: the two degree-check forms "
                  "disagree");
    }
    all_checks = all_checks && entry.check;
    cert.degrees.push_back(std::move(entry));
  }

  if (!all_checks) {
    cert.caveats.push_back(
        "a partition was found but some class degree equals 2n mod "
        "2*chern_min, so the product argument does not apply to it");
    return cert;
  }

  if (cert.r >= n + 1) {
    cert.conclusion = Conclusion::DeformedQuantumProduct;
  } else {
    cert.conclusion = Conclusion::NonzeroLongProductOnly;
    cert.caveats.push_back(
        "product_length_r <= n certifies a nonzero product of length " +
        std::to_string(cert.r) +
        " but says nothing about the quantum product being deformed; rerun "
        "with product_length_r >= n + 1 for that");
  }
  return cert;
}

std::string render_report(const Certificate& cert, const ProblemInstance& inst,
                          ReportFormat format) {
  if (format == ReportFormat::Structured) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};

    ordered_json input;
    input["digest"] = "fnv1a64:" + inst.digest;
    input["dimension_n"] = cert.n;
    input["chern_min"] = to_long(cert.chern_min);
    input["product_length_r"] = cert.r;
    ordered_json angles = ordered_json::array();
    for (const auto& lambda : inst.path.lambdas()) angles.push_back(lambda.str());
    input["rotation_numbers"] = std::move(angles);
    input["chern_note"] =
        "chern_min is taken from the instance as given; only the bound "
        "chern_min <= 2n is checked here";
    j["input"] = std::move(input);

    j["chern_gate"] = {{"bound_ok", cert.chern_bound_ok},
                       {"bound", 2 * cert.n}};

    if (cert.group) {
      const BaseGroup& g = *cert.group;
      j["base_group"] = {{"dimension", static_cast<long>(g.dim)},
                         {"codimension", static_cast<long>(g.codim())},
                         {"torsion_order", to_long(g.torsion_order)},
                         {"connected", g.connected()},
                         {"relation_rows", intmat_rows(g.relation_lattice)},
                         {"loop_rows", intmat_rows(g.loop_lattice)}};
    }
    if (cert.b1) {
      ordered_json b1;
      b1["holds"] = cert.b1->holds;
      b1["generator_residue"] = to_long(cert.b1->generator_residue);
      if (cert.b1->witness) {
        ordered_json w = ordered_json::array();
        for (const auto& v : *cert.b1->witness) w.push_back(to_long(v));
        b1["witness"] = std::move(w);
      } else {
        b1["witness"] = nullptr;
      }
      j["condition_b1"] = std::move(b1);
    }
    if (cert.b2) {
      ordered_json b2;
      b2["status"] = b2_status_name(cert.b2->status);
      b2["witness_k"] =
          cert.b2->witness_k ? ordered_json(*cert.b2->witness_k) : nullptr;
      b2["loop_at_witness"] = cert.b2->loop_at_witness
                                  ? ordered_json(to_long(*cert.b2->loop_at_witness))
                                  : nullptr;
      b2["epsilon_used"] = format_rational(cert.b2->epsilon_used);
      b2["bound"] = cert.b2->bound;
      j["condition_b2"] = std::move(b2);
    }
    if (cert.condition_a) {
      ordered_json a;
      a["status"] = a_status_name(cert.condition_a->status);
      if (cert.condition_a->witness_point) {
        ordered_json w = ordered_json::array();
        for (const auto& x : *cert.condition_a->witness_point)
          w.push_back(format_rational(x));
        a["witness_point"] = std::move(w);
      } else {
        a["witness_point"] = nullptr;
      }
      a["scope_note"] = cert.condition_a->scope_note;
      a["exact_negative"] = cert.condition_a_exact_no;
      j["condition_a"] = std::move(a);
    }

    j["search"] = {{"method", cert.search_method},
                   {"max_iterate", cert.search_max_iterate},
                   {"budget_exhausted", cert.budget_exhausted}};

    if (cert.partition) {
      const Partition& p = *cert.partition;
      ordered_json parts = ordered_json::array();
      for (long k : p.parts) parts.push_back(k);
      ordered_json indices = ordered_json::array();
      for (const auto& mu : p.indices) indices.push_back(to_long(mu));
      j["partition"] = {{"parts", std::move(parts)},
                        {"total", p.total},
                        {"indices", std::move(indices)},
                        {"total_index", to_long(p.total_index)},
                        {"defect", to_long(p.defect_value)},
                        {"extremal_reverified", cert.extremal_reverified}};
    }

    ordered_json degrees = ordered_json::array();
    for (const auto& d : cert.degrees) {
      degrees.push_back({{"part", d.part},
                         {"index", to_long(d.index)},
                         {"degree", to_long(d.degree)},
                         {"not_2n_mod_2chern", d.check}});
    }
    j["degrees"] = std::move(degrees);

    j["conclusion"] = conclusion_name(cert.conclusion);
    j["caveats"] = cert.caveats;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << kToolName << " " << kToolVersion << "\n";
  out << "input digest    fnv1a64:" << inst.digest << "\n";
  out << "dimension n     " << cert.n << "\n";
  out << "chern_min       " << cert.chern_min << " (trusted as given)\n";
  out << "product length  " << cert.r << "\n";
  out << "angles          ";
  for (std::size_t i = 0; i < inst.path.planes(); ++i) {
    if (i) out << ", ";
    out << inst.path.lambda(i).str();
  }
  out << "\n";
  out << "chern gate      " << (cert.chern_bound_ok ? "ok" : "FAILED")
      << " (bound 2n = " << 2 * cert.n << ")\n";
  if (cert.group) {
    out << "base group      dim " << cert.group->dim << ", components "
        << cert.group->torsion_order << "\n";
  }
  if (cert.b1) {
    out << "condition B1    " << (cert.b1->holds ? "holds" : "fails")
        << " (residue generator " << cert.b1->generator_residue << ")\n";
  }
  if (cert.b2) {
    out << "condition B2    " << b2_status_name(cert.b2->status);
    if (cert.b2->witness_k) out << " at k = " << *cert.b2->witness_k;
    out << "\n";
  }
  if (cert.condition_a) {
    out << "condition A     " << a_status_name(cert.condition_a->status)
        << "\n";
  }
  out << "search          " << cert.search_method << ", parts up to "
      << cert.search_max_iterate << "\n";
  if (cert.partition) {
    out << "partition       " << join_parts(cert.partition->parts)
        << ", defect " << cert.partition->defect_value << ", reverified "
        << (cert.extremal_reverified ? "yes" : "NO") << "\n";
    out << "degrees         ";
    for (std::size_t i = 0; i < cert.degrees.size(); ++i) {
      if (i) out << ", ";
      out << cert.degrees[i].degree
          << (cert.degrees[i].check ? "" : " [collides with 2n]");
    }
    out << "\n";
  }
  out << "conclusion      " << conclusion_name(cert.conclusion) << "\n";
  for (const auto& caveat : cert.caveats) {
    out << "caveat          " << caveat << "\n";
  }
  return out.str();
}

}  // namespace symcert
