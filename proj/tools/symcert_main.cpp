#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "symcert/base_group.hpp"
#include "symcert/certify.hpp"
#include "symcert/condition_a.hpp"
#include "symcert/dim4.hpp"
#include "symcert/errors.hpp"
#include "symcert/instance_io.hpp"
#include "symcert/partitions.hpp"
#include "symcert/quasimorphism.hpp"
#include "symcert/symplectic_path.hpp"
#include "symcert/version.hpp"

namespace {

using namespace symcert;

struct Overrides {
  long max_iterate = -1;
  long precision_bits = -1;
  long r = -1;
  long chern = -1;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--max-iterate", ov.max_iterate,
                  "override the instance's search.max_iterate");
  cmd->add_option("--precision-bits", ov.precision_bits,
                  "override the instance's search.precision_bits");
  cmd->add_option("--r", ov.r, "override product_length_r");
  cmd->add_option("--chern", ov.chern, "override chern_min");
}

ProblemInstance load_with(const std::string& file, const Overrides& ov) {
  ProblemInstance inst = load_instance(file);
  if (ov.max_iterate > 0) inst.max_iterate = ov.max_iterate;
  if (ov.r > 0) inst.product_length_r = ov.r;
  if (ov.chern > 0) inst.chern_min = ov.chern;
  if (ov.precision_bits > 0) {
    inst.precision_bits = static_cast<unsigned>(ov.precision_bits);
    inst.path = SymplecticPath(inst.path.lambdas(), inst.basis,
                               inst.precision_bits);
  }
  return inst;
}

std::string opt_int(const std::optional<Integer>& v) {
  return v ? v->str() : std::string("-");
}

int run_index(const std::string& file, const Overrides& ov, long k_min,
              long k_max) {
  ProblemInstance inst = load_with(file, ov);
  if (k_min < 1 || k_max < k_min)
    throw InvalidInput("need 1 <= k-min <= k-max");
  std::cout << std::left << std::setw(8) << "k" << std::setw(10) << "index"
            << std::setw(10) << "loop" << "mean\n";
  for (long k = k_min; k <= k_max; ++k) {
    IterateSnapshot snap = snapshot(inst.path, k, inst.precision_bits);
    std::string cz = snap.degenerate ? "degen" : opt_int(snap.cz);
    std::string loop = snap.loop_tie ? "tie" : opt_int(snap.loop);
    std::cout << std::left << std::setw(8) << k << std::setw(10) << cz
              << std::setw(10) << loop << snap.mean.str() << "\n";
  }
  return 0;
}

void print_lattice(const char* label, const IntMat& m) {
  std::cout << label << " (" << m.rows << " x " << m.cols << ")\n";
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::cout << "   ";
    for (std::size_t j = 0; j < m.cols; ++j) std::cout << " " << m.at(i, j);
    std::cout << "\n";
  }
}

int run_base_group(const std::string& file, const Overrides& ov) {
  ProblemInstance inst = load_with(file, ov);
  BaseGroup g = compute_base_group(inst.path);
  std::cout << "planes          " << g.n << "\n";
  std::cout << "dimension       " << g.dim << "\n";
  std::cout << "codimension     " << g.codim() << "\n";
  std::cout << "components      " << g.torsion_order << "\n";
  std::cout << "connected       " << (g.connected() ? "yes" : "no") << "\n";
  print_lattice("relation rows", g.relation_lattice);
  print_lattice("loop rows", g.loop_lattice);
  ConditionB1 b1 = check_condition_b1(g, inst.chern_min);
  std::cout << "condition B1    " << (b1.holds ? "holds" : "fails")
            << ", residue generator " << b1.generator_residue << " mod "
            << inst.chern_min << "\n";
  ConditionB2 b2 = check_condition_b2(inst.path, inst.chern_min,
                                      inst.b2_epsilon, inst.max_iterate);
  const char* s = b2.status == ConditionB2::Status::HOLDS ? "holds"
                  : b2.status == ConditionB2::Status::FAILS_UP_TO_BOUND
                      ? "fails up to the bound"
                      : "not applicable";
  std::cout << "condition B2    " << s;
  if (b2.witness_k) std::cout << ", witness k = " << *b2.witness_k;
  std::cout << " (scanned " << b2.bound << " iterates, epsilon "
            << format_rational(b2.epsilon_used) << ")\n";
  return 0;
}

int run_condition_a(const std::string& file, const Overrides& ov) {
  ProblemInstance inst = load_with(file, ov);
  BaseGroup g = compute_base_group(inst.path);
  long r = inst.product_length_r;
  std::vector<CubeComponent> comps = enumerate_components(g);
  std::cout << "components in the unit cube: " << comps.size() << "\n";
  for (const CubeComponent& c : comps) {
    std::cout << "  #" << c.q << " offset";
    for (const Integer& o : c.offset) std::cout << " " << o;
    std::cout << ", distance " << format_rational(c.distance) << "\n";
  }
  CubeIntersection cut = cube_intersection(g, r);
  std::cout << "open cube (0, 1/" << r << ")^" << g.n << " intersection: "
            << (cut.nonempty ? "nonempty" : "empty") << "\n";
  if (cut.nonempty) {
    std::cout << "  witness";
    for (const Rational& x : cut.witness)
      std::cout << " " << format_rational(x);
    std::cout << ", margin " << format_rational(cut.margin) << "\n";
  }
  ConditionAVerdict v = decide_condition_a(g, r);
  const char* name = v.status == ConditionAVerdict::Status::YES ? "YES"
                     : v.status == ConditionAVerdict::Status::NO ? "NO"
                                                                 : "UNKNOWN";
  std::cout << "condition A at r = " << r << ": " << name << "\n";
  if (!v.scope_note.empty()) std::cout << "  note: " << v.scope_note << "\n";
  return 0;
}

void print_partition(const Partition& p) {
  std::cout << "parts      ";
  for (long k : p.parts) std::cout << " " << k;
  std::cout << "\ntotal       " << p.total << "\n";
  std::cout << "indices    ";
  for (const Integer& mu : p.indices) std::cout << " " << mu;
  std::cout << "\ntotal index " << p.total_index << "\n";
  std::cout << "defect      " << p.defect_value << "\n";
}

int run_find_partitions(const std::string& file, const Overrides& ov) {
  ProblemInstance inst = load_with(file, ov);
  std::optional<Partition> p =
      find_extremal(inst.path, inst.product_length_r, inst.chern_min,
                    inst.max_iterate, true);
  if (!p) {
    std::cout << "no residue-compliant extremal partition with parts up to "
              << inst.max_iterate << "\n";
    return 0;
  }
  print_partition(*p);
  return 0;
}

int run_dim4(const std::string& file, const Overrides& ov) {
  ProblemInstance inst = load_with(file, ov);
  BaseGroup g = compute_base_group(inst.path);
  if (g.dim == 2) {
    std::cout << "closure is the whole torus; the slope machinery does not "
                 "apply, delegating to the general search\n";
  } else {
    SlopeData sd = slope(g);
    std::cout << "slope " << format_rational(sd.s) << " from relation ("
              << sd.s1 << ", " << sd.s2 << "), "
              << (sd.connected ? "connected" : "disconnected") << "\n";
    std::cout << "listed as hopeless for chern_min = " << inst.chern_min
              << ": " << (blacklisted_slope(sd, inst.chern_min) ? "yes" : "no")
              << "\n";
  }
  std::optional<Partition> p =
      find_length3(inst.path, inst.chern_min, inst.max_iterate);
  if (!p) {
    std::cout << "no length-3 partition with parts up to " << inst.max_iterate
              << "\n";
    return 0;
  }
  print_partition(*p);
  return 0;
}

Eigen::MatrixXd read_matrix(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open matrix file '" + file + "'");
  std::vector<double> vals;
  double x;
  while (in >> x) vals.push_back(x);
  if (!in.eof()) throw ParseError("non-numeric token in '" + file + "'");
  long d = static_cast<long>(std::llround(std::sqrt(double(vals.size()))));
  if (d < 2 || d % 2 != 0 || static_cast<std::size_t>(d) * d != vals.size())
    throw ParseError("'" + file + "' holds " + std::to_string(vals.size()) +
                     " numbers; expected a full 2n x 2n grid");
  Eigen::MatrixXd m(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) m(i, j) = vals[static_cast<std::size_t>(i * d + j)];
  return m;
}

int run_defect(const std::string& p_file, const std::string& q_file,
               unsigned long seed) {
  SymplecticMatrix p{read_matrix(p_file)};
  SymplecticMatrix q{read_matrix(q_file)};
  long d = hormander_defect(p, q, kSymplecticTol,
                            static_cast<std::uint32_t>(seed));
  std::cout << "defect " << d << " (bound " << p.planes() << ")\n";
  return 0;
}

int run_certify(const std::string& file, const Overrides& ov,
                const std::string& output, const std::string& report_file) {
  ProblemInstance inst = load_with(file, ov);
  Certificate cert = certify(inst);
  ReportFormat fmt =
      output == "table" ? ReportFormat::Table : ReportFormat::Structured;
  std::string report = render_report(cert, inst, fmt);
  if (!report_file.empty()) {
    std::ofstream out(report_file, std::ios::binary);
    if (!out) throw Error("cannot write report to '" + report_file + "'");
    out << report;
    std::cout << "conclusion " << conclusion_name(cert.conclusion)
              << ", report written to " << report_file << "\n";
  } else {
    std::cout << report;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certificate toolkit for elliptic symplectic paths"};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  Overrides ov;
  std::string file, p_file, q_file, output = "structured", report_file;
  long k_min = 1, k_max = 20;
  unsigned long seed = 0x5ca1ab1eUL;

  CLI::App* index = app.add_subcommand(
      "index", "print index, loop and mean index over an iterate range");
  index->add_option("instance", file, "instance file")->required();
  index->add_option("--k-min", k_min, "first iterate");
  index->add_option("--k-max", k_max, "last iterate");
  add_override_flags(index, ov);

  CLI::App* bg = app.add_subcommand(
      "base-group", "orbit-closure group with the loop conditions");
  bg->add_option("instance", file, "instance file")->required();
  add_override_flags(bg, ov);

  CLI::App* ca = app.add_subcommand(
      "condition-a", "cube components and the intersection decision");
  ca->add_option("instance", file, "instance file")->required();
  add_override_flags(ca, ov);

  CLI::App* fp = app.add_subcommand(
      "find-partitions", "search for a residue-compliant extremal partition");
  fp->add_option("instance", file, "instance file")->required();
  add_override_flags(fp, ov);

  CLI::App* d4 = app.add_subcommand(
      "dim4", "two-plane slope classification and the length-3 search");
  d4->add_option("instance", file, "instance file")->required();
  add_override_flags(d4, ov);

  CLI::App* df = app.add_subcommand(
      "defect", "quasimorphism defect of two symplectic matrices");
  df->add_option("--p", p_file, "whitespace 2n x 2n grid")->required();
  df->add_option("--q", q_file, "whitespace 2n x 2n grid")->required();
  df->add_option("--seed", seed, "seed for randomized complements");

  CLI::App* ce = app.add_subcommand("certify", "run the whole pipeline");
  ce->add_option("instance", file, "instance file")->required();
  ce->add_option("--output", output, "report format")
      ->check(CLI::IsMember({"structured", "table"}));
  ce->add_option("--report", report_file, "also write the report to a file");
  add_override_flags(ce, ov);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*index) return run_index(file, ov, k_min, k_max);
    if (*bg) return run_base_group(file, ov);
    if (*ca) return run_condition_a(file, ov);
    if (*fp) return run_find_partitions(file, ov);
    if (*d4) return run_dim4(file, ov);
    if (*df) return run_defect(p_file, q_file, seed);
    if (*ce) return run_certify(file, ov, output, report_file);
  } catch (const symcert::Error& e) {
    std::cerr << "symcert: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "symcert: internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
