#include "symcert/quasimorphism.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "symcert/errors.hpp"

namespace symcert {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Hard floor below which a 2n x 2n block is treated as singular when testing
// whether a complement is transverse to a graph, and the margin the retry
// loop prefers before settling for less. Margins compare the smallest
// singular value of the top block against the size of the whole splitting,
// not of the block alone: when a graph coincides with the complement the top
// block is pure roundoff noise whose internal ratios mean nothing.
constexpr double kTransversalityMargin = 1e-9;
constexpr double kPreferredMargin = 1e-6;

long planes_of(const Eigen::MatrixXd& m) { return m.rows() / 2; }

void check_nondegenerate(const Eigen::MatrixXd& m, const char* which,
                         double tol) {
  Eigen::MatrixXd shifted =
      m - Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted);
  const auto& sv = svd.singularValues();
  double largest = sv(0);
  double smallest = sv(sv.size() - 1);
  if (smallest <= tol * std::max(1.0, largest)) {
    throw DegenerateInput(std::string("matrix '") + which +
                          "' fixes a vector within tolerance, so its index "
                          "contribution is ambiguous");
  }
}

double relative_rank_margin(const Eigen::MatrixXd& block) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
  const auto& sv = svd.singularValues();
  double largest = sv(0);
  if (largest == 0.0) return 0.0;
  return sv(sv.size() - 1) / largest;
}

// Solves [diagonal | complement] * [u; w] = frame and returns the top block
// margin together with the symmetric matrix representing the frame over the
// splitting. A frame is transverse to the complement iff u is invertible.
struct SplitGraph {
  double margin = 0.0;
  Eigen::MatrixXd gram;  // filled only when margin is acceptable
};

SplitGraph split_over(const Eigen::FullPivLU<Eigen::MatrixXd>& basis_lu,
                      const Eigen::MatrixXd& pairing,
                      const Eigen::MatrixXd& frame, bool want_gram) {
  const long half = frame.cols();
  Eigen::MatrixXd uw = basis_lu.solve(frame);
  Eigen::MatrixXd u = uw.topRows(half);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u);
  const auto& sv = svd.singularValues();
  SplitGraph out;
  out.margin = sv(sv.size() - 1) / std::max(1.0, uw.norm());
  if (!want_gram || out.margin <= kTransversalityMargin) return out;
  Eigen::MatrixXd w = uw.bottomRows(half);
  // s = w * u^{-1}, computed as the solution of u^T s^T = w^T.
  Eigen::MatrixXd s =
      u.transpose().fullPivLu().solve(w.transpose()).transpose();
  Eigen::MatrixXd gram = pairing * s;
  double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-6 * scale) {
    throw InvalidInput(
        "graph did not reduce to a symmetric matrix over the splitting; the "
        "frames involved are too ill-conditioned");
  }
  out.gram = 0.5 * (gram + gram.transpose());
  return out;
}

Eigen::MatrixXd inverse_checked(const Eigen::MatrixXd& m, const char* which) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) {
    throw DegenerateInput(std::string("the symmetric form for '") + which +
                          "' is numerically singular");
  }
  return lu.inverse();
}

}  // namespace

Eigen::MatrixXd standard_form(long n) {
  if (n <= 0) throw InvalidInput("need at least one plane");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (long k = 0; k < n; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

Eigen::MatrixXd twisted_form(long n) {
  Eigen::MatrixXd j = standard_form(n);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  omega.topLeftCorner(2 * n, 2 * n) = -j;
  omega.bottomRightCorner(2 * n, 2 * n) = j;
  return omega;
}

Eigen::MatrixXd block_rotation(const std::vector<double>& angles) {
  const long n = static_cast<long>(angles.size());
  if (n == 0) throw InvalidInput("need at least one plane");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (long k = 0; k < n; ++k) {
    double c = std::cos(kTwoPi * angles[static_cast<std::size_t>(k)]);
    double s = std::sin(kTwoPi * angles[static_cast<std::size_t>(k)]);
    m(2 * k, 2 * k) = c;
    m(2 * k, 2 * k + 1) = -s;
    m(2 * k + 1, 2 * k) = s;
    m(2 * k + 1, 2 * k + 1) = c;
  }
  return m;
}

SymplecticMatrix::SymplecticMatrix(Eigen::MatrixXd m, double tol)
    : entries(std::move(m)) {
  if (entries.rows() != entries.cols() || entries.rows() < 2 ||
      entries.rows() % 2 != 0) {
    throw InvalidInput("a symplectic matrix must be square of even size");
  }
  Eigen::MatrixXd j = standard_form(planes_of(entries));
  double scale = std::max(1.0, entries.squaredNorm());
  double residual = (entries.transpose() * j * entries - j).norm();
  if (residual > tol * scale) {
    throw InvalidInput("matrix does not preserve the standard form: residual " +
                       std::to_string(residual));
  }
}

LagrangianFrame::LagrangianFrame(Eigen::MatrixXd f, double tol)
    : columns(std::move(f)) {
  if (columns.rows() < 4 || columns.rows() % 4 != 0 ||
      columns.cols() * 2 != columns.rows()) {
    throw InvalidInput("a Lagrangian frame must be 4n x 2n");
  }
  if (relative_rank_margin(columns) <= kTransversalityMargin) {
    throw InvalidInput("Lagrangian frame has deficient column rank");
  }
  Eigen::MatrixXd omega = twisted_form(planes());
  double scale = std::max(1.0, columns.squaredNorm());
  double residual = (columns.transpose() * omega * columns).norm();
  if (residual > tol * scale) {
    throw InvalidInput("frame spans a non-isotropic subspace: residual " +
                       std::to_string(residual));
  }
}

LagrangianFrame graph_frame(const SymplecticMatrix& m) {
  const long n = m.planes();
  Eigen::MatrixXd f(4 * n, 2 * n);
  f.topRows(2 * n) = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  f.bottomRows(2 * n) = m.entries;
  return LagrangianFrame(std::move(f));
}

LagrangianFrame diagonal_frame(long n) {
  Eigen::MatrixXd f(4 * n, 2 * n);
  f.topRows(2 * n) = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  f.bottomRows(2 * n) = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  return LagrangianFrame(std::move(f));
}

LagrangianFrame antidiagonal_frame(long n) {
  Eigen::MatrixXd f(4 * n, 2 * n);
  f.topRows(2 * n) = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  f.bottomRows(2 * n) = -Eigen::MatrixXd::Identity(2 * n, 2 * n);
  return LagrangianFrame(std::move(f));
}

LagrangianFrame sheared_complement(long n, std::uint32_t seed) {
  if (n <= 0) throw InvalidInput("need at least one plane");
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> pick(-1.0, 1.0);
  Eigen::MatrixXd sym(2 * n, 2 * n);
  for (long r = 0; r < 2 * n; ++r) {
    for (long c = r; c < 2 * n; ++c) {
      double v = pick(gen);
      sym(r, c) = v;
      sym(c, r) = v;
    }
  }
  Eigen::MatrixXd d = diagonal_frame(n).columns;
  Eigen::MatrixXd n0 = antidiagonal_frame(n).columns;
  // The shear n0 + d * c stays Lagrangian exactly when h * c is symmetric,
  // h being the pairing of the anti-diagonal against the diagonal.
  Eigen::MatrixXd h = n0.transpose() * twisted_form(n) * d;
  Eigen::MatrixXd c = h.fullPivLu().solve(sym);
  return LagrangianFrame(n0 + d * c);
}

SymplecticMatrix random_symplectic(long n, std::uint32_t seed) {
  if (n <= 0) throw InvalidInput("need at least one plane");
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> pick(-0.8, 0.8);
  Eigen::MatrixXd sym(2 * n, 2 * n);
  for (long r = 0; r < 2 * n; ++r) {
    for (long c = r; c < 2 * n; ++c) {
      double v = pick(gen);
      sym(r, c) = v;
      sym(c, r) = v;
    }
  }
  Eigen::MatrixXd ham = standard_form(n) * sym;
  return SymplecticMatrix(ham.exp());
}

int signature(const Eigen::MatrixXd& s, double tol) {
  if (s.rows() != s.cols()) throw InvalidInput("signature needs a square matrix");
  double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw InvalidInput("signature needs a symmetric matrix");
  }
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  const auto& values = eig.eigenvalues();
  double radius = 0.0;
  for (long i = 0; i < values.size(); ++i)
    radius = std::max(radius, std::abs(values(i)));
  if (radius == 0.0) return 0;
  double band = tol * radius;
  int positive = 0;
  int negative = 0;
  for (long i = 0; i < values.size(); ++i) {
    if (std::abs(values(i)) <= band) {
      throw SingularEigenvalue(
          "eigenvalue " + std::to_string(values(i)) +
          " sits inside the zero band; the signature is not trustworthy");
    }
    if (values(i) > 0.0) {
      ++positive;
    } else {
      ++negative;
    }
  }
  return positive - negative;
}

long hormander_defect_over(const LagrangianFrame& complement,
                           const SymplecticMatrix& p,
                           const SymplecticMatrix& q, double tol) {
  const long n = p.planes();
  if (q.planes() != n || complement.planes() != n) {
    throw InvalidInput("defect inputs must share one plane count");
  }
  check_nondegenerate(p.entries, "p", tol);
  check_nondegenerate(q.entries, "q", tol);
  Eigen::MatrixXd product = q.entries * p.entries;
  check_nondegenerate(product, "q*p", tol);

  Eigen::MatrixXd diag = diagonal_frame(n).columns;
  Eigen::MatrixXd basis(4 * n, 4 * n);
  basis << diag, complement.columns;
  Eigen::FullPivLU<Eigen::MatrixXd> basis_lu(basis);
  if (!basis_lu.isInvertible()) {
    throw InvalidInput("complement does not complete the diagonal to a basis");
  }
  Eigen::MatrixXd pairing =
      diag.transpose() * twisted_form(n) * complement.columns;

  SplitGraph a = split_over(basis_lu, pairing,
                            graph_frame(q).columns, true);
  if (a.margin <= kTransversalityMargin) {
    throw InvalidInput("complement is not transverse to the graph of q");
  }
  SplitGraph b = split_over(basis_lu, pairing,
                            graph_frame(SymplecticMatrix(product)).columns,
                            true);
  if (b.margin <= kTransversalityMargin) {
    throw InvalidInput("complement is not transverse to the graph of q*p");
  }

  Eigen::MatrixXd difference =
      inverse_checked(b.gram, "q*p") - inverse_checked(a.gram, "q");
  int sig = signature(difference, kZeroBand);
  if (sig % 2 != 0) {
    throw SingularEigenvalue(
        "signature came out odd, which only happens when part of the "
        "spectrum was lost to rounding");
  }
  return sig / 2;
}

long hormander_defect(const SymplecticMatrix& p, const SymplecticMatrix& q,
                      double tol, std::uint32_t seed) {
  const long n = p.planes();
  if (q.planes() != n) {
    throw InvalidInput("defect inputs must share one plane count");
  }
  check_nondegenerate(p.entries, "p", tol);
  check_nondegenerate(q.entries, "q", tol);
  Eigen::MatrixXd product = q.entries * p.entries;
  check_nondegenerate(product, "q*p", tol);

  Eigen::MatrixXd diag = diagonal_frame(n).columns;
  Eigen::MatrixXd graph_q = graph_frame(q).columns;
  Eigen::MatrixXd graph_qp = graph_frame(SymplecticMatrix(product)).columns;

  std::mt19937 reseed(seed);
  std::optional<LagrangianFrame> best;
  double best_margin = kTransversalityMargin;
  for (int attempt = 0; attempt <= 32; ++attempt) {
    LagrangianFrame candidate =
        attempt == 0 ? antidiagonal_frame(n)
                     : sheared_complement(n, static_cast<std::uint32_t>(reseed()));
    Eigen::MatrixXd basis(4 * n, 4 * n);
    basis << diag, candidate.columns;
    Eigen::FullPivLU<Eigen::MatrixXd> basis_lu(basis);
    if (!basis_lu.isInvertible()) continue;
    Eigen::MatrixXd pairing;  // not needed for the probe
    double margin =
        std::min(split_over(basis_lu, pairing, graph_q, false).margin,
                 split_over(basis_lu, pairing, graph_qp, false).margin);
    if (margin >= kPreferredMargin) {
      return hormander_defect_over(candidate, p, q, tol);
    }
    if (margin > best_margin) {
      best_margin = margin;
      best = std::move(candidate);
    }
  }
  if (best) return hormander_defect_over(*best, p, q, tol);
  throw ComplementNotFound(
      "no Lagrangian complement transverse to both graphs after the "
      "anti-diagonal and 32 random shears");
}

bool verify_bound(const SymplecticMatrix& p, const SymplecticMatrix& q,
                  double tol) {
  long defect = hormander_defect(p, q, tol);
  long n = p.planes();
  return defect >= -n && defect <= n;
}

}  // namespace symcert
