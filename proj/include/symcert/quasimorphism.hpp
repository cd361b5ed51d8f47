#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace symcert {

/// Relative tolerance for "this matrix is symplectic" checks.
inline constexpr double kSymplecticTol = 1e-9;

/// Eigenvalues of a symmetric matrix within kZeroBand * spectral_radius of
/// zero are treated as numerically ambiguous and raise SingularEigenvalue
/// instead of being rounded into a signature.
inline constexpr double kZeroBand = 1e-8;

/// Matrix of the standard symplectic form on R^{2n} in plane-major
/// coordinates (x_1, y_1, ..., x_n, y_n): block diagonal copies of
/// [[0, 1], [-1, 0]], so form(u, v) = u^T J v and form(x_j, y_j) = +1.
Eigen::MatrixXd standard_form(long n);

/// Matrix of the twisted form on R^{2n} x R^{2n}: minus the standard form on
/// the first factor, plus it on the second. Graphs of symplectic matrices are
/// Lagrangian for this form.
Eigen::MatrixXd twisted_form(long n);

/// Direct sum of rotations by 2*pi*angles[j], one rotation per plane.
/// A positive angle turns x_j toward y_j; the quarter turn sends x to y.
/// This matches the sign of the angle lifts carried by SymplecticPath, so a
/// path with constant angles lambda ends at block_rotation(lambda).
Eigen::MatrixXd block_rotation(const std::vector<double>& angles);

/// A 2n x 2n matrix validated to preserve the standard form, kept in plain
/// doubles. The validation is relative: |M^T J M - J| <= tol * max(1, |M|^2)
/// in Frobenius norm.
struct SymplecticMatrix {
  Eigen::MatrixXd entries;

  explicit SymplecticMatrix(Eigen::MatrixXd m, double tol = kSymplecticTol);

  long planes() const { return entries.rows() / 2; }
};

/// A 4n x 2n frame whose columns span a Lagrangian subspace of the twisted
/// product, first factor in the top rows. Construction checks full column
/// rank and isotropy under the twisted form.
struct LagrangianFrame {
  Eigen::MatrixXd columns;

  explicit LagrangianFrame(Eigen::MatrixXd f, double tol = kSymplecticTol);

  long planes() const { return columns.rows() / 4; }
};

/// Frame of the graph {(x, Mx)}.
LagrangianFrame graph_frame(const SymplecticMatrix& m);

/// Frame of the diagonal {(x, x)}.
LagrangianFrame diagonal_frame(long n);

/// Frame of the anti-diagonal {(x, -x)}, the first complement of the
/// diagonal the defect computation tries. It is transverse to the graph of M
/// exactly when det(M + I) != 0.
LagrangianFrame antidiagonal_frame(long n);

/// A random Lagrangian complement of the diagonal: the anti-diagonal sheared
/// by a symmetric matrix with entries drawn uniformly from [-1, 1],
/// deterministic in the seed. Every Lagrangian complement of the diagonal is
/// such a shear, so retrying seeds searches the whole space.
LagrangianFrame sheared_complement(long n, std::uint32_t seed);

/// A reproducible random symplectic matrix exp(J S), S symmetric with
/// entries uniform in [-0.8, 0.8].
SymplecticMatrix random_symplectic(long n, std::uint32_t seed);

/// Number of eigenvalues above the zero band minus the number below it, for
/// a symmetric matrix. The band is tol * spectral_radius; any eigenvalue
/// inside it raises SingularEigenvalue rather than being dropped silently,
/// because every use here needs the exact integer. The zero matrix has
/// signature 0.
int signature(const Eigen::MatrixXd& s, double tol = kZeroBand);

/// Index defect of the pair: cz(q*p) - cz(q) - cz(p) for any choice of path
/// lifts, computed at the matrix level. The value is read off as half the
/// signature of B^{-1} - A^{-1}, where A and B are the symmetric matrices
/// representing the graphs of q and q*p over the splitting of the twisted
/// product into the diagonal and a Lagrangian complement. The orientation of
/// that reading is fixed by the rotation pair: both factors a quarter-ish
/// turn gives -1, not +1. The result never depends on which complement was
/// found (the anti-diagonal, or one of up to 32 seeded shears when some
/// graph meets the anti-diagonal).
///
/// Throws DegenerateInput when p, q or q*p has 1 as an eigenvalue within
/// tol, ComplementNotFound when every candidate complement fails, and
/// SingularEigenvalue when the final spectrum sits too close to zero to
/// trust.
long hormander_defect(const SymplecticMatrix& p, const SymplecticMatrix& q,
                      double tol = kSymplecticTol,
                      std::uint32_t seed = 0x5ca1ab1eu);

/// Same defect evaluated over a caller-supplied Lagrangian complement of the
/// diagonal; the integer returned does not depend on that choice. Throws
/// InvalidInput when the complement fails to be transverse to one of the two
/// graphs.
long hormander_defect_over(const LagrangianFrame& complement,
                           const SymplecticMatrix& p,
                           const SymplecticMatrix& q,
                           double tol = kSymplecticTol);

/// |defect| <= n, which holds for every non-degenerate pair. Errors from the
/// defect computation propagate.
bool verify_bound(const SymplecticMatrix& p, const SymplecticMatrix& q,
                  double tol = kSymplecticTol);

}  // namespace symcert
