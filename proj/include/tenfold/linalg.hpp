#pragma once

// Dense primitives shared by every other module: hermitian spectra,
// orthonormal frames, principal-angle intersections, ordered Schur
// invariant subspaces and Pfaffians.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <type_traits>

#include "tenfold/errors.hpp"

namespace tenfold {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical thresholds. rank_tol is relative to the largest singular value;
/// eig_tol is an absolute distance in the complex plane; frame_tol bounds
/// orthonormality and subspace-equality residuals.
struct Tolerances {
  double rank_tol = 1e-9;
  double eig_tol = 1e-8;
  double frame_tol = 1e-10;

  void validate() const;
};

/// Orthonormal basis of a subspace of C^ambient. Rank 0 is allowed and
/// represents the zero subspace.
class Frame {
 public:
  Frame() = default;

  /// Throws NotUnitary when the columns are not orthonormal within `tol`.
  explicit Frame(Matrix columns, double tol = 1e-10);

  static Frame empty(Index ambient_dim);

  Index ambient_dim() const noexcept { return columns_.rows(); }
  Index rank() const noexcept { return columns_.cols(); }
  const Matrix& columns() const noexcept { return columns_; }

  /// Orthogonal projector onto the span.
  Matrix projector() const { return columns_ * columns_.adjoint(); }

  /// max |F*F - I|
  double orthonormality_defect() const;

 private:
  Matrix columns_;
};

template <typename Scalar>
struct EigenPairs {
  RealVector values;  // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  return max_abs(a - a.adjoint());
}

/// Eigen-decomposition of a hermitian (or real symmetric) matrix.
template <typename Derived>
EigenPairs<typename Derived::Scalar> hermitian_eig(const Eigen::MatrixBase<Derived>& a,
                                                   const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "hermitian_eig needs a square matrix");
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_defect(a) >= tol.frame_tol * scale)
    throw Error(ErrorKind::NotHermitian, "hermitian_eig input fails A = A*");
  MatrixType sym = (a + a.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<MatrixType> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Frame spanning the numerically significant column space of `vectors`
/// (singular values above rank_tol * sigma_max).
Frame orthonormalize(const Matrix& vectors, const Tolerances& tol = {});

/// Number of principal angles between span(F1) and span(F2) that vanish
/// within eig_tol. Angles are measured through their sines, which keeps the
/// test sharp near zero.
Index subspace_intersection_dim(const Frame& f1, const Frame& f2, const Tolerances& tol = {});

/// Operator-norm distance between the orthogonal projectors of two frames.
double projector_distance(const Frame& f1, const Frame& f2);

/// Invariant subspace of `m` for the eigenvalues accepted by `select`,
/// obtained from a complex Schur form reordered by adjacent Givens swaps.
Frame ordered_schur_subspace(const Matrix& m, const std::function<bool(cplx)>& select);

struct StableSplit {
  Frame stable;
  Frame unstable;
  Index unit_circle_count = 0;
};

/// Splits C^n into the invariant subspaces of `m` for |lambda| < 1 and
/// |lambda| > 1. Eigenvalues within eig_tol of the unit circle are counted
/// and left out of both.
StableSplit stable_unstable_split(const Matrix& m, const Tolerances& tol = {});

/// Pfaffian of an antisymmetric matrix by Parlett-Reid tridiagonalization
/// with partial pivoting. Pf([[0, 1], [-1, 0]]) = +1.
template <typename Derived>
typename Derived::Scalar pfaffian(const Eigen::MatrixBase<Derived>& input, const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  const Index n = input.rows();
  if (n != input.cols()) throw Error(ErrorKind::DimensionMismatch, "pfaffian needs a square matrix");
  if (n % 2 != 0) throw Error(ErrorKind::OddDimension, "pfaffian of odd-dimensional matrix");
  const double scale = std::max(1.0, max_abs(input));
  if (max_abs(input + input.transpose()) >= tol.frame_tol * scale)
    throw Error(ErrorKind::NotAntisymmetric, "pfaffian input fails A^T = -A");

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = (input - input.transpose()) / Scalar(2);
  Scalar result(1);
  for (Index k = 0; k + 1 < n; k += 2) {
    Index pivot = 0;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&pivot);
    pivot += k + 1;
    if (pivot != k + 1) {
      a.row(k + 1).swap(a.row(pivot));
      a.col(k + 1).swap(a.col(pivot));
      result = -result;
    }
    if (a(k + 1, k) == Scalar(0)) return Scalar(0);
    result *= a(k, k + 1);
    if (k + 2 < n) {
      const Index rest = n - k - 2;
      Eigen::Matrix<Scalar, 1, Eigen::Dynamic> tau = a.row(k).tail(rest) / a(k, k + 1);
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pivot_col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau.transpose() * pivot_col.transpose() - pivot_col * tau;
    }
  }
  return result;
}

/// Sum of principal logarithms of the eigenvalues of an orthogonal (or
/// unitary) matrix. Throws BranchCutHit when -1 is in the spectrum.
template <typename Derived>
cplx principal_log_trace(const Eigen::MatrixBase<Derived>& o, const Tolerances& tol = {}) {
  if (o.rows() != o.cols()) throw Error(ErrorKind::DimensionMismatch, "principal_log_trace needs a square matrix");
  Matrix oc = o.template cast<cplx>();
  Eigen::ComplexEigenSolver<Matrix> solver(oc, false);
  cplx sum = 0.0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const cplx lambda = solver.eigenvalues()(i);
    if (std::abs(lambda + 1.0) <= tol.eig_tol)
      throw Error(ErrorKind::BranchCutHit, "-1 lies in the spectrum");
    sum += std::log(lambda);
  }
  return sum;
}

/// Principal square root and inverse square root of a hermitian positive
/// definite matrix.
Matrix hermitian_sqrt(const Matrix& a);
Matrix hermitian_inv_sqrt(const Matrix& a);

/// Smallest singular value divided by the largest (0 for the zero matrix).
double inverse_condition(const Matrix& a);

}  // namespace tenfold
