#include "tenfold/linalg.hpp"

#include <algorithm>
#include <vector>

namespace tenfold {

void Tolerances::validate() const {
  if (!(rank_tol > 0.0) || !(eig_tol > 0.0) || !(frame_tol > 0.0))
    throw Error(ErrorKind::BadSpec, "tolerances must be strictly positive");
}

Frame::Frame(Matrix columns, double tol) : columns_(std::move(columns)) {
  if (orthonormality_defect() >= tol)
    throw Error(ErrorKind::NotUnitary, "frame columns are not orthonormal");
}

Frame Frame::empty(Index ambient_dim) {
  Frame f;
  f.columns_ = Matrix(ambient_dim, 0);
  return f;
}

double Frame::orthonormality_defect() const {
  if (rank() == 0) return 0.0;
  return max_abs(columns_.adjoint() * columns_ - Matrix::Identity(rank(), rank()));
}

Frame orthonormalize(const Matrix& vectors, const Tolerances& tol) {
  if (vectors.cols() == 0) throw Error(ErrorKind::ZeroRank, "no columns to orthonormalize");
  Eigen::BDCSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) throw Error(ErrorKind::ZeroRank, "all columns are numerically null");
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol.rank_tol * s(0)) ++rank;
  // One Gram-Schmidt pass on the retained left singular vectors removes the
  // last ulps of non-orthogonality.
  Eigen::HouseholderQR<Matrix> qr(svd.matrixU().leftCols(rank));
  Matrix q = qr.householderQ() * Matrix::Identity(vectors.rows(), rank);
  return Frame(std::move(q));
}

Index subspace_intersection_dim(const Frame& f1, const Frame& f2, const Tolerances& tol) {
  if (f1.ambient_dim() != f2.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "frames live in different ambient spaces");
  if (f1.rank() == 0 || f2.rank() == 0) return 0;
  // Work from the smaller frame: the sines of its principal angles are the
  // singular values of its component orthogonal to the larger one.
  const Frame& small = f1.rank() <= f2.rank() ? f1 : f2;
  const Frame& large = f1.rank() <= f2.rank() ? f2 : f1;
  Matrix residual = small.columns() - large.columns() * (large.columns().adjoint() * small.columns());
  Eigen::JacobiSVD<Matrix> svd(residual);
  const RealVector& sines = svd.singularValues();
  Index count = 0;
  for (Index i = 0; i < sines.size(); ++i)
    if (sines(i) <= tol.eig_tol) ++count;
  return count;
}

double projector_distance(const Frame& f1, const Frame& f2) {
  if (f1.ambient_dim() != f2.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "frames live in different ambient spaces");
  Matrix diff = f1.projector() - f2.projector();
  if (diff.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(diff);
  return svd.singularValues()(0);
}

namespace {

// Exchanges the adjacent diagonal entries k, k+1 of the upper-triangular
// `t`, updating the Schur vectors `q` so that q t q* is unchanged.
void swap_schur_pair(Matrix& t, Matrix& q, Index k) {
  const cplx a = t(k, k);
  const cplx b = t(k + 1, k + 1);
  const cplx c = t(k, k + 1);
  Eigen::Vector2cd v(c, b - a);
  const double norm = v.norm();
  if (norm == 0.0) return;
  v /= norm;
  Eigen::Matrix2cd g;
  g << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  q.middleCols(k, 2) = q.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
  t(k, k) = b;
  t(k + 1, k + 1) = a;
}

}  // namespace

Frame ordered_schur_subspace(const Matrix& m, const std::function<bool(cplx)>& select) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "Schur split needs a square matrix");
  const Index n = m.rows();
  Eigen::ComplexSchur<Matrix> schur(m);
  Matrix t = schur.matrixT();
  Matrix q = schur.matrixU();
  Index placed = 0;
  for (Index j = 0; j < n; ++j) {
    if (!select(t(j, j))) continue;
    for (Index k = j; k > placed; --k) swap_schur_pair(t, q, k - 1);
    ++placed;
  }
  if (placed == 0) return Frame::empty(n);
  Eigen::HouseholderQR<Matrix> qr(q.leftCols(placed));
  Matrix basis = qr.householderQ() * Matrix::Identity(n, placed);
  return Frame(std::move(basis));
}

StableSplit stable_unstable_split(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "monodromy must be square");
  if (inverse_condition(m) <= tol.rank_tol) throw Error(ErrorKind::Singular, "matrix is not invertible");
  StableSplit split;
  split.stable = ordered_schur_subspace(m, [&](cplx z) { return std::abs(z) < 1.0 - tol.eig_tol; });
  split.unstable = ordered_schur_subspace(m, [&](cplx z) { return std::abs(z) > 1.0 + tol.eig_tol; });
  split.unit_circle_count = m.rows() - split.stable.rank() - split.unstable.rank();
  return split;
}

Matrix hermitian_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver((a + a.adjoint()) / 2.0);
  return solver.operatorSqrt();
}

Matrix hermitian_inv_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver((a + a.adjoint()) / 2.0);
  return solver.operatorInverseSqrt();
}

double inverse_condition(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& s = svd.singularValues();
  if (s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

}  // namespace tenfold
