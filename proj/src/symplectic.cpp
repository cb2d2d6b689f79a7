#include "tenfold/symplectic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace tenfold {

SymplecticForm::SymplecticForm(Matrix j, const Tolerances& tol) : j_(std::move(j)) {
  if (j_.rows() != j_.cols() || j_.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "symplectic form must be a non-empty square matrix");
  scale_ = std::max(max_abs(j_), 1e-300);
  if (max_abs(j_ + j_.adjoint()) >= tol.frame_tol * scale_)
    throw Error(ErrorKind::NotHermitian, "symplectic form fails J* = -J");
  if (inverse_condition(j_) <= tol.rank_tol) throw Error(ErrorKind::Singular, "symplectic form is degenerate");
}

double CanonicalSplit::block_defect() const {
  Matrix expected = Matrix::Zero(q.cols(), q.cols());
  for (Index i = 0; i < n_plus; ++i) expected(i, i) = cplx(0.0, a_plus(i));
  for (Index i = 0; i < n_minus; ++i) expected(n_plus + i, n_plus + i) = cplx(0.0, -a_minus(i));
  return max_abs(q.adjoint() * form * q - expected);
}

namespace {

// Deterministic orthonormal basis of span(v): greedily takes projections of
// standard basis vectors, preferring the lowest index among those whose
// residual is at least half the largest one. For coordinate subspaces this
// returns the coordinate vectors themselves, in order.
Matrix pinned_basis(const Matrix& v) {
  const Index dim = v.rows();
  const Index k = v.cols();
  Matrix basis(dim, k);
  Matrix projected = v * v.adjoint();  // column j = P e_j
  for (Index c = 0; c < k; ++c) {
    Matrix residual = projected;
    if (c > 0) residual -= basis.leftCols(c) * (basis.leftCols(c).adjoint() * projected);
    RealVector norms = residual.colwise().norm().transpose();
    const double best = norms.maxCoeff();
    Index pick = 0;
    while (norms(pick) < 0.5 * best) ++pick;
    Vector col = residual.col(pick);
    if (c > 0) col -= basis.leftCols(c) * (basis.leftCols(c).adjoint() * col);
    basis.col(c) = col.normalized();
  }
  return basis;
}

struct Cluster {
  double value;
  std::vector<Index> members;
};

std::vector<Cluster> cluster_by_value(const RealVector& values, const std::vector<Index>& order, double tol) {
  std::vector<Cluster> clusters;
  for (Index idx : order) {
    const double v = std::abs(values(idx));
    if (!clusters.empty() && std::abs(v - clusters.back().value) <= tol) {
      clusters.back().members.push_back(idx);
    } else {
      clusters.push_back({v, {idx}});
    }
  }
  for (auto& c : clusters) {
    double sum = 0.0;
    for (Index idx : c.members) sum += std::abs(values(idx));
    c.value = sum / static_cast<double>(c.members.size());
  }
  return clusters;
}

}  // namespace

CanonicalSplit canonical_split(const SymplecticForm& form, const Tolerances& tol) {
  const Matrix h = cplx(0.0, -1.0) * form.matrix();
  auto eig = hermitian_eig(h, tol);
  std::vector<Index> positive, negative;
  for (Index i = 0; i < eig.values.size(); ++i) (eig.values(i) > 0.0 ? positive : negative).push_back(i);
  if (positive.size() != negative.size()) {
    std::ostringstream msg;
    msg << "signature (" << positive.size() << ", " << negative.size() << ") of -iJ is unbalanced";
    throw Error(ErrorKind::NoLagrangianPlanes, msg.str());
  }
  auto by_magnitude = [&](Index a, Index b) { return std::abs(eig.values(a)) < std::abs(eig.values(b)); };
  std::sort(positive.begin(), positive.end(), by_magnitude);
  std::sort(negative.begin(), negative.end(), by_magnitude);

  const Index n = static_cast<Index>(positive.size());
  const double cluster_tol = 1e-12 * std::max(1.0, eig.values.cwiseAbs().maxCoeff());

  CanonicalSplit split;
  split.n_plus = n;
  split.n_minus = n;
  split.q.resize(form.dim(), 2 * n);
  split.a_plus.resize(n);
  split.a_minus.resize(n);
  split.form = form.matrix();

  auto fill_block = [&](const std::vector<Index>& block, Index col_offset, RealVector& diag) {
    Index col = 0;
    for (const Cluster& c : cluster_by_value(eig.values, block, cluster_tol)) {
      Matrix v(form.dim(), static_cast<Index>(c.members.size()));
      for (std::size_t m = 0; m < c.members.size(); ++m) v.col(static_cast<Index>(m)) = eig.vectors.col(c.members[m]);
      Matrix b = pinned_basis(v);
      split.q.middleCols(col_offset + col, b.cols()) = b;
      diag.segment(col, b.cols()).setConstant(c.value);
      col += b.cols();
    }
  };
  fill_block(positive, 0, split.a_plus);
  fill_block(negative, n, split.a_minus);
  return split;
}

bool same_split(const CanonicalSplit& a, const CanonicalSplit& b, const Tolerances& tol) {
  if (a.form.rows() != b.form.rows() || a.n_plus != b.n_plus) return false;
  const double scale = std::max(1.0, max_abs(a.form));
  return max_abs(a.form - b.form) < tol.frame_tol * scale && max_abs(a.q - b.q) < tol.frame_tol;
}

IsotropyReport is_lagrangian(const Frame& candidate, const SymplecticForm& form, const Tolerances& tol) {
  if (candidate.ambient_dim() != form.dim())
    throw Error(ErrorKind::DimensionMismatch, "frame and form dimensions differ");
  IsotropyReport report;
  if (candidate.rank() > 0)
    report.isotropy_defect =
        max_abs(candidate.columns().adjoint() * form.matrix() * candidate.columns()) / form.scale();
  report.lagrangian = report.isotropy_defect < tol.frame_tol && 2 * candidate.rank() == form.dim();
  return report;
}

LagrangianPlane make_plane(Frame frame, const SymplecticForm& form, const Tolerances& tol) {
  const IsotropyReport report = is_lagrangian(frame, form, tol);
  if (!report.lagrangian) {
    std::ostringstream msg;
    msg << "rank " << frame.rank() << " of " << form.dim() << ", isotropy defect " << report.isotropy_defect;
    throw Error(ErrorKind::NotLagrangian, msg.str());
  }
  return LagrangianPlane(form, std::move(frame));
}

LerayUnitary::LerayUnitary(CanonicalSplit split, Matrix u, const Tolerances& tol)
    : split_(std::move(split)), u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() != split_.half_dim())
    throw Error(ErrorKind::DimensionMismatch, "unitary size does not match the split");
  if (max_abs(u_.adjoint() * u_ - Matrix::Identity(u_.rows(), u_.cols())) >= tol.frame_tol)
    throw Error(ErrorKind::NotUnitary, "Leray matrix fails U*U = 1");
}

LerayUnitary plane_to_unitary(const LagrangianPlane& plane, const CanonicalSplit& split, const Tolerances& tol) {
  const double scale = std::max(1.0, max_abs(split.form));
  if (plane.dim() != split.form.rows() || max_abs(plane.form().matrix() - split.form) >= tol.frame_tol * scale)
    throw Error(ErrorKind::SplitMismatch, "plane and split come from different forms");
  const Index n = split.half_dim();
  const Matrix coords = split.q.adjoint() * plane.frame().columns();
  const Matrix x_plus = coords.topRows(n);
  const Matrix x_minus = coords.bottomRows(n);
  if (inverse_condition(x_plus) <= tol.rank_tol)
    throw Error(ErrorKind::ProjectionSingular, "projection of the plane onto K_+ is rank deficient");
  // graph map X with x_minus = X x_plus
  const Matrix graph = x_plus.transpose().partialPivLu().solve(x_minus.transpose()).transpose();
  const Matrix u = split.a_minus.cwiseSqrt().asDiagonal() * graph *
                   split.a_plus.cwiseSqrt().cwiseInverse().asDiagonal();
  return LerayUnitary(split, u, tol);
}

LagrangianPlane unitary_to_plane(const LerayUnitary& u, const Tolerances& tol) {
  const CanonicalSplit& split = u.split();
  const Index n = split.half_dim();
  Matrix coords(2 * n, n);
  coords.topRows(n).setIdentity();
  coords.bottomRows(n) =
      split.a_minus.cwiseSqrt().cwiseInverse().asDiagonal() * u.matrix() * split.a_plus.cwiseSqrt().asDiagonal();
  Frame frame = orthonormalize(split.q * coords, tol);
  return make_plane(std::move(frame), SymplecticForm(split.form, tol), tol);
}

Index crossing_dim(const LerayUnitary& a, const LerayUnitary& b, const Tolerances& tol) {
  if (!same_split(a.split(), b.split(), tol)) throw Error(ErrorKind::SplitMismatch, "unitaries use different splits");
  Eigen::ComplexEigenSolver<Matrix> solver(a.matrix() * b.matrix().adjoint(), false);
  Index count = 0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (std::abs(solver.eigenvalues()(i) - 1.0) <= tol.eig_tol) ++count;
  return count;
}

}  // namespace tenfold
