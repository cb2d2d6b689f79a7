#include "tenfold/verify.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace tenfold {

void DiscretizationSpec::validate() const {
  if (!(half_length > 0.0)) throw Error(ErrorKind::BadSpec, "half length L must be positive");
  if (!(step > 0.0) || step >= half_length) throw Error(ErrorKind::BadSpec, "grid step h must lie in (0, L)");
  if (n_cells < 1) throw Error(ErrorKind::BadSpec, "need at least one cell per side");
  if (!(localization_window > 0.0) || localization_window > 1.0)
    throw Error(ErrorKind::BadSpec, "localization window must lie in (0, 1]");
  if (energy_window && !(*energy_window > 0.0)) throw Error(ErrorKind::BadSpec, "energy window must be positive");
}

Matrix DiscreteOperator::dense() const {
  Matrix h = Matrix::Zero(dim(), dim());
  for (Index k = 0; k < blocks(); ++k) {
    h.block(k * block, k * block, block, block) = diag[static_cast<std::size_t>(k)];
    if (k + 1 < blocks()) {
      const Matrix& u = upper[static_cast<std::size_t>(k)];
      h.block(k * block, (k + 1) * block, block, block) = u;
      h.block((k + 1) * block, k * block, block, block) = u.adjoint();
    }
  }
  return h;
}

Eigen::SparseMatrix<cplx> DiscreteOperator::sparse() const {
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(static_cast<std::size_t>(3 * blocks() * block * block));
  auto put = [&](Index r0, Index c0, const Matrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (m(i, j) != cplx(0.0)) entries.emplace_back(r0 + i, c0 + j, m(i, j));
  };
  for (Index k = 0; k < blocks(); ++k) {
    put(k * block, k * block, diag[static_cast<std::size_t>(k)]);
    if (k + 1 < blocks()) {
      const Matrix& u = upper[static_cast<std::size_t>(k)];
      put(k * block, (k + 1) * block, u);
      put((k + 1) * block, k * block, u.adjoint());
    }
  }
  Eigen::SparseMatrix<cplx> h(dim(), dim());
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

Index DiscreteOperator::count_below(double x) const {
  // Haynsworth additivity: inertia(H - x) is the sum of the inertias of the
  // block Schur complements D_k.
  Index negative = 0;
  Matrix d;
  for (Index k = 0; k < blocks(); ++k) {
    Matrix current = diag[static_cast<std::size_t>(k)] - x * Matrix::Identity(block, block);
    if (k > 0) {
      const Matrix& u = upper[static_cast<std::size_t>(k - 1)];
      current -= u.adjoint() * d.partialPivLu().solve(u);
    }
    d = (current + current.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(d, Eigen::EigenvaluesOnly);
    negative += (solver.eigenvalues().array() < 0.0).count();
  }
  return negative;
}

namespace {

Matrix hermitian_part(const Matrix& w) { return (w + w.adjoint()) / 2.0; }
Matrix antihermitian_rotated(const Matrix& w) { return cplx(0.0, -0.5) * (w - w.adjoint()); }

}  // namespace

DiscreteOperator discretize_dirac_junction(const PiecewiseDiracProfile& profile, const DiscretizationSpec& spec,
                                           double energy) {
  spec.validate();
  profile.validate();
  const Index n = profile.size();
  const double l = spec.half_length;
  const double h = spec.step;
  const Index intervals = static_cast<Index>(std::llround(2.0 * l / h));
  if (intervals < 2) throw Error(ErrorKind::BadSpec, "grid has fewer than two intervals");
  const double dt = 2.0 * l / static_cast<double>(intervals);

  DiscreteOperator op;
  op.block = n;
  op.half_extent = l;
  op.reference_energy = energy;
  op.reference_gap = std::min(dirac_gap(profile.w.front()), dirac_gap(profile.w.back())) - std::abs(energy);
  if (!(op.reference_gap > 0.0)) throw Error(ErrorKind::GapClosed, "an end interval is not gapped at E");
  if (dt >= op.reference_gap / 10.0) {
    std::ostringstream msg;
    msg << "grid step " << dt << " is not below gap/10 = " << op.reference_gap / 10.0;
    op.warnings.push_back(msg.str());
  }
  if (l < 20.0 / op.reference_gap) {
    std::ostringstream msg;
    msg << "half length " << l << " is below 20/gap = " << 20.0 / op.reference_gap;
    op.warnings.push_back(msg.str());
  }

  const Matrix id = Matrix::Identity(n, n);
  const cplx i(0.0, 1.0);
  // blocks b_0, a_1, b_1, ..., b_{m-1}, a_m with a_j at -L + j dt and b_j
  // half a step later. Equal sublattices, so no wall zero mode is forced by
  // counting; with this end pairing, ends with W > 0 carry none at all.
  for (Index j = 0; j < intervals; ++j) {
    const double tb = -l + (static_cast<double>(j) + 0.5) * dt;
    op.diag.push_back(-antihermitian_rotated(profile.w_at(tb)));
    op.position.push_back(tb);
    const double ta = -l + static_cast<double>(j + 1) * dt;
    const Matrix& wa = profile.w_at(ta);
    // row b_j, column a_{j+1}
    op.upper.push_back(-i / dt * id - i * hermitian_part(wa) / 2.0);
    op.diag.push_back(antihermitian_rotated(wa));
    op.position.push_back(ta);
    // row a_{j+1}, column b_{j+1}
    if (j + 1 < intervals) op.upper.push_back(-i / dt * id + i * hermitian_part(wa) / 2.0);
  }
  return op;
}

DiscreteOperator finite_chain(const TightBindingModel& left, const TightBindingModel& right,
                              const DiscretizationSpec& spec, double energy, const Tolerances& tol) {
  spec.validate();
  left.validate(tol);
  right.validate(tol);
  if (left.size() != right.size()) throw Error(ErrorKind::IncompatibleBoundary, "chains have different orbital counts");
  const Matrix& cut = right.cut_hop();
  const double defect = max_abs(left.cut_hop() - cut);
  if (defect >= tol.frame_tol * std::max(1.0, max_abs(cut))) {
    std::ostringstream msg;
    msg << "cut bonds differ by " << defect;
    throw Error(ErrorKind::IncompatibleBoundary, msg.str());
  }
  const Index first = -spec.n_cells * left.period() + 1;
  const Index last = spec.n_cells * right.period();

  DiscreteOperator op;
  op.block = left.size();
  op.reference_energy = energy;
  op.half_extent = static_cast<double>(std::max(-first + 1, last));
  op.reference_gap = std::min(tb_energy_gap(left, energy), tb_energy_gap(right, energy));
  if (!(op.reference_gap > 0.0)) throw Error(ErrorKind::GapClosed, "a bulk chain is not gapped at E");
  for (Index site = first; site <= last; ++site) {
    op.diag.push_back(site <= 0 ? left.onsite(site) : right.onsite(site));
    op.position.push_back(static_cast<double>(site) - 0.5);
    if (site == last) break;
    if (site < 0) {
      op.upper.push_back(left.hop(site));
    } else if (site == 0) {
      op.upper.push_back(cut);
    } else {
      op.upper.push_back(right.hop(site));
    }
  }
  return op;
}

namespace {

struct Eigenpairs {
  RealVector values;
  Matrix vectors;
};

Eigenpairs dense_window(const DiscreteOperator& op, double lo, double hi) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.dense());
  std::vector<Index> keep;
  for (Index k = 0; k < solver.eigenvalues().size(); ++k)
    if (solver.eigenvalues()(k) > lo && solver.eigenvalues()(k) < hi) keep.push_back(k);
  Eigenpairs out{RealVector(static_cast<Index>(keep.size())), Matrix(op.dim(), static_cast<Index>(keep.size()))};
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.values(static_cast<Index>(c)) = solver.eigenvalues()(keep[c]);
    out.vectors.col(static_cast<Index>(c)) = solver.eigenvectors().col(keep[c]);
  }
  return out;
}

// Shift-invert subspace iteration for the `count` eigenpairs nearest the
// centre of (lo, hi). Returns nothing if the Ritz values do not settle.
std::optional<Eigenpairs> sparse_window(const DiscreteOperator& op, double lo, double hi, Index count) {
  const Index dim = op.dim();
  const double centre = (lo + hi) / 2.0;
  const double shift = centre + 1.37e-3 * (hi - lo) / 2.0;
  Eigen::SparseMatrix<cplx> h = op.sparse();
  Eigen::SparseMatrix<cplx> shifted = h;
  for (Index k = 0; k < dim; ++k) shifted.coeffRef(k, k) -= shift;
  shifted.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) return std::nullopt;

  const Index width = std::min(dim, count + 8);
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  Matrix x(dim, width);
  for (Index j = 0; j < width; ++j)
    for (Index i = 0; i < dim; ++i) x(i, j) = cplx(normal(rng), normal(rng));
  x = Eigen::HouseholderQR<Matrix>(x).householderQ() * Matrix::Identity(dim, width);

  const double scale = std::max(1.0, std::abs(shift));
  Eigenpairs best;
  for (int iter = 0; iter < 300; ++iter) {
    Matrix y = lu.solve(x);
    x = Eigen::HouseholderQR<Matrix>(y).householderQ() * Matrix::Identity(dim, width);
    const Matrix hx = h * x;
    Matrix small = x.adjoint() * hx;
    small = (small + small.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> ritz(small);
    // order by distance to the centre
    std::vector<Index> order(static_cast<std::size_t>(width));
    for (Index k = 0; k < width; ++k) order[static_cast<std::size_t>(k)] = k;
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      return std::abs(ritz.eigenvalues()(a) - centre) < std::abs(ritz.eigenvalues()(b) - centre);
    });
    best.values.resize(count);
    best.vectors.resize(dim, count);
    double residual = 0.0;
    for (Index c = 0; c < count; ++c) {
      const Index k = order[static_cast<std::size_t>(c)];
      const Vector v = x * ritz.eigenvectors().col(k);
      best.values(c) = ritz.eigenvalues()(k);
      best.vectors.col(c) = v;
      residual = std::max(residual, (h * v - best.values(c) * v).norm());
    }
    if (residual < 1e-10 * scale) {
      for (Index c = 0; c < count; ++c)
        if (!(best.values(c) > lo && best.values(c) < hi)) return std::nullopt;
      return best;
    }
  }
  return std::nullopt;
}

}  // namespace

OracleReport count_near_zero_localized(const DiscreteOperator& op, const DiscretizationSpec& spec) {
  OracleReport report;
  report.energy_window = spec.energy_window.value_or(0.1 * op.reference_gap);
  const double lo = op.reference_energy - report.energy_window;
  const double hi = op.reference_energy + report.energy_window;

  Eigenpairs pairs;
  if (op.dim() <= 800) {
    pairs = dense_window(op, lo, hi);
  } else {
    const Index count = op.count_below(hi) - op.count_below(lo);
    if (count == 0) {
      pairs = {RealVector(0), Matrix(op.dim(), 0)};
    } else if (auto found = sparse_window(op, lo, hi, count)) {
      pairs = std::move(*found);
    } else {
      pairs = dense_window(op, lo, hi);
    }
  }

  const Index k = pairs.values.size();
  RealVector central = RealVector::Zero(op.dim());
  const double cutoff = spec.localization_window * op.half_extent;
  for (Index b = 0; b < op.blocks(); ++b)
    if (std::abs(op.position[static_cast<std::size_t>(b)]) < cutoff) central.segment(b * op.block, op.block).setOnes();

  for (Index c = 0; c < k; ++c) {
    report.eigenvalues_in_window.push_back(pairs.values(c) - op.reference_energy);
    report.central_weight.push_back(
        (pairs.vectors.col(c).cwiseAbs2().array() * central.array()).sum() / pairs.vectors.col(c).squaredNorm());
  }
  if (k > 0) {
    const Matrix compressed = pairs.vectors.adjoint() * central.cast<cplx>().asDiagonal() * pairs.vectors;
    Eigen::SelfAdjointEigenSolver<Matrix> solver((compressed + compressed.adjoint()) / 2.0);
    for (Index c = 0; c < k; ++c) {
      if (solver.eigenvalues()(c) <= 0.9) continue;
      ++report.localized_count;
      const Vector coeff = solver.eigenvectors().col(c);
      report.localized_energies.push_back(
          (coeff.adjoint() * pairs.values.cast<cplx>().asDiagonal() * coeff)(0, 0).real() - op.reference_energy);
    }
  }
  return report;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Warn: return "WARN";
    case Verdict::Fail: return "FAIL";
  }
  return "?";
}

Verdict oracle_compare(const JunctionReport& report, const OracleReport& oracle) {
  if (oracle.localized_count < report.protected_bound) return Verdict::Fail;
  if (oracle.localized_count == report.predicted_kernel_dim) return Verdict::Pass;
  return Verdict::Warn;
}

void write_spectra_csv(const OracleReport& oracle, std::ostream& out) {
  out << "index,eigenvalue,central_weight\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < oracle.eigenvalues_in_window.size(); ++i)
    out << i << ',' << oracle.eigenvalues_in_window[i] << ',' << oracle.central_weight[i] << '\n';
}

}  // namespace tenfold
