#include "tenfold/models.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tenfold {

namespace {

BulkData assemble(SymplecticForm form, const Matrix& plus, const Matrix& minus, GapCertificate gap,
                  const Tolerances& tol) {
  CanonicalSplit split = canonical_split(form, tol);
  LagrangianPlane lp = make_plane(orthonormalize(plus, tol), form, tol);
  LagrangianPlane lm = make_plane(orthonormalize(minus, tol), form, tol);
  LerayUnitary up = plane_to_unitary(lp, split, tol);
  LerayUnitary um = plane_to_unitary(lm, split, tol);
  return BulkData{std::move(form), std::move(split), std::move(lp), std::move(lm),
                  std::move(up),   std::move(um),    std::move(gap), std::nullopt};
}

Matrix antiunitary_residual_lhs(const AntiUnitary& o, const Matrix& m) { return o.v * m.conjugate(); }

}  // namespace

SymplecticForm dirac_form(Index n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topLeftCorner(n, n).diagonal().setConstant(cplx(0.0, 1.0));
  j.bottomRightCorner(n, n).diagonal().setConstant(cplx(0.0, -1.0));
  return SymplecticForm(std::move(j));
}

Matrix dirac_generator(const Matrix& w, double energy) {
  const Index n = w.rows();
  Matrix g = Matrix::Zero(2 * n, 2 * n);
  g.topRightCorner(n, n) = -w;
  g.bottomLeftCorner(n, n) = -w.adjoint();
  g.topLeftCorner(n, n).diagonal().setConstant(cplx(0.0, energy));
  g.bottomRightCorner(n, n).diagonal().setConstant(cplx(0.0, -energy));
  return g;
}

double dirac_gap(const Matrix& w) {
  Eigen::JacobiSVD<Matrix> svd(w);
  return svd.singularValues()(w.rows() - 1);
}

Matrix dirac_closed_form_unitary(const Matrix& w) {
  // W = P S Q*  =>  |W| = P S P*  and  W*|W|^{-1} = Q P*
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().adjoint();
}

BulkData dirac_bulk(const ConstantDiracModel& model, double energy, const Tolerances& tol) {
  const Matrix& w = model.w;
  if (w.rows() != w.cols() || w.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "W must be square");
  const Index n = w.rows();
  const double m0 = dirac_gap(w);
  if (m0 <= tol.rank_tol) {
    std::ostringstream msg;
    msg << "W is singular (m0 = " << m0 << ")";
    throw Error(ErrorKind::GapClosed, msg.str());
  }
  if (std::abs(energy) >= m0 - tol.rank_tol) {
    std::ostringstream msg;
    msg << "E = " << energy << " lies in the spectrum (m0 = " << m0 << ")";
    throw Error(ErrorKind::GapClosed, msg.str());
  }

  Matrix plus, minus;
  if (energy == 0.0) {
    Matrix a = Matrix::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n) = w;
    a.bottomLeftCorner(n, n) = w.adjoint();
    auto eig = hermitian_eig(a, tol);
    // ascending: the first n are -mu_i, the last n are +mu_i
    minus = eig.vectors.leftCols(n);
    plus = eig.vectors.rightCols(n);
  } else {
    const Matrix g = dirac_generator(w, energy);
    plus = ordered_schur_subspace(g, [](cplx z) { return z.real() < 0.0; }).columns();
    minus = ordered_schur_subspace(g, [](cplx z) { return z.real() > 0.0; }).columns();
  }
  BulkData bulk = assemble(dirac_form(n), plus, minus, {"m0", m0}, tol);
  if (energy == 0.0) {
    const Matrix closed = dirac_closed_form_unitary(w);
    bulk.closed_form_residual =
        std::max(max_abs(bulk.u_plus.matrix() - closed), max_abs(bulk.u_minus.matrix() + closed));
  }
  return bulk;
}

OperatorSymmetryReport dirac_operator_symmetry(const Matrix& w, const SymmetrySet& sym, const Tolerances& tol) {
  const Index n = w.rows();
  Matrix v = Matrix::Zero(2 * n, 2 * n);
  v.topRightCorner(n, n) = cplx(0.0, -1.0) * w;
  v.bottomLeftCorner(n, n) = cplx(0.0, 1.0) * w.adjoint();
  const double bound = tol.frame_tol * std::max(1.0, max_abs(v));
  OperatorSymmetryReport report;
  if (sym.t) {
    report.t_residual = max_abs(antiunitary_residual_lhs(*sym.t, v) - v * sym.t->v);
    report.pass = report.pass && *report.t_residual < bound;
  }
  if (sym.c) {
    report.c_residual = max_abs(antiunitary_residual_lhs(*sym.c, v) + v * sym.c->v);
    report.pass = report.pass && *report.c_residual < bound;
  }
  if (sym.s) {
    report.s_residual = max_abs(*sym.s * v + v * *sym.s);
    report.pass = report.pass && *report.s_residual < bound;
  }
  return report;
}

SymplecticForm schrodinger_form(Index m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return SymplecticForm(std::move(j));
}

BulkData schrodinger_bulk(const ConstantSchrodingerModel& model, const Tolerances& tol) {
  const Matrix& v = model.v;
  if (v.rows() != v.cols() || v.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "V must be square");
  const Index m = v.rows();
  auto eig = hermitian_eig(v, tol);
  const double margin = eig.values(0) - model.energy;
  if (margin <= tol.rank_tol) {
    std::ostringstream msg;
    msg << "E = " << model.energy << " is not below the spectrum (min sigma(V) = " << eig.values(0) << ")";
    throw Error(ErrorKind::NotInGap, msg.str());
  }
  Matrix plus(2 * m, m), minus(2 * m, m);
  for (Index j = 0; j < m; ++j) {
    const double root = std::sqrt(eig.values(j) - model.energy);
    const Vector vj = eig.vectors.col(j);
    plus.col(j) << vj, -root * vj;
    minus.col(j) << vj, root * vj;
  }
  return assemble(schrodinger_form(m), plus, minus, {"spectral_margin", margin}, tol);
}

const Matrix& TightBindingModel::hop(Index n) const {
  const Index q = period();
  return a[static_cast<std::size_t>(((n % q) + q) % q)];
}

const Matrix& TightBindingModel::onsite(Index n) const {
  const Index q = period();
  return b[static_cast<std::size_t>(((n % q) + q) % q)];
}

void TightBindingModel::validate(const Tolerances& tol) const {
  if (a.empty() || a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "need one hopping and one onsite matrix per site of the cell");
  const Index n = a.front().rows();
  auto check = [&](const Matrix& m, const char* what) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has wrong size");
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    check(a[i], "hopping");
    check(b[i], "onsite");
    if (inverse_condition(a[i]) <= tol.rank_tol)
      throw Error(ErrorKind::NotInvertible, "hopping a_" + std::to_string(i) + " is not invertible");
    if (hermiticity_defect(b[i]) >= tol.frame_tol * std::max(1.0, max_abs(b[i])))
      throw Error(ErrorKind::NotHermitian, "onsite b_" + std::to_string(i) + " is not hermitian");
  }
  if (seam_hopping) {
    check(*seam_hopping, "seam hopping");
    if (inverse_condition(*seam_hopping) <= tol.rank_tol)
      throw Error(ErrorKind::NotInvertible, "seam hopping is not invertible");
  }
}

SymplecticForm tb_form(const TightBindingModel& model) {
  const Index n = model.size();
  const Matrix& a0 = model.cut_hop();
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -a0;
  j.bottomLeftCorner(n, n) = a0.adjoint();
  return SymplecticForm(std::move(j));
}

Matrix tb_transfer(const Matrix& a_prev, const Matrix& b, const Matrix& a_next, double energy) {
  const Index n = b.rows();
  const auto lu = a_next.partialPivLu();
  Matrix t = Matrix::Zero(2 * n, 2 * n);
  t.topRightCorner(n, n).setIdentity();
  t.bottomLeftCorner(n, n) = -lu.solve(a_prev.adjoint());
  t.bottomRightCorner(n, n) = -lu.solve(b - energy * Matrix::Identity(n, n));
  return t;
}

Matrix tb_monodromy(const TightBindingModel& model, double energy) {
  const Index q = model.period();
  Matrix m = Matrix::Identity(2 * model.size(), 2 * model.size());
  for (Index k = 1; k <= q; ++k) m = tb_transfer(model.hop(k - 1), model.onsite(k), model.hop(k), energy) * m;
  return m;
}

double tb_energy_gap(const TightBindingModel& model, double energy, Index samples) {
  const Index q = model.period();
  const Index n = model.size();
  double gap = std::numeric_limits<double>::infinity();
  for (Index s = 0; s < samples; ++s) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(samples);
    Matrix h = Matrix::Zero(q * n, q * n);
    for (Index c = 0; c < q; ++c) {
      const Index next = (c + 1) % q;
      const cplx phase = c == q - 1 ? std::polar(1.0, k) : cplx(1.0);
      h.block(c * n, c * n, n, n) += model.b[static_cast<std::size_t>(c)];
      h.block(c * n, next * n, n, n) += phase * model.a[static_cast<std::size_t>(c)];
      h.block(next * n, c * n, n, n) += std::conj(phase) * model.a[static_cast<std::size_t>(c)].adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    gap = std::min(gap, (solver.eigenvalues().array() - energy).abs().minCoeff());
  }
  return gap;
}

BulkData tb_bulk(const TightBindingModel& model, double energy, const Tolerances& tol) {
  model.validate(tol);
  const Matrix mono = tb_monodromy(model, energy);
  const StableSplit split = stable_unstable_split(mono, tol);
  Eigen::ComplexEigenSolver<Matrix> solver(mono, false);
  const double distance = (solver.eigenvalues().array().abs() - 1.0).abs().minCoeff();
  if (split.unit_circle_count > 0) {
    std::ostringstream msg;
    msg << split.unit_circle_count << " monodromy eigenvalue(s) on the unit circle at E = " << energy
        << " (distance " << distance << ")";
    throw Error(ErrorKind::GapClosed, msg.str());
  }
  Matrix plus = split.stable.columns();
  Matrix minus = split.unstable.columns();
  if (model.seam_hopping) {
    // Only the bond (0, 1) changes: solutions decaying at +inf obey rows
    // n >= 1, those decaying at -inf obey rows n <= 0.
    const Matrix& seam = *model.seam_hopping;
    const Matrix row1_periodic = tb_transfer(model.hop(0), model.onsite(1), model.hop(1), energy);
    const Matrix row1_seam = tb_transfer(seam, model.onsite(1), model.hop(1), energy);
    plus = row1_seam.partialPivLu().solve(row1_periodic * plus);
    const Matrix row0_periodic = tb_transfer(model.hop(-1), model.onsite(0), model.hop(0), energy);
    const Matrix row0_seam = tb_transfer(model.hop(-1), model.onsite(0), seam, energy);
    minus = row0_seam * row0_periodic.partialPivLu().solve(minus);
  }
  return assemble(tb_form(model), plus, minus, {"circle_distance", distance}, tol);
}

void PiecewiseDiracProfile::validate() const {
  if (breakpoints.empty()) throw Error(ErrorKind::BadSpec, "profile needs at least one breakpoint");
  if (w.size() != breakpoints.size() + 1)
    throw Error(ErrorKind::BadSpec, "profile needs one W per interval (breakpoints + 1)");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1])) throw Error(ErrorKind::BadSpec, "breakpoints must increase");
  const Index n = w.front().rows();
  for (const Matrix& m : w)
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "all W must share one size");
}

const Matrix& PiecewiseDiracProfile::w_at(double t) const {
  std::size_t i = 0;
  while (i < breakpoints.size() && t >= breakpoints[i]) ++i;
  return w[i];
}

namespace {

// Moves the plane spanned by `frame` along psi' = G psi by `delta` (negative
// for backward transport), in sub-steps short enough that growth factors
// stay bounded.
Matrix transport(const Matrix& frame, const Matrix& g, double delta, const Tolerances& tol) {
  if (delta == 0.0) return frame;
  const double norm = g.cwiseAbs().rowwise().sum().maxCoeff();
  const Index steps = std::max<Index>(1, static_cast<Index>(std::ceil(std::abs(delta) * norm / 0.5)));
  const Matrix step = (g * (delta / static_cast<double>(steps))).exp();
  Matrix f = frame;
  for (Index s = 0; s < steps; ++s) f = orthonormalize(step * f, tol).columns();
  return f;
}

}  // namespace

LagrangianPlane propagate_plane(const PiecewiseDiracProfile& profile, double energy, Side side, double t,
                                const Tolerances& tol) {
  profile.validate();
  const Index n = profile.size();
  const auto& bp = profile.breakpoints;
  const std::size_t k = bp.size();
  const SymplecticForm form = dirac_form(n);
  if (side == Side::Plus) {
    const BulkData far = dirac_bulk({profile.w.back()}, energy, tol);
    Matrix f = far.plane_plus.frame().columns();
    double cur = bp.back();
    // interval j (1-based into w) spans [bp[j-1], bp[j])
    for (std::size_t j = k - 1; j >= 1 && t < cur; --j) {
      const double target = std::max(t, bp[j - 1]);
      f = transport(f, dirac_generator(profile.w[j], energy), target - cur, tol);
      cur = target;
    }
    if (t < cur) f = transport(f, dirac_generator(profile.w.front(), energy), t - cur, tol);
    return make_plane(orthonormalize(f, tol), form, tol);
  }
  const BulkData far = dirac_bulk({profile.w.front()}, energy, tol);
  Matrix f = far.plane_minus.frame().columns();
  double cur = bp.front();
  for (std::size_t j = 1; j <= k && t > cur; ++j) {
    const double upper = j < k ? bp[j] : std::numeric_limits<double>::infinity();
    const double target = std::min(t, upper);
    f = transport(f, dirac_generator(profile.w[j], energy), target - cur, tol);
    cur = target;
  }
  return make_plane(orthonormalize(f, tol), form, tol);
}

}  // namespace tenfold
