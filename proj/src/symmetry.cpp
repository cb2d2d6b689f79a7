#include "tenfold/symmetry.hpp"

#include <array>
#include <sstream>

namespace tenfold {

namespace {

double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

Matrix swap_blocks(Index n, cplx upper, cplx lower) {
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = upper * Matrix::Identity(n, n);
  m.bottomLeftCorner(n, n) = lower * Matrix::Identity(n, n);
  return m;
}

constexpr std::array<CartanRow, 10> kTable{{
    {CartanClass::A, 0, 0, 0, "U(N)", "0"},
    {CartanClass::AIII, 0, 0, 1, "∪_k U(N)/U(k)×U(N−k)", "dim ker(U−1) ∈ {0,…,N}"},
    {CartanClass::AI, 1, 0, 0, "U(N)/O(N)", "0"},
    {CartanClass::BDI, 1, 1, 1, "∪_k O(N)/O(k)×O(N−k)", "dim ker(U−1) ∈ {0,…,N}"},
    {CartanClass::D, 0, 1, 0, "O(N)", "det(U) ∈ {±1}"},
    {CartanClass::DIII, -1, 1, 1, "O(2n)/U(n)", "Pf(U) ∈ {±1}"},
    {CartanClass::AII, -1, 0, 0, "U(2n)/Sp(n)", "0"},
    {CartanClass::CII, -1, -1, 1, "∪_k Sp(n)/Sp(k)×Sp(n−k)", "dim ker(U−1) ∈ {0,…,N}"},
    {CartanClass::C, 0, -1, 0, "Sp(n)", "0"},
    {CartanClass::CI, 1, -1, 1, "Sp(n)/U(n)", "0"},
}};

}  // namespace

void AntiUnitary::validate(const Tolerances& tol) const {
  if (v.rows() != v.cols()) throw Error(ErrorKind::DimensionMismatch, "antiunitary matrix must be square");
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InconsistentSymmetries, "antiunitary sign must be +1 or -1");
  if (unitarity_defect(v) >= tol.frame_tol) throw Error(ErrorKind::NotUnitary, "antiunitary V is not unitary");
  const Matrix square = v * v.conjugate();
  if (max_abs(square - double(sign) * Matrix::Identity(v.rows(), v.cols())) >= tol.frame_tol)
    throw Error(ErrorKind::InconsistentSymmetries, "V conj(V) does not equal the declared sign");
}

SymmetrySet SymmetrySet::completed() const {
  SymmetrySet out = *this;
  if (t && c && !s) out.s = t->v * c->v.conjugate();
  return out;
}

std::string_view to_string(CartanClass cls) noexcept {
  switch (cls) {
    case CartanClass::A: return "A";
    case CartanClass::AIII: return "AIII";
    case CartanClass::AI: return "AI";
    case CartanClass::BDI: return "BDI";
    case CartanClass::D: return "D";
    case CartanClass::DIII: return "DIII";
    case CartanClass::AII: return "AII";
    case CartanClass::CII: return "CII";
    case CartanClass::C: return "C";
    case CartanClass::CI: return "CI";
  }
  return "?";
}

CartanClass parse_cartan_class(std::string_view label) {
  for (const CartanRow& row : kTable)
    if (to_string(row.label) == label) return row.label;
  throw Error(ErrorKind::Parse, "unknown Cartan label '" + std::string(label) + "'");
}

bool requires_even_size(CartanClass cls) noexcept {
  switch (cls) {
    case CartanClass::DIII:
    case CartanClass::AII:
    case CartanClass::CII:
    case CartanClass::C:
    case CartanClass::CI: return true;
    default: return false;
  }
}

std::span<const CartanRow> cartan_table() noexcept { return kTable; }

CartanClass cartan_class(const SymmetrySet& input, const Tolerances& tol) {
  if (input.t) input.t->validate(tol);
  if (input.c) input.c->validate(tol);
  if (input.s) {
    const Matrix& s = *input.s;
    if (s.rows() != s.cols() || unitarity_defect(s) >= tol.frame_tol ||
        max_abs(s * s - Matrix::Identity(s.rows(), s.cols())) >= tol.frame_tol)
      throw Error(ErrorKind::InconsistentSymmetries, "chiral symmetry must be unitary with S^2 = 1");
  }
  if (input.s && (input.t.has_value() != input.c.has_value()))
    throw Error(ErrorKind::InconsistentSymmetries, "S with a single antiunitary is not a tenfold row; declare T and C");

  const SymmetrySet sym = input.completed();
  if (sym.t && sym.c) {
    const Matrix tc = sym.t->v * sym.c->v.conjugate();
    const Matrix ct = sym.c->v * sym.t->v.conjugate();
    if (max_abs(tc - double(sym.t->sign * sym.c->sign) * ct) >= tol.frame_tol)
      throw Error(ErrorKind::InconsistentSymmetries, "T C differs from eps_C eps_T C T");
    if (max_abs(tc - *sym.s) >= tol.frame_tol)
      throw Error(ErrorKind::InconsistentSymmetries, "declared S differs from T C");
  }
  const int t = sym.t ? sym.t->sign : 0;
  const int c = sym.c ? sym.c->sign : 0;
  const int s = sym.s ? 1 : 0;
  for (const CartanRow& row : kTable)
    if (row.t == t && row.c == c && row.s == s) return row.label;
  throw Error(ErrorKind::InconsistentSymmetries, "symmetry signature matches no tenfold row");
}

CompatibilityReport check_J_compatibility(const SymmetrySet& sym, const SymplecticForm& form, const Tolerances& tol) {
  const Matrix& j = form.matrix();
  CompatibilityReport report;
  const double bound = tol.frame_tol * form.scale();
  auto check_dim = [&](const Matrix& m) {
    if (m.rows() != j.rows()) throw Error(ErrorKind::DimensionMismatch, "symmetry and form dimensions differ");
  };
  if (sym.t) {
    check_dim(sym.t->v);
    report.t_residual = max_abs(sym.t->v * j.conjugate() - j * sym.t->v);
    report.pass = report.pass && *report.t_residual < bound;
  }
  if (sym.c) {
    check_dim(sym.c->v);
    report.c_residual = max_abs(sym.c->v * j.conjugate() + j * sym.c->v);
    report.pass = report.pass && *report.c_residual < bound;
  }
  if (sym.s) {
    check_dim(*sym.s);
    report.s_residual = max_abs(*sym.s * j + j * *sym.s);
    report.pass = report.pass && *report.s_residual < bound;
  }
  return report;
}

RespectReport plane_respects(const LagrangianPlane& plane, const SymmetrySet& sym, const Tolerances& tol) {
  RespectReport report;
  const Frame& f = plane.frame();
  auto distance_to = [&](const Matrix& image) { return projector_distance(f, orthonormalize(image, tol)); };
  if (sym.t) {
    report.t_distance = distance_to(sym.t->apply(f.columns()));
    report.pass = report.pass && *report.t_distance < tol.frame_tol;
  }
  if (sym.c) {
    report.c_distance = distance_to(sym.c->apply(f.columns()));
    report.pass = report.pass && *report.c_distance < tol.frame_tol;
  }
  if (sym.s) {
    report.s_distance = distance_to(*sym.s * f.columns());
    report.pass = report.pass && *report.s_distance < tol.frame_tol;
  }
  return report;
}

RealMatrix standard_omega(Index size) {
  if (size % 2 != 0) throw Error(ErrorKind::BadParity, "symplectic matrix needs even size");
  const Index n = size / 2;
  RealMatrix omega = RealMatrix::Zero(size, size);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return omega;
}

double membership_residual(const Matrix& u, CartanClass cls) {
  const Index n = u.rows();
  if (requires_even_size(cls) && n % 2 != 0) {
    std::ostringstream msg;
    msg << "class " << to_string(cls) << " requires even N, got " << n;
    throw Error(ErrorKind::BadParity, msg.str());
  }
  auto hermitian = [&] { return max_abs(u - u.adjoint()); };
  auto real = [&] { return max_abs(u - u.conjugate()); };
  auto symmetric = [&] { return max_abs(u - u.transpose()); };
  auto antisymmetric = [&] { return max_abs(u + u.transpose()); };
  auto symplectic = [&] {
    const Matrix omega = standard_omega(n).cast<cplx>();
    return max_abs(u.transpose() * omega * u - omega);
  };
  switch (cls) {
    case CartanClass::A: return 0.0;
    case CartanClass::AIII: return hermitian();
    case CartanClass::AI: return symmetric();
    case CartanClass::BDI: return std::max(real(), symmetric());
    case CartanClass::D: return real();
    case CartanClass::DIII: return std::max(real(), antisymmetric());
    case CartanClass::AII: return antisymmetric();
    case CartanClass::CII: return std::max(hermitian(), symplectic());
    case CartanClass::C: return symplectic();
    case CartanClass::CI: return std::max(symmetric(), symplectic());
  }
  return 0.0;
}

bool membership(const Matrix& u, CartanClass cls, const Tolerances& tol) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::DimensionMismatch, "membership needs a square matrix");
  if (unitarity_defect(u) >= tol.frame_tol) throw Error(ErrorKind::NotUnitary, "membership input is not unitary");
  return membership_residual(u, cls) < tol.frame_tol;
}

bool membership(const LerayUnitary& u, CartanClass cls, const Tolerances& tol) {
  return membership(u.matrix(), cls, tol);
}

std::pair<SymmetrySet, SymplecticForm> canonical_symmetry_basis(CartanClass cls, Index n) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "canonical basis needs N >= 1");
  if (requires_even_size(cls) && n % 2 != 0) {
    std::ostringstream msg;
    msg << "class " << to_string(cls) << " requires even N, got " << n;
    throw Error(ErrorKind::BadParity, msg.str());
  }
  const cplx i(0.0, 1.0);
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topLeftCorner(n, n) = i * Matrix::Identity(n, n);
  j.bottomRightCorner(n, n) = -i * Matrix::Identity(n, n);

  const Matrix identity = Matrix::Identity(2 * n, 2 * n);
  auto block_omega = [&] {
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    const Matrix omega = standard_omega(n).cast<cplx>();
    m.topLeftCorner(n, n) = omega;
    m.bottomRightCorner(n, n) = omega;
    return m;
  };
  auto off_omega = [&](cplx factor) {
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    const Matrix omega = standard_omega(n).cast<cplx>();
    m.topRightCorner(n, n) = factor * omega;
    m.bottomLeftCorner(n, n) = factor * omega;
    return m;
  };

  SymmetrySet sym;
  switch (cls) {
    case CartanClass::A: break;
    case CartanClass::AIII: sym.s = swap_blocks(n, 1.0, 1.0); break;
    case CartanClass::AI: sym.t = AntiUnitary{swap_blocks(n, 1.0, 1.0), 1}; break;
    case CartanClass::BDI:
      sym.t = AntiUnitary{swap_blocks(n, 1.0, 1.0), 1};
      sym.c = AntiUnitary{identity, 1};
      sym.s = swap_blocks(n, 1.0, 1.0);
      break;
    case CartanClass::D: sym.c = AntiUnitary{identity, 1}; break;
    case CartanClass::DIII:
      sym.t = AntiUnitary{swap_blocks(n, -1.0, 1.0), -1};
      sym.c = AntiUnitary{i * identity, 1};
      sym.s = swap_blocks(n, i, -i);
      break;
    case CartanClass::AII: sym.t = AntiUnitary{swap_blocks(n, -1.0, 1.0), -1}; break;
    case CartanClass::CII:
      sym.t = AntiUnitary{off_omega(-1.0), -1};
      sym.c = AntiUnitary{block_omega(), -1};
      sym.s = swap_blocks(n, 1.0, 1.0);
      break;
    case CartanClass::C: sym.c = AntiUnitary{block_omega(), -1}; break;
    case CartanClass::CI:
      sym.t = AntiUnitary{swap_blocks(n, i, i), 1};
      sym.c = AntiUnitary{block_omega(), -1};
      sym.s = off_omega(i);
      break;
  }
  return {std::move(sym), SymplecticForm(std::move(j))};
}

GrassmannianReport symplectic_grassmannian_check(const Matrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0)
    throw Error(ErrorKind::NotInClass, "class CII element must be square of even size");
  const Index size = a.rows();
  if (max_abs(a - a.adjoint()) >= tol.frame_tol || unitarity_defect(a) >= tol.frame_tol ||
      membership_residual(a, CartanClass::C) >= tol.frame_tol)
    throw Error(ErrorKind::NotInClass, "matrix is not hermitian, unitary and symplectic");
  const Matrix projector = (a + Matrix::Identity(size, size)) / 2.0;
  const Matrix omega = standard_omega(size).cast<cplx>();
  GrassmannianReport report;
  report.projector_residual = max_abs(projector.transpose() * omega - omega * projector);
  report.kernel_dim = static_cast<Index>(std::llround(projector.trace().real()));
  report.pass = report.projector_residual < tol.frame_tol && report.kernel_dim % 2 == 0;
  return report;
}

}  // namespace tenfold
