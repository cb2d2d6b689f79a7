#include <doctest.h>

#include "tenfold/ensembles.hpp"
#include "tenfold/index.hpp"
#include "tenfold/models.hpp"

using namespace tenfold;

namespace {
const cplx I(0.0, 1.0);

Matrix scalar(cplx x) { return Matrix::Constant(1, 1, x); }

TightBindingModel ssh(double v, double w) {
  return TightBindingModel{{scalar(v), scalar(w)}, {scalar(0), scalar(0)}, std::nullopt};
}
}  // namespace

TEST_CASE("Dirac N = 1 closed forms") {
  const BulkData b = dirac_bulk(ConstantDiracModel{scalar(0.7)});
  CHECK(std::abs(b.u_plus.matrix()(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(b.u_minus.matrix()(0, 0) + 1.0) < 1e-12);
  CHECK(b.gap.value == doctest::Approx(0.7));
  CHECK(b.gap.kind == "m0");

  const BulkData n = dirac_bulk(ConstantDiracModel{scalar(-0.7)});
  CHECK(std::abs(n.u_plus.matrix()(0, 0) + 1.0) < 1e-12);
  CHECK(topological_index(n.u_plus, CartanClass::D) == IndexValue::sign(-1));
}

TEST_CASE("Dirac N = 2, W = Omega, class DIII") {
  const Matrix omega = standard_omega(2).cast<cplx>();
  const BulkData b = dirac_bulk(ConstantDiracModel{omega});
  CHECK(max_abs(b.u_plus.matrix() - omega.transpose()) < 1e-12);
  CHECK(topological_index(b.u_plus, CartanClass::DIII) == IndexValue::sign(-1));
  CHECK(*b.closed_form_residual < 1e-12);
}

TEST_CASE("Dirac random W matches the closed form") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 5;
    const Matrix w = random_ginibre(n, n, rng);
    const BulkData b = dirac_bulk(ConstantDiracModel{w});
    const Matrix expected = dirac_closed_form_unitary(w);
    CHECK(max_abs(b.u_plus.matrix() - expected) < 1e-10);
    CHECK(max_abs(b.u_minus.matrix() + expected) < 1e-10);
    CHECK(is_lagrangian(b.plane_plus.frame(), b.form).lagrangian);
    Eigen::JacobiSVD<Matrix> svd(w);
    CHECK(std::abs(b.gap.value - svd.singularValues()(n - 1)) < 1e-12);
  }
}

TEST_CASE("Dirac gap closed and energies inside the gap") {
  CHECK_THROWS_AS(dirac_bulk(ConstantDiracModel{scalar(0)}), Error);
  CHECK_THROWS_AS(dirac_bulk(ConstantDiracModel{scalar(1)}, 1.5), Error);
  const BulkData b = dirac_bulk(ConstantDiracModel{scalar(1)}, 0.4);
  CHECK(b.u_plus.size() == 1);
  CHECK_FALSE(b.closed_form_residual.has_value());
  // E != 0 planes come from the generator's stable subspace
  const Matrix g = dirac_generator(scalar(1), 0.4);
  CHECK(max_abs(g * b.plane_plus.frame().columns() -
                b.plane_plus.frame().columns() *
                    (b.plane_plus.frame().columns().adjoint() * g * b.plane_plus.frame().columns())) < 1e-12);
}

TEST_CASE("Dirac operator symmetry check") {
  const Matrix w = scalar(0.5);
  CHECK(dirac_operator_symmetry(w, canonical_symmetry_basis(CartanClass::BDI, 1).first).pass);
  CHECK_FALSE(dirac_operator_symmetry(scalar(I), canonical_symmetry_basis(CartanClass::AIII, 1).first).pass);
}

TEST_CASE("free Schrodinger") {
  const BulkData b = schrodinger_bulk(ConstantSchrodingerModel{Matrix::Zero(1, 1), -1.0});
  CHECK(std::abs(b.u_plus.matrix()(0, 0) + I) < 1e-12);
  const BulkData c = schrodinger_bulk(ConstantSchrodingerModel{Matrix::Zero(1, 1), -4.0});
  CHECK(std::abs(c.u_plus.matrix()(0, 0) - (1.0 - 2.0 * I) / (1.0 + 2.0 * I)) < 1e-12);
  CHECK_THROWS_AS(schrodinger_bulk(ConstantSchrodingerModel{Matrix::Zero(1, 1), 0.5}), Error);
}

TEST_CASE("Schrodinger V = diag(1, 4) at E = 0") {
  Matrix v = Matrix::Zero(2, 2);
  v(0, 0) = 1;
  v(1, 1) = 4;
  const BulkData b = schrodinger_bulk(ConstantSchrodingerModel{v, 0.0});
  Matrix expected(4, 2);
  expected << 1, 0, 0, 1, -1, 0, 0, -2;
  const Frame f = orthonormalize(expected);
  CHECK(projector_distance(b.plane_plus.frame(), f) < 1e-12);
}

TEST_CASE("SSH monodromy and planes") {
  const TightBindingModel m = ssh(1, 2);
  const Matrix mono = tb_monodromy(m, 0.0);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = -0.5;
  expected(1, 1) = -2.0;
  CHECK(max_abs(mono - expected) < 1e-14);
  const BulkData b = tb_bulk(m, 0.0);
  CHECK(std::abs(std::abs(b.plane_plus.frame().columns()(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(b.plane_minus.frame().columns()(1, 0)) - 1.0) < 1e-14);
  CHECK(b.gap.kind == "circle_distance");
  CHECK(b.gap.value == doctest::Approx(0.5));
}

TEST_CASE("uniform chain") {
  const TightBindingModel m{{scalar(1)}, {scalar(0)}, std::nullopt};
  const Matrix mono = tb_monodromy(m, 3.0);
  // lambda + 1/lambda = trace = E
  CHECK(std::abs(mono.trace() - 3.0) < 1e-14);
  CHECK(std::abs(mono.determinant() - 1.0) < 1e-14);
  CHECK_NOTHROW(tb_bulk(m, 3.0));
  try {
    tb_bulk(m, 0.0);
    FAIL("expected GapClosed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GapClosed);
  }
  CHECK(tb_energy_gap(m, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("tight-binding validation") {
  TightBindingModel bad{{scalar(0)}, {scalar(0)}, std::nullopt};
  CHECK_THROWS_AS(bad.validate(), Error);
  TightBindingModel nh{{scalar(1)}, {scalar(I)}, std::nullopt};
  CHECK_THROWS_AS(nh.validate(), Error);
}

TEST_CASE("seam hopping keeps the planes Lagrangian for the seam form") {
  TightBindingModel m = ssh(1, 2);
  m.seam_hopping = scalar(2);
  const BulkData b = tb_bulk(m, 0.0);
  CHECK(max_abs(b.form.matrix() - tb_form(ssh(2, 1)).matrix()) < 1e-14);
  CHECK(is_lagrangian(b.plane_plus.frame(), b.form).lagrangian);
  CHECK(is_lagrangian(b.plane_minus.frame(), b.form).lagrangian);
}

TEST_CASE("piecewise profiles") {
  PiecewiseDiracProfile bad{{0.0, -1.0}, {scalar(1), scalar(1), scalar(1)}};
  CHECK_THROWS_AS(bad.validate(), Error);
  PiecewiseDiracProfile wrong{{0.0}, {scalar(1)}};
  CHECK_THROWS_AS(wrong.validate(), Error);

  Rng rng(32);
  const Matrix w = random_ginibre(2, 2, rng);
  PiecewiseDiracProfile flat{{-1.0, 1.0}, {w, w, w}};
  const BulkData bulk = dirac_bulk(ConstantDiracModel{w});
  for (double t : {-3.0, 0.0, 0.5, 2.0}) {
    CHECK(projector_distance(propagate_plane(flat, 0.0, Side::Plus, t).frame(), bulk.plane_plus.frame()) < 1e-10);
    CHECK(projector_distance(propagate_plane(flat, 0.0, Side::Minus, t).frame(), bulk.plane_minus.frame()) < 1e-10);
  }

  PiecewiseDiracProfile wall{{0.0}, {scalar(-1), scalar(1)}};
  const LagrangianPlane p = propagate_plane(wall, 0.0, Side::Plus, -5.0);
  CHECK(is_lagrangian(p.frame(), p.form()).isotropy_defect < 1e-10);
  CHECK(wall.w_at(-1.0)(0, 0) == cplx(-1.0));
  CHECK(wall.w_at(1.0)(0, 0) == cplx(1.0));
}
