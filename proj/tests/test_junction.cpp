#include <doctest.h>

#include "tenfold/ensembles.hpp"
#include "tenfold/junction.hpp"

using namespace tenfold;

namespace {
Matrix scalar(double x) { return Matrix::Constant(1, 1, x); }
BulkData dirac(const Matrix& w) { return dirac_bulk(ConstantDiracModel{w}); }
TightBindingModel ssh(double v, double w, std::optional<double> seam = std::nullopt) {
  TightBindingModel m{{scalar(v), scalar(w)}, {scalar(0), scalar(0)}, std::nullopt};
  if (seam) m.seam_hopping = scalar(*seam);
  return m;
}
}  // namespace

TEST_CASE("boundary compatibility") {
  CHECK_NOTHROW(hard_junction(dirac(scalar(1)), dirac(scalar(-2))));
  try {
    hard_junction(tb_bulk(ssh(1, 2), 0.0), tb_bulk(ssh(2, 1), 0.0));
    FAIL("expected IncompatibleBoundary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatibleBoundary);
  }
  CHECK_NOTHROW(hard_junction(tb_bulk(ssh(1, 2, 2.0), 0.0), tb_bulk(ssh(2, 1), 0.0)));
}

TEST_CASE("mass wall") {
  const BulkData left = dirac(scalar(1)), right = dirac(scalar(-1));
  const HardJunction h = hard_junction(left, right);
  CHECK(std::abs(h.u_right_plus.matrix()(0, 0) + 1.0) < 1e-12);
  CHECK(std::abs(h.u_left_minus.matrix()(0, 0) + 1.0) < 1e-12);
  CHECK(predicted_zero_modes(left, right) == 1);
  const JunctionReport r = junction_report(left, right, CartanClass::BDI);
  CHECK(r.protected_bound == 1);
  CHECK(r.predicted_kernel_dim == 1);
  CHECK(r.consistency);
}

TEST_CASE("identical bulks") {
  Rng rng(41);
  const BulkData b = dirac(random_dirac_mass(CartanClass::AIII, 3, rng));
  const JunctionReport r = junction_report(b, b, CartanClass::AIII);
  CHECK(r.predicted_kernel_dim == 0);
  CHECK(r.protected_bound == 0);
}

TEST_CASE("SSH seam") {
  const JunctionReport r = junction_report(tb_bulk(ssh(1, 2, 2.0), 0.0), tb_bulk(ssh(2, 1), 0.0), CartanClass::BDI);
  CHECK(r.predicted_kernel_dim == 1);
  CHECK(r.protected_bound == 1);
  CHECK(r.consistency);
}

TEST_CASE("protected_bound") {
  CHECK(protected_bound(CartanClass::AIII, IndexValue::kernel_dim(0), IndexValue::kernel_dim(2)) == 2);
  CHECK(protected_bound(CartanClass::D, IndexValue::sign(1), IndexValue::sign(-1)) == 1);
  CHECK(protected_bound(CartanClass::CI, IndexValue::zero(), IndexValue::zero()) == 0);
}

TEST_CASE("continuous junctions") {
  PiecewiseDiracProfile flat{{0.0}, {scalar(2), scalar(2)}};
  ContinuousJunction c = continuous_junction_report(flat, 0.0, CartanClass::AIII);
  CHECK(c.report.predicted_kernel_dim == 0);
  CHECK(c.report.consistency);

  PiecewiseDiracProfile three{{-1.0, 1.0}, {scalar(-1), scalar(0.5), scalar(1)}};
  c = continuous_junction_report(three, 0.0, CartanClass::AIII);
  CHECK(c.report.consistency);
  CHECK(c.report.protected_bound == 1);
  CHECK(c.report.predicted_kernel_dim >= 1);
  CHECK(c.isotropy_defect < 1e-10);

  PiecewiseDiracProfile closed{{0.0}, {scalar(0), scalar(1)}};
  CHECK_THROWS_AS(continuous_junction_report(closed, 0.0, CartanClass::AIII), Error);
}
