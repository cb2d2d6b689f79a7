#include <doctest.h>

#include "tenfold/ensembles.hpp"
#include "tenfold/junction.hpp"

using namespace tenfold;

namespace {
constexpr CartanClass kIndexed[] = {CartanClass::AIII, CartanClass::BDI, CartanClass::D, CartanClass::DIII,
                                    CartanClass::CII};

Index size_for(CartanClass cls, int trial) {
  const Index n = 1 + trial % 6;
  return requires_even_size(cls) ? 2 * ((n + 1) / 2) : n;
}

BulkData dirac(const Matrix& w) { return dirac_bulk(ConstantDiracModel{w}); }
}  // namespace

TEST_CASE("predicted >= protected bound on random Dirac pairs") {
  Rng rng(61);
  for (CartanClass cls : kIndexed) {
    CAPTURE(to_string(cls));
    for (int trial = 0; trial < 100; ++trial) {
      const Index n = size_for(cls, trial);
      const BulkData l = dirac(random_dirac_mass(cls, n, rng));
      const BulkData r = dirac(random_dirac_mass(cls, n, rng));
      const JunctionReport rep = junction_report(l, r, cls);
      CHECK(rep.predicted_kernel_dim >= rep.protected_bound);
      CHECK(rep.consistency);
    }
  }
}

TEST_CASE("AIII refinement of the crossing bound") {
  Rng rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = size_for(CartanClass::AIII, trial);
    const BulkData l = dirac(random_dirac_mass(CartanClass::AIII, n, rng));
    const BulkData r = dirac(random_dirac_mass(CartanClass::AIII, n, rng));
    const HardJunction h = hard_junction(l, r);
    const Index ka = topological_index(h.u_right_plus, CartanClass::AIII).value();
    const Index kb = topological_index(h.u_left_minus, CartanClass::AIII).value();
    CHECK(predicted_zero_modes(l, r) >= std::abs(n - ka - kb));
  }
}

TEST_CASE("swapping materials leaves the Dirac prediction unchanged") {
  Rng rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    const CartanClass cls = kIndexed[trial % 5];
    const Index n = size_for(cls, trial);
    const BulkData a = dirac(random_dirac_mass(cls, n, rng));
    const BulkData b = dirac(random_dirac_mass(cls, n, rng));
    CHECK(predicted_zero_modes(a, b) == predicted_zero_modes(b, a));
  }
}

TEST_CASE("bulk planes are complementary and Lagrangian") {
  Rng rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 5;
    const BulkData b = dirac(random_ginibre(n, n, rng));
    CHECK(subspace_intersection_dim(b.plane_plus.frame(), b.plane_minus.frame()) == 0);
    CHECK(is_lagrangian(b.plane_plus.frame(), b.form).lagrangian);
    CHECK(is_lagrangian(b.plane_minus.frame(), b.form).lagrangian);
  }
}

TEST_CASE("stable, unstable and circle dimensions add up") {
  Rng rng(65);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + trial % 6;
    Matrix m = random_ginibre(n, n, rng);
    if (trial % 3 == 0) m = random_unitary(n, rng);
    const StableSplit s = stable_unstable_split(m);
    CHECK(s.stable.rank() + s.unstable.rank() + s.unit_circle_count == n);
  }
}

TEST_CASE("AIII members have spectrum in {-1, 1}") {
  Rng rng(66);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix u = random_class_member(CartanClass::AIII, 1 + trial % 7, rng);
    Eigen::ComplexEigenSolver<Matrix> es(u);
    for (Index i = 0; i < u.rows(); ++i)
      CHECK(std::min(std::abs(es.eigenvalues()(i) - 1.0), std::abs(es.eigenvalues()(i) + 1.0)) < 1e-8);
  }
}

TEST_CASE("Pfaffian sign product from the principal log") {
  Rng rng(67);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 * (1 + trial % 3);
    const Matrix a = random_class_member(CartanClass::DIII, n, rng);
    const Matrix b = random_class_member(CartanClass::DIII, n, rng);
    const RealMatrix ar = a.real(), br = b.real();
    Eigen::ComplexEigenSolver<Matrix> es((ar * br).cast<cplx>());
    if ((es.eigenvalues().array() - 1.0).abs().minCoeff() < 1e-6) continue;
    const double product = pfaffian(ar) * pfaffian(br);
    const cplx rhs = std::exp(0.5 * principal_log_trace(ar.transpose() * br));
    CHECK(std::abs(rhs.imag()) < 1e-8);
    CHECK((product > 0) == (rhs.real() > 0));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("continuous junctions stay consistent") {
  Rng rng(68);
  for (int trial = 0; trial < 20; ++trial) {
    const CartanClass cls = kIndexed[trial % 5];
    const Index n = size_for(cls, trial);
    PiecewiseDiracProfile p;
    p.breakpoints = {-1.0, 0.3, 1.2};
    for (int k = 0; k < 4; ++k) p.w.push_back(random_dirac_mass(cls, n, rng, 0.3));
    const ContinuousJunction c = continuous_junction_report(p, 0.0, cls);
    CHECK(c.report.consistency);
    CHECK(c.isotropy_defect < 1e-9);
  }
}
