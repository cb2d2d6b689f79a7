#include <doctest.h>

#include <sstream>

#include "tenfold/ensembles.hpp"
#include "tenfold/verify.hpp"

using namespace tenfold;

namespace {
Matrix scalar(double x) { return Matrix::Constant(1, 1, x); }
TightBindingModel ssh(double v, double w, std::optional<double> seam = std::nullopt) {
  TightBindingModel m{{scalar(v), scalar(w)}, {scalar(0), scalar(0)}, std::nullopt};
  if (seam) m.seam_hopping = scalar(*seam);
  return m;
}
}  // namespace

TEST_CASE("discretization settings are validated") {
  DiscretizationSpec s;
  CHECK_NOTHROW(s.validate());
  s.step = -1;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.localization_window = 1.5;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("staggered Dirac operator is hermitian and gapped") {
  PiecewiseDiracProfile flat{{0.0}, {scalar(1), scalar(1)}};
  const DiscreteOperator op = discretize_dirac_junction(flat, DiscretizationSpec{});
  const Matrix h = op.dense();
  CHECK(hermiticity_defect(h) == 0.0);
  // exact inertia count, no diagonalization needed
  CHECK(op.count_below(0.9) - op.count_below(-0.9) == 0);
  CHECK(op.count_below(0.5) == op.dim() / 2);  // symmetric spectrum
}

TEST_CASE("mass wall oracle") {
  PiecewiseDiracProfile wall{{0.0}, {scalar(-1), scalar(1)}};
  DiscretizationSpec spec;
  const DiscreteOperator op = discretize_dirac_junction(wall, spec);
  const OracleReport r = count_near_zero_localized(op, spec);
  CHECK(r.localized_count == 1);
  REQUIRE(r.localized_energies.size() == 1);
  CHECK(std::abs(r.localized_energies[0]) < 0.05);
  CHECK(r.central_weight.size() == r.eigenvalues_in_window.size());
  CHECK(r.localized_count <= static_cast<Index>(r.eigenvalues_in_window.size()));

  const JunctionReport jr =
      junction_report(dirac_bulk(ConstantDiracModel{scalar(-1)}), dirac_bulk(ConstantDiracModel{scalar(1)}),
                      CartanClass::AIII);
  CHECK(oracle_compare(jr, r) == Verdict::Pass);
}

TEST_CASE("trivial Dirac junction has no localized modes") {
  PiecewiseDiracProfile flat{{0.0}, {scalar(-1), scalar(-1)}};
  DiscretizationSpec spec;
  CHECK(count_near_zero_localized(discretize_dirac_junction(flat, spec), spec).localized_count == 0);
}

TEST_CASE("AIII N = 2, index difference 2") {
  Matrix wl = Matrix::Identity(2, 2);
  Matrix wr = -Matrix::Identity(2, 2);
  wr(0, 1) = wr(1, 0) = 0.2;
  PiecewiseDiracProfile p{{0.0}, {wl, wr}};
  DiscretizationSpec spec;
  CHECK(count_near_zero_localized(discretize_dirac_junction(p, spec), spec).localized_count == 2);
}

TEST_CASE("SSH finite chains") {
  DiscretizationSpec spec;
  const DiscreteOperator op = finite_chain(ssh(1, 2, 2.0), ssh(2, 1), spec);
  CHECK(op.dim() == 2 * spec.n_cells * 2);
  const OracleReport r = count_near_zero_localized(op, spec);
  CHECK(r.localized_count == 1);
  REQUIRE(r.localized_energies.size() == 1);
  CHECK(std::abs(r.localized_energies[0]) < 1e-6);

  const OracleReport trivial = count_near_zero_localized(finite_chain(ssh(2, 1), ssh(2, 1), spec), spec);
  CHECK(trivial.localized_count == 0);

  CHECK_THROWS_AS(finite_chain(ssh(1, 2), ssh(2, 1), spec), Error);
}

TEST_CASE("uniform chain fills [-2, 2]") {
  const TightBindingModel chain{{scalar(1)}, {scalar(0)}, std::nullopt};
  DiscretizationSpec spec;
  spec.n_cells = 100;
  const DiscreteOperator op = finite_chain(chain, chain, spec, 3.0);
  const auto e = hermitian_eig(op.dense());
  CHECK(e.values.minCoeff() > -2.0);
  CHECK(e.values.maxCoeff() < 2.0);
  CHECK(e.values.minCoeff() < -1.99);
  CHECK(e.values.maxCoeff() > 1.99);
  for (Index i = 1; i < e.values.size(); ++i) CHECK(e.values(i) - e.values(i - 1) < 0.1);
}

TEST_CASE("Sturm count matches dense eigenvalues") {
  Rng rng(51);
  const Matrix wl = random_dirac_mass(CartanClass::A, 2, rng, 0.5);
  const Matrix wr = random_dirac_mass(CartanClass::A, 2, rng, 0.5);
  DiscretizationSpec spec;
  spec.half_length = 5;
  spec.step = 0.1;
  const DiscreteOperator op = discretize_dirac_junction(PiecewiseDiracProfile{{0.0}, {wl, wr}}, spec);
  const auto e = hermitian_eig(op.dense());
  for (double x : {-1.3, -0.2, 0.0, 0.31, 2.0}) {
    Index dense = 0;
    for (Index i = 0; i < e.values.size(); ++i) dense += e.values(i) < x;
    CHECK(op.count_below(x) == dense);
  }
}

TEST_CASE("oracle_compare verdicts") {
  JunctionReport jr;
  jr.protected_bound = 1;
  jr.predicted_kernel_dim = 1;
  OracleReport o;
  o.localized_count = 1;
  CHECK(oracle_compare(jr, o) == Verdict::Pass);
  o.localized_count = 2;
  CHECK(oracle_compare(jr, o) == Verdict::Warn);
  o.localized_count = 0;
  CHECK(oracle_compare(jr, o) == Verdict::Fail);
  jr.protected_bound = 0;
  CHECK(oracle_compare(jr, o) == Verdict::Warn);
}

TEST_CASE("class A accidental crossing: bound 0, one mode") {
  const Matrix wl = scalar(1), wr = scalar(-1);
  const JunctionReport jr =
      junction_report(dirac_bulk(ConstantDiracModel{wl}), dirac_bulk(ConstantDiracModel{wr}), CartanClass::A);
  CHECK(jr.protected_bound == 0);
  CHECK(jr.predicted_kernel_dim == 1);
  DiscretizationSpec spec;
  const OracleReport o = count_near_zero_localized(discretize_dirac_junction({{0.0}, {wl, wr}}, spec), spec);
  CHECK(o.localized_count == 1);
  CHECK(oracle_compare(jr, o) != Verdict::Fail);
}

TEST_CASE("spectra CSV") {
  PiecewiseDiracProfile wall{{0.0}, {scalar(-1), scalar(1)}};
  DiscretizationSpec spec;
  const OracleReport r = count_near_zero_localized(discretize_dirac_junction(wall, spec), spec);
  std::ostringstream out;
  write_spectra_csv(r, out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,eigenvalue,central_weight");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == static_cast<int>(r.eigenvalues_in_window.size()));
}

TEST_CASE("halving h converges") {
  PiecewiseDiracProfile wall{{0.0}, {scalar(-1), scalar(0.7)}};
  std::vector<double> energies;
  for (double h : {0.1, 0.05, 0.025}) {
    DiscretizationSpec spec;
    spec.step = h;
    const OracleReport r = count_near_zero_localized(discretize_dirac_junction(wall, spec), spec);
    REQUIRE(r.localized_energies.size() == 1);
    energies.push_back(r.localized_energies[0]);
  }
  const double d1 = std::abs(energies[1] - energies[0]);
  const double d2 = std::abs(energies[2] - energies[1]);
  CHECK(d2 <= 4.0 * d1 + 1e-12);
}
