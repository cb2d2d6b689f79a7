#pragma once

// Finite-size oracle: discretize a junction operator, find its eigenpairs
// near the reference energy and count those localized near the seam.

#include <Eigen/Sparse>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tenfold/junction.hpp"

namespace tenfold {

struct DiscretizationSpec {
  double half_length = 20.0;  // continuum domain [-L, L]
  double step = 0.05;         // continuum grid step h
  Index n_cells = 200;        // tight-binding cells on each side of the seam
  double localization_window = 0.5;
  std::optional<double> energy_window;  // default 0.1 * min bulk gap

  /// Throws BadSpec.
  void validate() const;
};

/// Hermitian block-tridiagonal operator with a coordinate per block.
struct DiscreteOperator {
  Index block = 1;
  std::vector<Matrix> diag;   // diagonal blocks
  std::vector<Matrix> upper;  // (k, k+1) blocks
  std::vector<double> position;
  double half_extent = 1.0;
  double reference_energy = 0.0;
  double reference_gap = 1.0;
  std::vector<std::string> warnings;

  Index blocks() const noexcept { return static_cast<Index>(diag.size()); }
  Index dim() const noexcept { return blocks() * block; }
  Matrix dense() const;
  Eigen::SparseMatrix<cplx> sparse() const;
  /// Number of eigenvalues strictly below x (block Sturm sequence).
  Index count_below(double x) const;
};

/// Staggered grid: after a constant rotation taking sigma_3 to sigma_1 the
/// derivative couples the two spinor components only, so they live on
/// interleaved half-grids with one-sided differences. No doubler modes.
/// Block order b_0, a_1, b_1, ..., a_m, b at half-integer nodes. Both
/// sublattices have the same size; ends where W > 0 carry no spurious zero
/// modes, ends with W < 0 do and are removed by the localization filter.
DiscreteOperator discretize_dirac_junction(const PiecewiseDiracProfile& profile, const DiscretizationSpec& spec,
                                           double energy = 0.0);

/// Rows n <= 0 from `left`, rows n >= 1 from `right`, sites
/// -n_cells q + 1 .. n_cells q, open ends. The bond (0, 1) is the shared cut
/// bond of both models. Throws IncompatibleBoundary.
DiscreteOperator finite_chain(const TightBindingModel& left, const TightBindingModel& right,
                              const DiscretizationSpec& spec, double energy = 0.0, const Tolerances& tol = {});

struct OracleReport {
  double energy_window = 0.0;
  std::vector<double> eigenvalues_in_window;  // relative to the reference energy
  std::vector<double> central_weight;         // per eigenvector
  Index localized_count = 0;
  std::vector<double> localized_energies;  // Rayleigh quotients of the localized directions
  std::optional<std::string> spectra_file;
};

/// Localized count = number of eigenvalues above 0.9 of the compression of
/// the central-window indicator to the in-window eigenspace, which is
/// independent of how near-degenerate eigenvectors happen to mix.
OracleReport count_near_zero_localized(const DiscreteOperator& op, const DiscretizationSpec& spec);

enum class Verdict { Pass, Warn, Fail };
std::string_view to_string(Verdict v) noexcept;

/// FAIL below the protected bound, PASS at exactly the predicted count,
/// WARN otherwise.
Verdict oracle_compare(const JunctionReport& report, const OracleReport& oracle);

/// CSV columns: index, eigenvalue, central_weight.
void write_spectra_csv(const OracleReport& oracle, std::ostream& out);

}  // namespace tenfold
