#pragma once

// Bulk model families and the data a junction analysis needs from each:
// the boundary form J, the planes l_E^+ / l_E^- of boundary values of
// solutions decaying at +inf / -inf, their Leray unitaries and a gap
// certificate.
//
// Trace conventions: Dirac psi(0); Schrodinger (psi(0), psi'(0));
// tight-binding (psi_0, psi_1).

#include <optional>
#include <string>
#include <vector>

#include "tenfold/symmetry.hpp"

namespace tenfold {

struct GapCertificate {
  std::string kind;  // "m0", "spectral_margin" or "circle_distance"
  double value = 0.0;
};

struct BulkData {
  SymplecticForm form;
  CanonicalSplit split;
  LagrangianPlane plane_plus;
  LagrangianPlane plane_minus;
  LerayUnitary u_plus;
  LerayUnitary u_minus;
  GapCertificate gap;
  /// Dirac at E = 0 only: max deviation between the Leray unitaries and
  /// the closed forms +-W*|W|^{-1}.
  std::optional<double> closed_form_residual;

  Index half_dim() const noexcept { return u_plus.size(); }
};

// --- constant Dirac  D = (-i d/dt, -iW; iW*, i d/dt) on L^2(R, C^{2N}) ---

struct ConstantDiracModel {
  Matrix w;
};

/// J = i sigma_3 (x) 1_N.
SymplecticForm dirac_form(Index n);
/// Generator G(E) = i E sigma_3 - (0 W; W* 0) of psi' = G psi.
Matrix dirac_generator(const Matrix& w, double energy);
/// Smallest singular value m_0 of W.
double dirac_gap(const Matrix& w);
/// W* |W|^{-1} with |W| = sqrt(W W*).
Matrix dirac_closed_form_unitary(const Matrix& w);

/// Throws GapClosed when m_0 <= rank_tol or |E| >= m_0.
BulkData dirac_bulk(const ConstantDiracModel& model, double energy = 0.0, const Tolerances& tol = {});

struct OperatorSymmetryReport {
  std::optional<double> t_residual;  // |T V - V T|
  std::optional<double> c_residual;  // |C V + V C|
  std::optional<double> s_residual;  // |S V + V S|
  bool pass = true;
};

/// Checks the symmetries against the potential V = (0, -iW; iW*, 0).
OperatorSymmetryReport dirac_operator_symmetry(const Matrix& w, const SymmetrySet& sym, const Tolerances& tol = {});

// --- constant Schrodinger  -d^2/dt^2 + V on L^2(R, C^M) ---

struct ConstantSchrodingerModel {
  Matrix v;
  double energy = 0.0;
};

/// J = (0 1; -1 0) (x) 1_M.
SymplecticForm schrodinger_form(Index m);
/// Throws NotInGap unless E < min sigma(V).
BulkData schrodinger_bulk(const ConstantSchrodingerModel& model, const Tolerances& tol = {});

// --- periodic tight-binding  (h psi)_n = a*_{n-1} psi_{n-1} + b_n psi_n + a_n psi_{n+1} ---

struct TightBindingModel {
  std::vector<Matrix> a;  // a_0 .. a_{q-1}
  std::vector<Matrix> b;  // b_0 .. b_{q-1}
  /// Replaces the bond a_0 between sites 0 and 1 only. The junction cut
  /// sits on this bond, so two chains can share it.
  std::optional<Matrix> seam_hopping;

  Index period() const noexcept { return static_cast<Index>(a.size()); }
  Index size() const noexcept { return a.empty() ? 0 : a.front().rows(); }
  const Matrix& hop(Index n) const;     // a_{n mod q}, ignoring the seam
  const Matrix& onsite(Index n) const;  // b_{n mod q}
  const Matrix& cut_hop() const { return seam_hopping ? *seam_hopping : a.front(); }

  /// Throws DimensionMismatch, NotHermitian, NotInvertible.
  void validate(const Tolerances& tol = {}) const;
};

/// J = (0 -a; a* 0) with a the bond at the cut.
SymplecticForm tb_form(const TightBindingModel& model);
/// (psi_{n-1}, psi_n) -> (psi_n, psi_{n+1}) from row n of h psi = E psi.
Matrix tb_transfer(const Matrix& a_prev, const Matrix& b, const Matrix& a_next, double energy);
/// (psi_0, psi_1) -> (psi_q, psi_{q+1}) for the periodic chain.
Matrix tb_monodromy(const TightBindingModel& model, double energy);
/// Distance from E to the Bloch spectrum, sampled on `samples` quasi-momenta.
double tb_energy_gap(const TightBindingModel& model, double energy, Index samples = 512);

/// Throws GapClosed when the monodromy has spectrum on the unit circle.
BulkData tb_bulk(const TightBindingModel& model, double energy, const Tolerances& tol = {});

// --- piecewise-constant Dirac profiles ---

struct PiecewiseDiracProfile {
  std::vector<double> breakpoints;  // t_0 < ... < t_k
  std::vector<Matrix> w;            // k + 2 entries, w.front() on (-inf, t_0)

  /// Throws BadSpec or DimensionMismatch.
  void validate() const;
  Index size() const { return w.front().rows(); }
  const Matrix& w_at(double t) const;
};

enum class Side { Plus, Minus };

/// Transports l_E^{R,+} (Plus) or l_E^{L,-} (Minus) from the far side to t
/// with exact interval propagators, re-orthonormalizing at every sub-step.
LagrangianPlane propagate_plane(const PiecewiseDiracProfile& profile, double energy, Side side, double t,
                                const Tolerances& tol = {});

}  // namespace tenfold
