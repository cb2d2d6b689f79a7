#pragma once

// Boundary symplectic spaces (C^{2N}, omega) with omega(x, y) = <x, J y>,
// their Lagrangian planes, and the correspondence between Lagrangian planes
// and N x N unitaries.

#include "tenfold/linalg.hpp"

namespace tenfold {

/// Matrix J of a symplectic form: J* = -J and J invertible. Validated on
/// construction.
class SymplecticForm {
 public:
  explicit SymplecticForm(Matrix j, const Tolerances& tol = {});

  Index dim() const noexcept { return j_.rows(); }
  const Matrix& matrix() const noexcept { return j_; }
  /// max |J_ij|, the scale used for relative residuals.
  double scale() const noexcept { return scale_; }

 private:
  Matrix j_;
  double scale_ = 1.0;
};

/// Unitary change of basis Q with Q* J Q = diag(i A_plus, -i A_minus).
/// Columns of Q hold an orthonormal basis of K_+ (first n_plus columns,
/// |eigenvalue| ascending) followed by one of K_-.
struct CanonicalSplit {
  Index n_plus = 0;
  Index n_minus = 0;
  Matrix q;
  RealVector a_plus;
  RealVector a_minus;
  Matrix form;  // J the split was computed from

  Index half_dim() const noexcept { return n_plus; }
  Matrix q_plus() const { return q.leftCols(n_plus); }
  Matrix q_minus() const { return q.rightCols(n_minus); }
  /// max |Q* J Q - diag(i A_+, -i A_-)|
  double block_defect() const;
};

CanonicalSplit canonical_split(const SymplecticForm& form, const Tolerances& tol = {});

bool same_split(const CanonicalSplit& a, const CanonicalSplit& b, const Tolerances& tol = {});

struct IsotropyReport {
  double isotropy_defect = 0.0;  // max |F* J F| / max |J|
  bool lagrangian = false;
};

IsotropyReport is_lagrangian(const Frame& candidate, const SymplecticForm& form, const Tolerances& tol = {});

/// Lagrangian plane of a symplectic form. Only constructible through
/// `make_plane`, which checks isotropy and maximality.
class LagrangianPlane {
 public:
  const SymplecticForm& form() const noexcept { return form_; }
  const Frame& frame() const noexcept { return frame_; }
  Index dim() const noexcept { return frame_.ambient_dim(); }

  friend LagrangianPlane make_plane(Frame frame, const SymplecticForm& form, const Tolerances& tol);

 private:
  LagrangianPlane(SymplecticForm form, Frame frame) : form_(std::move(form)), frame_(std::move(frame)) {}

  SymplecticForm form_;
  Frame frame_;
};

/// Throws NotLagrangian (with the measured defect) when the frame is not a
/// Lagrangian plane of `form`.
LagrangianPlane make_plane(Frame frame, const SymplecticForm& form, const Tolerances& tol = {});

/// Leray unitary of a Lagrangian plane, tied to the split it was computed in.
class LerayUnitary {
 public:
  LerayUnitary(CanonicalSplit split, Matrix u, const Tolerances& tol = {});

  const CanonicalSplit& split() const noexcept { return split_; }
  const Matrix& matrix() const noexcept { return u_; }
  Index size() const noexcept { return u_.rows(); }

 private:
  CanonicalSplit split_;
  Matrix u_;
};

/// U = sqrt(A_-) X sqrt(A_+)^{-1} where X maps the K_+ coordinates of the
/// plane to its K_- coordinates.
LerayUnitary plane_to_unitary(const LagrangianPlane& plane, const CanonicalSplit& split,
                              const Tolerances& tol = {});

/// The plane {(x, A_-^{-1/2} U A_+^{1/2} x)} expressed back in the original
/// coordinates.
LagrangianPlane unitary_to_plane(const LerayUnitary& u, const Tolerances& tol = {});

/// dim Ker(U_A U_B^* - 1), counted as eigenvalues within eig_tol of 1.
Index crossing_dim(const LerayUnitary& a, const LerayUnitary& b, const Tolerances& tol = {});

}  // namespace tenfold
