#pragma once

// Time-reversal (T), particle-hole (C) and chiral (S) symmetries on the
// boundary space, the ten Cartan labels they produce, and the algebraic
// characterisation of each class's classifying space of unitaries.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "tenfold/symplectic.hpp"

namespace tenfold {

/// Antiunitary x -> V conj(x). `sign` is the square: V conj(V) = sign * 1.
struct AntiUnitary {
  Matrix v;
  int sign = 1;

  /// Checks unitarity of V and the squaring relation.
  void validate(const Tolerances& tol = {}) const;
  /// Matrix of O conj(.), applied to each column of a frame.
  Matrix apply(const Matrix& x) const { return v * x.conjugate(); }
};

struct SymmetrySet {
  std::optional<AntiUnitary> t;
  std::optional<AntiUnitary> c;
  std::optional<Matrix> s;

  /// Fills in S = T C when both antiunitaries are present and S is not.
  SymmetrySet completed() const;
};

enum class CartanClass { A, AIII, AI, BDI, D, DIII, AII, CII, C, CI };

std::string_view to_string(CartanClass cls) noexcept;
/// Throws Error(Parse) for an unknown label.
CartanClass parse_cartan_class(std::string_view label);

/// Classes whose classifying space is empty or not defined for odd N.
bool requires_even_size(CartanClass cls) noexcept;

struct CartanRow {
  CartanClass label;
  int t;  // 0 absent, otherwise the square
  int c;
  int s;  // 0 or 1
  std::string_view classifying_space;
  std::string_view index;
};

/// The ten rows in the usual periodic-table order.
std::span<const CartanRow> cartan_table() noexcept;

/// Unique row matching the (T, C, S) signature. Throws
/// InconsistentSymmetries when S differs from T C or T C != eps_C eps_T C T.
CartanClass cartan_class(const SymmetrySet& sym, const Tolerances& tol = {});

struct CompatibilityReport {
  std::optional<double> t_residual;  // |T J - J T|
  std::optional<double> c_residual;  // |C J + J C|
  std::optional<double> s_residual;  // |S J + J S|
  bool pass = true;
};

CompatibilityReport check_J_compatibility(const SymmetrySet& sym, const SymplecticForm& form,
                                          const Tolerances& tol = {});

struct RespectReport {
  std::optional<double> t_distance;  // projector distance between T(l) and l
  std::optional<double> c_distance;
  std::optional<double> s_distance;
  bool pass = true;
};

RespectReport plane_respects(const LagrangianPlane& plane, const SymmetrySet& sym, const Tolerances& tol = {});

/// Largest residual of the defining relations of the class's classifying
/// space (0 for class A). Throws BadParity when the class needs even N.
double membership_residual(const Matrix& u, CartanClass cls);

bool membership(const Matrix& u, CartanClass cls, const Tolerances& tol = {});
bool membership(const LerayUnitary& u, CartanClass cls, const Tolerances& tol = {});

/// Standard symplectic matrix [[0, 1_n], [-1_n, 0]] of size 2n.
RealMatrix standard_omega(Index size);

/// Canonical T/C/S matrices of the class on C^{2N} with J = diag(i 1_N, -i 1_N).
std::pair<SymmetrySet, SymplecticForm> canonical_symmetry_basis(CartanClass cls, Index n);

struct GrassmannianReport {
  Index kernel_dim = 0;             // dim Ker(A - 1)
  double projector_residual = 0.0;  // |P^T Omega - Omega P|
  bool pass = false;
};

/// For a hermitian unitary symplectic A, checks that the spectral projector P
/// onto Ker(A - 1) satisfies P^T Omega = Omega P and that the kernel is even.
/// Throws NotInClass when A is not such a matrix.
GrassmannianReport symplectic_grassmannian_check(const Matrix& a, const Tolerances& tol = {});

}  // namespace tenfold
