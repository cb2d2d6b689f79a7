#pragma once

// Per-class topological index of a Leray unitary, relative indices between
// two bulks, and the relations linking the indices of l^+ and l^- of one
// gapped bulk.

#include <string>

#include "tenfold/symmetry.hpp"

namespace tenfold {

class IndexValue {
 public:
  enum class Kind { Zero, KernelDim, Sign };

  static IndexValue zero() { return IndexValue(Kind::Zero, 0); }
  static IndexValue kernel_dim(Index k);
  static IndexValue sign(int s);

  Kind kind() const noexcept { return kind_; }
  /// k for KernelDim, +1/-1 for Sign, 0 for Zero.
  int value() const noexcept { return value_; }

  std::string to_string() const;

  friend bool operator==(const IndexValue&, const IndexValue&) = default;

 private:
  IndexValue(Kind kind, int value) : kind_(kind), value_(value) {}

  Kind kind_;
  int value_;
};

std::string_view to_string(IndexValue::Kind kind) noexcept;

/// Index kind carried by a class (Table 1, last column).
IndexValue::Kind index_kind(CartanClass cls) noexcept;

/// Throws NotInClass when U fails membership, AmbiguousKernel when an
/// eigenvalue lies in the guard band (eig_tol, 10 eig_tol] around 1.
IndexValue topological_index(const Matrix& u, CartanClass cls, const Tolerances& tol = {});
IndexValue topological_index(const LerayUnitary& u, CartanClass cls, const Tolerances& tol = {});

/// |k_R - k_L| for kernel-dimension classes, 1 if the signs differ for
/// D/DIII, 0 otherwise. Throws KindMismatch.
Index relative_index(CartanClass cls, const IndexValue& left, const IndexValue& right);

/// AIII/BDI/CII: k_+ + k_- = N; D: s_+ = (-1)^N s_-; DIII: s_+ = (-1)^n s_-
/// with N = 2n. Always true for the index-free classes.
bool bulk_consistency_check(CartanClass cls, const IndexValue& plus, const IndexValue& minus, Index n);

}  // namespace tenfold
