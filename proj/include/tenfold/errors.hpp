#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tenfold {

enum class ErrorKind {
  NotHermitian,
  ZeroRank,
  DimensionMismatch,
  Singular,
  OddDimension,
  NotAntisymmetric,
  BranchCutHit,
  NoLagrangianPlanes,
  NotLagrangian,
  ProjectionSingular,
  NotUnitary,
  SplitMismatch,
  InconsistentSymmetries,
  BadParity,
  NotInClass,
  AmbiguousKernel,
  KindMismatch,
  GapClosed,
  NotInGap,
  NotInvertible,
  IncompatibleBoundary,
  BadSpec,
  BadTemplate,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every domain failure; `kind()` lets callers
/// branch without RTTI ladders.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tenfold
