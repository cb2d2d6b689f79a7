#include "tenfold/errors.hpp"

namespace tenfold {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::ZeroRank: return "ZeroRank";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::BranchCutHit: return "BranchCutHit";
    case ErrorKind::NoLagrangianPlanes: return "NoLagrangianPlanes";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::ProjectionSingular: return "ProjectionSingular";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::SplitMismatch: return "SplitMismatch";
    case ErrorKind::InconsistentSymmetries: return "InconsistentSymmetries";
    case ErrorKind::BadParity: return "BadParity";
    case ErrorKind::NotInClass: return "NotInClass";
    case ErrorKind::AmbiguousKernel: return "AmbiguousKernel";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::GapClosed: return "GapClosed";
    case ErrorKind::NotInGap: return "NotInGap";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::IncompatibleBoundary: return "IncompatibleBoundary";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::BadTemplate: return "BadTemplate";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace tenfold
