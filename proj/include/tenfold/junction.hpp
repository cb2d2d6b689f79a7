#pragma once

// Junctions between two bulks: the crossing of l^{R,+} with l^{L,-}
// predicts the kernel of the junction operator, the relative index gives
// the protected lower bound.

#include "tenfold/index.hpp"
#include "tenfold/models.hpp"

namespace tenfold {

struct JunctionReport {
  CartanClass cls = CartanClass::A;
  IndexValue index_left = IndexValue::zero();
  IndexValue index_right = IndexValue::zero();
  Index protected_bound = 0;       // relative index
  Index predicted_kernel_dim = 0;  // exact crossing count
  bool consistency = false;
};

/// The planes a hard junction glues, expressed in one shared split.
struct HardJunction {
  CanonicalSplit split;
  LerayUnitary u_right_plus;
  LerayUnitary u_left_minus;
};

/// Throws IncompatibleBoundary when |J_L - J_R| >= frame_tol |J_L|.
HardJunction hard_junction(const BulkData& left, const BulkData& right, const Tolerances& tol = {});

/// dim Ker(U^{R,+} (U^{L,-})* - 1).
Index predicted_zero_modes(const BulkData& left, const BulkData& right, const Tolerances& tol = {});

Index protected_bound(CartanClass cls, const IndexValue& left, const IndexValue& right);

/// Bulk indices are those of U^+. consistency = both bulks pass
/// bulk_consistency_check and predicted >= bound.
JunctionReport junction_report(const BulkData& left, const BulkData& right, CartanClass cls,
                               const Tolerances& tol = {});

struct ContinuousJunction {
  JunctionReport report;
  double isotropy_defect = 0.0;  // worst of the two transported planes
  IndexValue transported_plus = IndexValue::zero();
  IndexValue transported_minus = IndexValue::zero();
};

/// Transports both planes to t = 0; consistency = transported indices equal
/// the far-side bulk indices.
ContinuousJunction continuous_junction_report(const PiecewiseDiracProfile& profile, double energy, CartanClass cls,
                                              const Tolerances& tol = {});

}  // namespace tenfold
