#include "tenfold/junction.hpp"

#include <sstream>

namespace tenfold {

HardJunction hard_junction(const BulkData& left, const BulkData& right, const Tolerances& tol) {
  const Matrix& jl = left.form.matrix();
  const Matrix& jr = right.form.matrix();
  if (jl.rows() != jr.rows()) throw Error(ErrorKind::IncompatibleBoundary, "boundary spaces have different dimensions");
  const double defect = max_abs(jl - jr);
  if (defect >= tol.frame_tol * left.form.scale()) {
    std::ostringstream msg;
    msg << "boundary forms differ by " << defect << "; the junction operator would not be self-adjoint";
    throw Error(ErrorKind::IncompatibleBoundary, msg.str());
  }
  return HardJunction{right.split, right.u_plus, plane_to_unitary(left.plane_minus, right.split, tol)};
}

Index predicted_zero_modes(const BulkData& left, const BulkData& right, const Tolerances& tol) {
  const HardJunction j = hard_junction(left, right, tol);
  return crossing_dim(j.u_right_plus, j.u_left_minus, tol);
}

Index protected_bound(CartanClass cls, const IndexValue& left, const IndexValue& right) {
  return relative_index(cls, left, right);
}

JunctionReport junction_report(const BulkData& left, const BulkData& right, CartanClass cls, const Tolerances& tol) {
  JunctionReport r;
  r.cls = cls;
  r.predicted_kernel_dim = predicted_zero_modes(left, right, tol);
  r.index_left = topological_index(left.u_plus, cls, tol);
  r.index_right = topological_index(right.u_plus, cls, tol);
  r.protected_bound = protected_bound(cls, r.index_left, r.index_right);
  const Index n = left.half_dim();
  r.consistency = bulk_consistency_check(cls, r.index_left, topological_index(left.u_minus, cls, tol), n) &&
                  bulk_consistency_check(cls, r.index_right, topological_index(right.u_minus, cls, tol), n) &&
                  r.predicted_kernel_dim >= r.protected_bound;
  return r;
}

ContinuousJunction continuous_junction_report(const PiecewiseDiracProfile& profile, double energy, CartanClass cls,
                                              const Tolerances& tol) {
  profile.validate();
  const BulkData left = dirac_bulk({profile.w.front()}, energy, tol);
  const BulkData right = dirac_bulk({profile.w.back()}, energy, tol);
  const LagrangianPlane plus = propagate_plane(profile, energy, Side::Plus, 0.0, tol);
  const LagrangianPlane minus = propagate_plane(profile, energy, Side::Minus, 0.0, tol);
  const LerayUnitary u_plus = plane_to_unitary(plus, right.split, tol);
  const LerayUnitary u_minus = plane_to_unitary(minus, right.split, tol);

  ContinuousJunction out;
  out.isotropy_defect =
      std::max(is_lagrangian(plus.frame(), plus.form(), tol).isotropy_defect,
               is_lagrangian(minus.frame(), minus.form(), tol).isotropy_defect);
  JunctionReport& r = out.report;
  r.cls = cls;
  r.index_left = topological_index(left.u_plus, cls, tol);
  r.index_right = topological_index(right.u_plus, cls, tol);
  r.protected_bound = protected_bound(cls, r.index_left, r.index_right);
  r.predicted_kernel_dim = crossing_dim(u_plus, u_minus, tol);
  out.transported_plus = topological_index(u_plus, cls, tol);
  out.transported_minus = topological_index(u_minus, cls, tol);
  r.consistency = out.transported_plus == r.index_right &&
                  out.transported_minus == topological_index(left.u_minus, cls, tol);
  return out;
}

}  // namespace tenfold
