#include "tenfold/index.hpp"

#include <sstream>

namespace tenfold {

IndexValue IndexValue::kernel_dim(Index k) {
  if (k < 0) throw Error(ErrorKind::KindMismatch, "kernel dimension must be nonnegative");
  return IndexValue(Kind::KernelDim, static_cast<int>(k));
}

IndexValue IndexValue::sign(int s) {
  if (s != 1 && s != -1) throw Error(ErrorKind::KindMismatch, "sign index must be +1 or -1");
  return IndexValue(Kind::Sign, s);
}

std::string IndexValue::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::KernelDim: return "dim ker = " + std::to_string(value_);
    case Kind::Sign: return value_ > 0 ? "+1" : "-1";
  }
  return "?";
}

std::string_view to_string(IndexValue::Kind kind) noexcept {
  switch (kind) {
    case IndexValue::Kind::Zero: return "Zero";
    case IndexValue::Kind::KernelDim: return "KernelDim";
    case IndexValue::Kind::Sign: return "Sign";
  }
  return "?";
}

IndexValue::Kind index_kind(CartanClass cls) noexcept {
  switch (cls) {
    case CartanClass::AIII:
    case CartanClass::BDI:
    case CartanClass::CII: return IndexValue::Kind::KernelDim;
    case CartanClass::D:
    case CartanClass::DIII: return IndexValue::Kind::Sign;
    default: return IndexValue::Kind::Zero;
  }
}

namespace {

int snap_sign(double value, const char* what) {
  if (std::abs(value - 1.0) <= 1e-6) return 1;
  if (std::abs(value + 1.0) <= 1e-6) return -1;
  std::ostringstream msg;
  msg << what << " = " << value << " is not within 1e-6 of +1 or -1";
  throw Error(ErrorKind::NotInClass, msg.str());
}

}  // namespace

IndexValue topological_index(const Matrix& u, CartanClass cls, const Tolerances& tol) {
  if (!membership(u, cls, tol)) {
    std::ostringstream msg;
    msg << "unitary is not in the classifying space of " << to_string(cls) << " (residual "
        << membership_residual(u, cls) << ")";
    throw Error(ErrorKind::NotInClass, msg.str());
  }
  switch (index_kind(cls)) {
    case IndexValue::Kind::Zero: return IndexValue::zero();
    case IndexValue::Kind::KernelDim: {
      // members of these classes are hermitian
      const RealVector eig = hermitian_eig(u, tol).values;
      Index count = 0;
      for (Index i = 0; i < eig.size(); ++i) {
        const double d = std::abs(eig(i) - 1.0);
        if (d <= tol.eig_tol) {
          ++count;
        } else if (d <= 10.0 * tol.eig_tol) {
          std::ostringstream msg;
          msg << "eigenvalue " << eig(i) << " sits in the guard band around 1";
          throw Error(ErrorKind::AmbiguousKernel, msg.str());
        }
      }
      return IndexValue::kernel_dim(count);
    }
    case IndexValue::Kind::Sign: {
      const RealMatrix real = u.real();
      if (cls == CartanClass::D) return IndexValue::sign(snap_sign(real.determinant(), "det(U)"));
      return IndexValue::sign(snap_sign(pfaffian(real, tol), "Pf(U)"));
    }
  }
  return IndexValue::zero();
}

IndexValue topological_index(const LerayUnitary& u, CartanClass cls, const Tolerances& tol) {
  return topological_index(u.matrix(), cls, tol);
}

namespace {

void require_kind(CartanClass cls, const IndexValue& v) {
  if (v.kind() != index_kind(cls)) {
    std::ostringstream msg;
    msg << "class " << to_string(cls) << " expects " << to_string(index_kind(cls)) << " index, got "
        << to_string(v.kind());
    throw Error(ErrorKind::KindMismatch, msg.str());
  }
}

}  // namespace

Index relative_index(CartanClass cls, const IndexValue& left, const IndexValue& right) {
  require_kind(cls, left);
  require_kind(cls, right);
  switch (index_kind(cls)) {
    case IndexValue::Kind::KernelDim: return std::abs(right.value() - left.value());
    case IndexValue::Kind::Sign: return left.value() != right.value() ? 1 : 0;
    case IndexValue::Kind::Zero: return 0;
  }
  return 0;
}

bool bulk_consistency_check(CartanClass cls, const IndexValue& plus, const IndexValue& minus, Index n) {
  require_kind(cls, plus);
  require_kind(cls, minus);
  switch (cls) {
    case CartanClass::AIII:
    case CartanClass::BDI:
    case CartanClass::CII: return plus.value() + minus.value() == n;
    case CartanClass::D: return plus.value() == (n % 2 == 0 ? 1 : -1) * minus.value();
    case CartanClass::DIII: {
      if (n % 2 != 0) throw Error(ErrorKind::BadParity, "class DIII requires even N");
      return plus.value() == ((n / 2) % 2 == 0 ? 1 : -1) * minus.value();
    }
    default: return true;
  }
}

}  // namespace tenfold
