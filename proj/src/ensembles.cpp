#include "tenfold/ensembles.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <numeric>

namespace tenfold {

Matrix random_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = cplx(normal(rng), normal(rng)) / std::sqrt(2.0);
  return m;
}

RealMatrix random_real_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Matrix random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_ginibre(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

RealMatrix random_orthogonal(Index n, Rng& rng) {
  Eigen::HouseholderQR<RealMatrix> qr(random_real_ginibre(n, n, rng));
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

Matrix random_compact_symplectic(Index size, Rng& rng) {
  if (size % 2 != 0) throw Error(ErrorKind::BadParity, "compact symplectic group needs even size");
  const Index n = size / 2;
  Matrix g = random_ginibre(n, n, rng);
  const Matrix a = (g - g.adjoint()) / 2.0;
  Matrix h = random_ginibre(n, n, rng);
  const Matrix b = (h + h.transpose()) / 2.0;
  Matrix x(size, size);
  x << a, b, -b.conjugate(), a.conjugate();
  Matrix s = (2.0 * x).exp();
  // one polar step to clean up the exponential's rounding
  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

namespace {

Index require_target_kernel(std::optional<int> target, Index n, Index step, Rng& rng) {
  if (!target) {
    std::uniform_int_distribution<Index> pick(0, n / step);
    return step * pick(rng);
  }
  if (*target < 0 || *target > n || *target % step != 0)
    throw Error(ErrorKind::KindMismatch, "kernel dimension target outside the realizable range");
  return *target;
}

int require_target_sign(std::optional<int> target, Rng& rng) {
  if (!target) return std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
  if (*target != 1 && *target != -1) throw Error(ErrorKind::KindMismatch, "sign target must be +1 or -1");
  return *target;
}

RealVector plus_minus_diagonal(Index n, Index plus_count) {
  RealVector d = -RealVector::Ones(n);
  d.head(plus_count).setOnes();
  return d;
}

}  // namespace

Matrix random_class_member(CartanClass cls, Index n, Rng& rng, std::optional<int> target) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "class member needs N >= 1");
  if (requires_even_size(cls) && n % 2 != 0) throw Error(ErrorKind::BadParity, "class requires even N");
  switch (cls) {
    case CartanClass::A: return random_unitary(n, rng);
    case CartanClass::AIII: {
      const Index k = require_target_kernel(target, n, 1, rng);
      const Matrix v = random_unitary(n, rng);
      return v * plus_minus_diagonal(n, k).cast<cplx>().asDiagonal() * v.adjoint();
    }
    case CartanClass::AI: {
      const Matrix v = random_unitary(n, rng);
      return v * v.transpose();
    }
    case CartanClass::BDI: {
      const Index k = require_target_kernel(target, n, 1, rng);
      const RealMatrix o = random_orthogonal(n, rng);
      return (o * plus_minus_diagonal(n, k).asDiagonal() * o.transpose()).cast<cplx>();
    }
    case CartanClass::D: {
      const int s = require_target_sign(target, rng);
      RealMatrix o = random_orthogonal(n, rng);
      if ((o.determinant() > 0.0) != (s > 0)) o.col(0) = -o.col(0);
      return o.cast<cplx>();
    }
    case CartanClass::DIII: {
      const int s = require_target_sign(target, rng);
      RealMatrix o = random_orthogonal(n, rng);
      // Pf(O Omega O^T) = det(O) Pf(Omega) = det(O)
      if ((o.determinant() > 0.0) != (s > 0)) o.col(0) = -o.col(0);
      return (o * standard_omega(n) * o.transpose()).cast<cplx>();
    }
    case CartanClass::AII: {
      const Matrix v = random_unitary(n, rng);
      return v * standard_omega(n).cast<cplx>() * v.transpose();
    }
    case CartanClass::CII: {
      const Index k = require_target_kernel(target, n, 2, rng);
      const Matrix s = random_compact_symplectic(n, rng);
      RealVector half = plus_minus_diagonal(n / 2, k / 2);
      RealVector d(n);
      d << half, half;
      return s * d.cast<cplx>().asDiagonal() * s.adjoint();
    }
    case CartanClass::C: return random_compact_symplectic(n, rng);
    case CartanClass::CI: {
      const Matrix s = random_compact_symplectic(n, rng);
      return s * s.transpose();
    }
  }
  return Matrix::Identity(n, n);
}

namespace {

// Rescales the singular values of W below `floor` up to `floor`, keeping
// the singular vectors (and therefore the class structure).
Matrix lift_singular_values(const Matrix& w, double floor) {
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector s = svd.singularValues().cwiseMax(floor);
  return svd.matrixU() * s.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
}

}  // namespace

Matrix random_dirac_mass(CartanClass cls, Index n, Rng& rng, double min_singular) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "mass matrix needs N >= 1");
  switch (cls) {
    case CartanClass::AIII: {
      // hermitian with spectrum bounded away from 0
      const Matrix v = random_unitary(n, rng);
      std::uniform_real_distribution<double> mag(min_singular, 2.0);
      std::bernoulli_distribution flip(0.5);
      RealVector d(n);
      for (Index i = 0; i < n; ++i) d(i) = (flip(rng) ? -1.0 : 1.0) * mag(rng);
      return v * d.cast<cplx>().asDiagonal() * v.adjoint();
    }
    case CartanClass::BDI: {
      const RealMatrix o = random_orthogonal(n, rng);
      std::uniform_real_distribution<double> mag(min_singular, 2.0);
      std::bernoulli_distribution flip(0.5);
      RealVector d(n);
      for (Index i = 0; i < n; ++i) d(i) = (flip(rng) ? -1.0 : 1.0) * mag(rng);
      return (o * d.asDiagonal() * o.transpose()).cast<cplx>();
    }
    case CartanClass::CII: {
      if (n % 2 != 0) throw Error(ErrorKind::BadParity, "class CII requires even N");
      const Matrix s = random_compact_symplectic(n, rng);
      std::uniform_real_distribution<double> mag(min_singular, 2.0);
      std::bernoulli_distribution flip(0.5);
      RealVector half(n / 2);
      for (Index i = 0; i < n / 2; ++i) half(i) = (flip(rng) ? -1.0 : 1.0) * mag(rng);
      RealVector d(n);
      d << half, half;
      return s * d.cast<cplx>().asDiagonal() * s.adjoint();
    }
    case CartanClass::D: {
      return lift_singular_values(random_real_ginibre(n, n, rng).cast<cplx>(), min_singular).real().cast<cplx>();
    }
    case CartanClass::DIII: {
      if (n % 2 != 0) throw Error(ErrorKind::BadParity, "class DIII requires even N");
      const RealMatrix o = random_orthogonal(n, rng);
      std::uniform_real_distribution<double> mag(min_singular, 2.0);
      RealMatrix block = RealMatrix::Zero(n, n);
      for (Index i = 0; i < n / 2; ++i) {
        const double m = mag(rng);
        block(i, n / 2 + i) = m;
        block(n / 2 + i, i) = -m;
      }
      return (o * block * o.transpose()).cast<cplx>();
    }
    default: return lift_singular_values(random_ginibre(n, n, rng), min_singular);
  }
}

}  // namespace tenfold
