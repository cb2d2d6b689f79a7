#pragma once

// Random generators: Haar-like unitaries, members of each classifying space
// with a prescribed index, and Dirac mass matrices W in each symmetry class.

#include <optional>
#include <random>

#include "tenfold/index.hpp"

namespace tenfold {

using Rng = std::mt19937_64;

Matrix random_ginibre(Index rows, Index cols, Rng& rng);
RealMatrix random_real_ginibre(Index rows, Index cols, Rng& rng);

/// Haar unitary (QR of a Ginibre matrix with phase correction).
Matrix random_unitary(Index n, Rng& rng);
RealMatrix random_orthogonal(Index n, Rng& rng);
/// Element of U(2n) with U^T Omega U = Omega, as exp of a random element of its Lie algebra.
Matrix random_compact_symplectic(Index size, Rng& rng);

/// Random member of the classifying space of `cls` in U(N). For
/// kernel-dimension classes `target` fixes dim ker(U - 1); for D/DIII it
/// fixes the sign. Throws BadParity, and KindMismatch for an impossible target.
Matrix random_class_member(CartanClass cls, Index n, Rng& rng, std::optional<int> target = std::nullopt);

/// Random W for the constant Dirac operator in the canonical basis of `cls`:
/// hermitian (AIII), real symmetric (BDI), quaternion hermitian (CII), real
/// (D), real antisymmetric (DIII), general otherwise. Singular values are
/// kept at least `min_singular`.
Matrix random_dirac_mass(CartanClass cls, Index n, Rng& rng, double min_singular = 0.1);

}  // namespace tenfold
