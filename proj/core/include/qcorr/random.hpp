#pragma once

#include "qcorr/state.hpp"

#include <cstdint>
#include <random>

namespace qcorr {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// Ginibre ensemble: rho = G G^dagger / tr.
DensityMatrix random_state(Rng& rng, int dim_a = 2, int dim_b = 2);
DensityMatrix random_qubit(Rng& rng);
CMatrix random_unitary(Rng& rng, int dim);
Vec3 random_unit_vector(Rng& rng);

// Uniform over the tetrahedron of valid Bell-diagonal correlators.
Vec3 random_bell_diagonal_c(Rng& rng);

// p |u0><u0| ⊗ rho0 + (1-p) |u1><u1| ⊗ rho1 for a random orthonormal {u0,u1}.
DensityMatrix random_cq_state(Rng& rng);

// Derived seed for worker or start index k; stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k);

}  // namespace qcorr
