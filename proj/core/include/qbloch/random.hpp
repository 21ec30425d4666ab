#pragma once

// Seeded random problem instances for verification runs and tests.

#include <cstdint>
#include <random>

#include "qbloch/models.hpp"
#include "qbloch/system.hpp"

namespace qbloch::sampling {

using Rng = std::mt19937_64;

/// Generator for trial `index` of a run seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

Vec3c random_vec3(Rng& rng, double scale = 1.0);

/// Hermitian entrywise with zero diagonal.
DipoleMatrix random_intra_band_dipole(Rng& rng, Eigen::Index n, double scale = 1.0);
DipoleMatrix random_dipole(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0);

/// Energies uniform in [0, 2), hbar = 1, no degeneracy.
OneSpeciesSystem random_one_species(Rng& rng, Eigen::Index n, double dipole_scale = 1.0);
/// Conduction energies in [1, 3), valence energies in [-1, 0).
TwoSpeciesSystem random_two_species(Rng& rng, Eigen::Index nc, Eigen::Index nv,
                                    double dipole_scale = 1.0);

Matrix random_hermitian(Rng& rng, Eigen::Index n);
Matrix random_unitary(Rng& rng, Eigen::Index n);

/// U diag(p) U^dagger with p uniform in [0, 1]; PSD with Id - rho PSD.
DensityMatrix random_density(Rng& rng, Eigen::Index n);

} // namespace qbloch::sampling
