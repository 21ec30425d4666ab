#pragma once

// Hand-coded right-hand sides for the Bloch models: one species, full and
// condensed degenerate forms, two species in Liouville form, the
// electron-hole formulation and the reduced model with vanishing intra-band
// coherences. Every derivative returned here is d/dt, i.e. already divided
// by i*hbar.

#include <span>
#include <vector>

#include "qbloch/system.hpp"
#include "qbloch/types.hpp"

namespace qbloch {

/// Hermitian complex matrix; populations on the diagonal.
using DensityMatrix = Matrix;

/// V = diag(eps) + Re(E)·M.
Matrix potential_one_species(const OneSpeciesSystem& system, const Vec3c& field);

/// (-i/hbar)[V, rho].
Matrix liouville_rhs(const Matrix& potential, const DensityMatrix& rho, double hbar);

// --- degenerate levels -------------------------------------------------------

/// Non-degenerate system on the sub-level index set {(i,n): n < d_i}, ordered
/// level by level. Sub-levels of a level share its energy and dipole entries.
OneSpeciesSystem expand_degenerate(const OneSpeciesSystem& system);

/// Offsets of each level's first sub-level in the expanded index set, plus
/// the total as a final entry.
std::vector<Eigen::Index> sublevel_offsets(std::span<const int> degeneracies);

/// rho^{++}_{ij}: sum of the expanded (i,n),(j,m) entries over n and m.
Matrix summed_blocks(const DensityMatrix& rho_expanded, std::span<const int> degeneracies);

/// sigma_ij = rho^{++}_ij / sqrt(d_i d_j).
DensityMatrix condense(const DensityMatrix& rho_expanded, std::span<const int> degeneracies);

/// Same energies, dipole N_ij = M_ij sqrt(d_i d_j), degeneracies reset to 1.
OneSpeciesSystem condensed_system(const OneSpeciesSystem& system);

/// Copy of rho_expanded with entries (i,n),(i,m), n != m, set to zero.
DensityMatrix zero_intra_level_coherences(const DensityMatrix& rho_expanded,
                                          std::span<const int> degeneracies);

// --- two species -------------------------------------------------------------

/// Block potential [[E^c + Re(E)·M^c, E·M^cv], [(E·M^cv)^dagger, E^v + Re(E)·M^v]].
Matrix potential_two_species(const TwoSpeciesSystem& system, const Vec3c& field);

/// Conduction electrons and valence holes.
struct ElectronHoleState {
    DensityMatrix rho_c;  // |I^c| x |I^c|
    DensityMatrix rho_h;  // |I^h| x |I^h|, rho^h_ij = delta_ij - rho^v_ji
    Matrix rho_ch;        // |I^c| x |I^h|, equal to rho^cv

    ElectronHoleState& operator+=(const ElectronHoleState& o);
    ElectronHoleState& operator*=(double s);
    friend ElectronHoleState operator+(ElectronHoleState a, const ElectronHoleState& b) { return a += b; }
    friend ElectronHoleState operator*(double s, ElectronHoleState a) { return a *= s; }
};

ElectronHoleState to_electron_hole(const DensityMatrix& rho_tot, BandSplit split);
DensityMatrix from_electron_hole(const ElectronHoleState& state);

/// Maps a time derivative of rho^tot to the derivative of the electron-hole
/// variables; the constant delta_ij drops out.
ElectronHoleState electron_hole_derivative(const Matrix& drho_tot, BandSplit split);

/// Electron-hole equations, written entry by entry.
ElectronHoleState eh_rhs(const ElectronHoleState& state, const TwoSpeciesSystem& system,
                         const Vec3c& field);

// --- reduced model -------------------------------------------------------------

/// Populations n^e_i, n^h_j and polarization p_ji = rho^ch_ij, stored with
/// rows indexed by the hole level j and columns by the conduction level i.
struct GhState {
    RealVector n_e;
    RealVector n_h;
    Matrix p; // |I^h| x |I^c|

    GhState& operator+=(const GhState& o);
    GhState& operator*=(double s);
    friend GhState operator+(GhState a, const GhState& b) { return a += b; }
    friend GhState operator*(double s, GhState a) { return a *= s; }
};

/// Drops intra-band coherences of an electron-hole state.
GhState to_gh(const ElectronHoleState& state);
/// Electron-hole state with diagonal intra-band blocks.
ElectronHoleState from_gh(const GhState& state);

GhState gh_rhs(const GhState& state, const TwoSpeciesSystem& system, const Vec3c& field);

// --- helpers -----------------------------------------------------------------

/// max_ij |rho_ij - conj(rho_ji)|.
double hermiticity_defect(const Matrix& m);

/// Validates physical initial data: Hermitian within 1e-13, positive
/// semidefinite, populations in [0, 1] (1e-12 slack). Throws ValidationError.
void validate_density(const DensityMatrix& rho, const char* what = "initial state");

} // namespace qbloch
