#pragma once

#include <cstddef>
#include <vector>

#include "qbloch/types.hpp"

namespace qbloch {

/**
 * Matrix of complex 3-vectors, stored as three complex component matrices.
 * Contracting with a field vector is then a weighted sum of the components.
 */
class DipoleMatrix {
public:
    DipoleMatrix() = default;
    DipoleMatrix(Eigen::Index rows, Eigen::Index cols);

    static DipoleMatrix zero(Eigen::Index rows, Eigen::Index cols) { return {rows, cols}; }

    Eigen::Index rows() const { return components_[0].rows(); }
    Eigen::Index cols() const { return components_[0].cols(); }

    Vec3c at(Eigen::Index k, Eigen::Index l) const;
    void set(Eigen::Index k, Eigen::Index l, const Vec3c& value);

    const Matrix& component(int axis) const { return components_[axis]; }
    Matrix& component(int axis) { return components_[axis]; }

    /// Entrywise field·M_kl.
    Matrix contract(const Vec3c& field) const;

    /// Entrywise complex conjugate, same shape.
    DipoleMatrix conjugate() const;

    /// Entry (k,l) of the result is M_lk (no conjugation).
    DipoleMatrix transpose() const;

    /// Entry (k,l) of the result is M_kl * sqrt(w_k w_l).
    DipoleMatrix scaled(const RealVector& row_weights, const RealVector& col_weights) const;

    /// max over entries and components of |M_kl - conj(M_lk)|.
    double hermiticity_defect() const;

    bool operator==(const DipoleMatrix& other) const;

private:
    std::array<Matrix, 3> components_;
};

/// Single electron species: level energies, dipole moments, degeneracies.
struct OneSpeciesSystem {
    RealVector energies;
    DipoleMatrix dipole;
    std::vector<int> degeneracies;
    double hbar = 1.0;

    Eigen::Index levels() const { return energies.size(); }
    bool is_degenerate() const;

    /// Throws ValidationError naming the offending entry.
    void validate() const;
};

/// Conduction and valence bands with intra- and inter-band dipoles.
struct TwoSpeciesSystem {
    RealVector conduction_energies;
    RealVector valence_energies;
    DipoleMatrix dipole_cc;
    DipoleMatrix dipole_vv;
    DipoleMatrix dipole_cv; // |I^c| x |I^v|
    double hbar = 1.0;

    Eigen::Index conduction_levels() const { return conduction_energies.size(); }
    Eigen::Index valence_levels() const { return valence_energies.size(); }
    Eigen::Index total_levels() const { return conduction_levels() + valence_levels(); }

    RealVector hole_energies() const { return -valence_energies; }
    const DipoleMatrix& dipole_hh() const { return dipole_vv; }
    const DipoleMatrix& dipole_ch() const { return dipole_cv; }

    void validate() const;
};

/// Sizes of the conduction and valence blocks of a composite matrix.
struct BandSplit {
    Eigen::Index conduction = 0;
    Eigen::Index valence = 0;

    Eigen::Index total() const { return conduction + valence; }
};

inline BandSplit split_of(const TwoSpeciesSystem& system)
{
    return {system.conduction_levels(), system.valence_levels()};
}

/// Checks the constraints shared by every intra-band dipole matrix:
/// square, Hermitian entrywise and M_kk = 0. `name` prefixes error messages.
void validate_intra_band_dipole(const DipoleMatrix& dipole, Eigen::Index levels, const char* name);

} // namespace qbloch
