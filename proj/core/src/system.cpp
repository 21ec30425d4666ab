#include "qbloch/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbloch {

namespace {

constexpr double kDipoleTolerance = 1e-12;

std::string entry_name(const char* name, Eigen::Index k, Eigen::Index l)
{
    std::ostringstream os;
    os << name << "(" << k << "," << l << ")";
    return os.str();
}

double max_abs(const DipoleMatrix& m)
{
    double out = 0.0;
    for (int a = 0; a < 3; ++a) {
        if (m.component(a).size() > 0)
            out = std::max(out, m.component(a).cwiseAbs().maxCoeff());
    }
    return out;
}

} // namespace

DipoleMatrix::DipoleMatrix(Eigen::Index rows, Eigen::Index cols)
{
    for (auto& c : components_)
        c = Matrix::Zero(rows, cols);
}

Vec3c DipoleMatrix::at(Eigen::Index k, Eigen::Index l) const
{
    return {components_[0](k, l), components_[1](k, l), components_[2](k, l)};
}

void DipoleMatrix::set(Eigen::Index k, Eigen::Index l, const Vec3c& value)
{
    for (int a = 0; a < 3; ++a)
        components_[a](k, l) = value[a];
}

Matrix DipoleMatrix::contract(const Vec3c& field) const
{
    Matrix out = field[0] * components_[0];
    out += field[1] * components_[1];
    out += field[2] * components_[2];
    return out;
}

DipoleMatrix DipoleMatrix::conjugate() const
{
    DipoleMatrix out;
    for (int a = 0; a < 3; ++a)
        out.components_[a] = components_[a].conjugate();
    return out;
}

DipoleMatrix DipoleMatrix::transpose() const
{
    DipoleMatrix out;
    for (int a = 0; a < 3; ++a)
        out.components_[a] = components_[a].transpose();
    return out;
}

DipoleMatrix DipoleMatrix::scaled(const RealVector& row_weights, const RealVector& col_weights) const
{
    if (row_weights.size() != rows() || col_weights.size() != cols())
        throw DimensionError("DipoleMatrix::scaled: weight sizes do not match matrix shape");
    DipoleMatrix out = *this;
    for (int a = 0; a < 3; ++a) {
        for (Eigen::Index k = 0; k < rows(); ++k)
            for (Eigen::Index l = 0; l < cols(); ++l)
                out.components_[a](k, l) *= std::sqrt(row_weights(k) * col_weights(l));
    }
    return out;
}

double DipoleMatrix::hermiticity_defect() const
{
    if (rows() != cols())
        return INFINITY;
    double out = 0.0;
    for (int a = 0; a < 3; ++a) {
        if (components_[a].size() > 0)
            out = std::max(out, (components_[a] - components_[a].adjoint()).cwiseAbs().maxCoeff());
    }
    return out;
}

bool DipoleMatrix::operator==(const DipoleMatrix& other) const
{
    if (rows() != other.rows() || cols() != other.cols())
        return false;
    for (int a = 0; a < 3; ++a)
        if (components_[a] != other.components_[a])
            return false;
    return true;
}

void validate_intra_band_dipole(const DipoleMatrix& dipole, Eigen::Index levels, const char* name)
{
    if (dipole.rows() != levels || dipole.cols() != levels) {
        std::ostringstream os;
        os << name << " must be " << levels << "x" << levels << ", got " << dipole.rows() << "x"
           << dipole.cols();
        throw ValidationError(os.str());
    }
    const double tol = kDipoleTolerance * std::max(1.0, max_abs(dipole));
    for (Eigen::Index k = 0; k < levels; ++k) {
        const Vec3c d = dipole.at(k, k);
        for (const cplx& x : d) {
            if (std::abs(x) > tol)
                throw ValidationError("dipole entry " + entry_name(name, k, k) +
                                      " is nonzero; the diagonal must satisfy M_kk = 0");
        }
    }
    for (Eigen::Index k = 0; k < levels; ++k) {
        for (Eigen::Index l = k + 1; l < levels; ++l) {
            const Vec3c a = dipole.at(k, l);
            const Vec3c b = dipole.at(l, k);
            for (int c = 0; c < 3; ++c) {
                if (std::abs(a[c] - std::conj(b[c])) > tol)
                    throw ValidationError("dipole entry " + entry_name(name, k, l) +
                                          " is not Hermitian: requires M_kl = conj(M_lk) against " +
                                          entry_name(name, l, k));
            }
        }
    }
}

bool OneSpeciesSystem::is_degenerate() const
{
    return std::any_of(degeneracies.begin(), degeneracies.end(), [](int d) { return d != 1; });
}

void OneSpeciesSystem::validate() const
{
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw ValidationError("hbar must be a positive finite real");
    if (levels() == 0)
        throw ValidationError("system must have at least one level");
    if (!energies.allFinite())
        throw ValidationError("energies must be finite");
    if (static_cast<Eigen::Index>(degeneracies.size()) != levels()) {
        std::ostringstream os;
        os << "degeneracies has " << degeneracies.size() << " entries, expected " << levels();
        throw ValidationError(os.str());
    }
    for (std::size_t i = 0; i < degeneracies.size(); ++i) {
        if (degeneracies[i] < 1) {
            std::ostringstream os;
            os << "degeneracy d_" << i << " = " << degeneracies[i] << " must be >= 1";
            throw ValidationError(os.str());
        }
    }
    validate_intra_band_dipole(dipole, levels(), "M");
}

void TwoSpeciesSystem::validate() const
{
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw ValidationError("hbar must be a positive finite real");
    if (conduction_levels() == 0 || valence_levels() == 0)
        throw ValidationError("two-species system needs at least one conduction and one valence level");
    if (!conduction_energies.allFinite() || !valence_energies.allFinite())
        throw ValidationError("energies must be finite");
    validate_intra_band_dipole(dipole_cc, conduction_levels(), "M^c");
    validate_intra_band_dipole(dipole_vv, valence_levels(), "M^v");
    if (dipole_cv.rows() != conduction_levels() || dipole_cv.cols() != valence_levels()) {
        std::ostringstream os;
        os << "M^cv must be " << conduction_levels() << "x" << valence_levels() << ", got "
           << dipole_cv.rows() << "x" << dipole_cv.cols();
        throw ValidationError(os.str());
    }
}

} // namespace qbloch
