#include "qbloch/models.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qbloch/linalg.hpp"

namespace qbloch {

Matrix potential_one_species(const OneSpeciesSystem& system, const Vec3c& field)
{
    Matrix v = system.dipole.contract(real_part(field));
    v.diagonal() += system.energies.cast<cplx>();
    return v;
}

Matrix liouville_rhs(const Matrix& potential, const DensityMatrix& rho, double hbar)
{
    if (potential.rows() != potential.cols() || rho.rows() != rho.cols() ||
        potential.rows() != rho.rows())
        throw DimensionError("liouville_rhs: potential and state dimensions differ");
    return (-I / hbar) * (potential * rho - rho * potential);
}

// --- degenerate levels -------------------------------------------------------

std::vector<Eigen::Index> sublevel_offsets(std::span<const int> degeneracies)
{
    std::vector<Eigen::Index> offsets(degeneracies.size() + 1, 0);
    for (std::size_t i = 0; i < degeneracies.size(); ++i)
        offsets[i + 1] = offsets[i] + degeneracies[i];
    return offsets;
}

OneSpeciesSystem expand_degenerate(const OneSpeciesSystem& system)
{
    const auto offsets = sublevel_offsets(system.degeneracies);
    const Eigen::Index n = system.levels();
    const Eigen::Index total = offsets.back();

    OneSpeciesSystem out;
    out.hbar = system.hbar;
    out.energies.resize(total);
    out.dipole = DipoleMatrix::zero(total, total);
    out.degeneracies.assign(static_cast<std::size_t>(total), 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index a = offsets[i]; a < offsets[i + 1]; ++a) {
            out.energies(a) = system.energies(i);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                for (Eigen::Index b = offsets[j]; b < offsets[j + 1]; ++b)
                    out.dipole.set(a, b, system.dipole.at(i, j));
            }
        }
    }
    return out;
}

Matrix summed_blocks(const DensityMatrix& rho_expanded, std::span<const int> degeneracies)
{
    const auto offsets = sublevel_offsets(degeneracies);
    const Eigen::Index n = static_cast<Eigen::Index>(degeneracies.size());
    if (rho_expanded.rows() != offsets.back() || rho_expanded.cols() != offsets.back()) {
        std::ostringstream os;
        os << "expanded state is " << rho_expanded.rows() << "x" << rho_expanded.cols()
           << " but the degeneracies sum to " << offsets.back();
        throw DimensionError(os.str());
    }
    Matrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = rho_expanded
                            .block(offsets[i], offsets[j], degeneracies[i], degeneracies[j])
                            .sum();
    return out;
}

DensityMatrix condense(const DensityMatrix& rho_expanded, std::span<const int> degeneracies)
{
    Matrix sigma = summed_blocks(rho_expanded, degeneracies);
    for (Eigen::Index i = 0; i < sigma.rows(); ++i)
        for (Eigen::Index j = 0; j < sigma.cols(); ++j)
            sigma(i, j) /= std::sqrt(static_cast<double>(degeneracies[i]) * degeneracies[j]);
    return sigma;
}

OneSpeciesSystem condensed_system(const OneSpeciesSystem& system)
{
    RealVector d(system.levels());
    for (Eigen::Index i = 0; i < d.size(); ++i)
        d(i) = system.degeneracies[static_cast<std::size_t>(i)];
    OneSpeciesSystem out;
    out.energies = system.energies;
    out.dipole = system.dipole.scaled(d, d);
    out.degeneracies.assign(system.degeneracies.size(), 1);
    out.hbar = system.hbar;
    return out;
}

DensityMatrix zero_intra_level_coherences(const DensityMatrix& rho_expanded,
                                          std::span<const int> degeneracies)
{
    const auto offsets = sublevel_offsets(degeneracies);
    if (rho_expanded.rows() != offsets.back())
        throw DimensionError("zero_intra_level_coherences: size does not match degeneracies");
    DensityMatrix out = rho_expanded;
    for (std::size_t i = 0; i < degeneracies.size(); ++i)
        for (Eigen::Index a = offsets[i]; a < offsets[i + 1]; ++a)
            for (Eigen::Index b = offsets[i]; b < offsets[i + 1]; ++b)
                if (a != b)
                    out(a, b) = 0.0;
    return out;
}

// --- two species -------------------------------------------------------------

Matrix potential_two_species(const TwoSpeciesSystem& system, const Vec3c& field)
{
    const Eigen::Index nc = system.conduction_levels();
    const Eigen::Index nv = system.valence_levels();
    const Vec3c re = real_part(field);

    Matrix v(nc + nv, nc + nv);
    v.topLeftCorner(nc, nc) = system.dipole_cc.contract(re);
    v.topLeftCorner(nc, nc).diagonal() += system.conduction_energies.cast<cplx>();
    v.bottomRightCorner(nv, nv) = system.dipole_vv.contract(re);
    v.bottomRightCorner(nv, nv).diagonal() += system.valence_energies.cast<cplx>();
    const Matrix g = system.dipole_cv.contract(field);
    v.topRightCorner(nc, nv) = g;
    v.bottomLeftCorner(nv, nc) = g.adjoint();
    return v;
}

ElectronHoleState& ElectronHoleState::operator+=(const ElectronHoleState& o)
{
    rho_c += o.rho_c;
    rho_h += o.rho_h;
    rho_ch += o.rho_ch;
    return *this;
}

ElectronHoleState& ElectronHoleState::operator*=(double s)
{
    rho_c *= s;
    rho_h *= s;
    rho_ch *= s;
    return *this;
}

namespace {

void check_split(const Matrix& m, BandSplit split, const char* who)
{
    if (m.rows() != split.total() || m.cols() != split.total()) {
        std::ostringstream os;
        os << who << ": matrix is " << m.rows() << "x" << m.cols() << " but the split is "
           << split.conduction << "+" << split.valence;
        throw DimensionError(os.str());
    }
}

} // namespace

ElectronHoleState to_electron_hole(const DensityMatrix& rho_tot, BandSplit split)
{
    check_split(rho_tot, split, "to_electron_hole");
    const Eigen::Index nc = split.conduction;
    const Eigen::Index nv = split.valence;
    ElectronHoleState s;
    s.rho_c = rho_tot.topLeftCorner(nc, nc);
    s.rho_h = Matrix::Identity(nv, nv) - rho_tot.bottomRightCorner(nv, nv).transpose();
    s.rho_ch = rho_tot.topRightCorner(nc, nv);
    return s;
}

DensityMatrix from_electron_hole(const ElectronHoleState& state)
{
    const Eigen::Index nc = state.rho_c.rows();
    const Eigen::Index nv = state.rho_h.rows();
    if (state.rho_ch.rows() != nc || state.rho_ch.cols() != nv)
        throw DimensionError("from_electron_hole: rho_ch shape does not match rho_c and rho_h");
    DensityMatrix rho(nc + nv, nc + nv);
    rho.topLeftCorner(nc, nc) = state.rho_c;
    rho.bottomRightCorner(nv, nv) = Matrix::Identity(nv, nv) - state.rho_h.transpose();
    rho.topRightCorner(nc, nv) = state.rho_ch;
    rho.bottomLeftCorner(nv, nc) = state.rho_ch.adjoint();
    return rho;
}

ElectronHoleState electron_hole_derivative(const Matrix& drho_tot, BandSplit split)
{
    check_split(drho_tot, split, "electron_hole_derivative");
    const Eigen::Index nc = split.conduction;
    const Eigen::Index nv = split.valence;
    ElectronHoleState s;
    s.rho_c = drho_tot.topLeftCorner(nc, nc);
    s.rho_h = -drho_tot.bottomRightCorner(nv, nv).transpose();
    s.rho_ch = drho_tot.topRightCorner(nc, nv);
    return s;
}

ElectronHoleState eh_rhs(const ElectronHoleState& state, const TwoSpeciesSystem& system,
                         const Vec3c& field)
{
    const Eigen::Index nc = system.conduction_levels();
    const Eigen::Index nh = system.valence_levels();
    if (state.rho_c.rows() != nc || state.rho_c.cols() != nc || state.rho_h.rows() != nh ||
        state.rho_h.cols() != nh || state.rho_ch.rows() != nc || state.rho_ch.cols() != nh)
        throw DimensionError("eh_rhs: state dimensions do not match the system");

    const RealVector& ec = system.conduction_energies;
    const RealVector eh = system.hole_energies();
    const Vec3c re = real_part(field);
    const Matrix rc = system.dipole_cc.contract(re);   // Re E . M^c
    const Matrix rh = system.dipole_hh().contract(re); // Re E . M^h, M^h = M^v
    const Matrix g = system.dipole_ch().contract(field); // E . M^ch, M^ch = M^cv
    const Matrix& c = state.rho_c;
    const Matrix& h = state.rho_h;
    const Matrix& ch = state.rho_ch;
    const Matrix hc = ch.adjoint();

    // Each entry below is i*hbar d/dt; the common factor is applied at the end.
    ElectronHoleState d;
    d.rho_c = Matrix::Zero(nc, nc);
    for (Eigen::Index i = 0; i < nc; ++i) {
        for (Eigen::Index j = 0; j < nc; ++j) {
            cplx s = (ec(i) - ec(j)) * c(i, j);
            for (Eigen::Index k = 0; k < nc; ++k)
                s += rc(i, k) * c(k, j) - rc(k, j) * c(i, k);
            for (Eigen::Index k = 0; k < nh; ++k)
                s += g(i, k) * hc(k, j) - std::conj(g(j, k)) * ch(i, k);
            d.rho_c(i, j) = s;
        }
    }

    d.rho_h = Matrix::Zero(nh, nh);
    for (Eigen::Index i = 0; i < nh; ++i) {
        for (Eigen::Index j = 0; j < nh; ++j) {
            cplx s = (eh(i) - eh(j)) * h(i, j);
            for (Eigen::Index k = 0; k < nh; ++k)
                s += rh(j, k) * h(i, k) - rh(k, i) * h(k, j);
            for (Eigen::Index k = 0; k < nc; ++k)
                s += g(k, i) * hc(j, k) - std::conj(g(k, j)) * ch(k, i);
            d.rho_h(i, j) = s;
        }
    }

    d.rho_ch = Matrix::Zero(nc, nh);
    for (Eigen::Index i = 0; i < nc; ++i) {
        for (Eigen::Index j = 0; j < nh; ++j) {
            cplx s = (ec(i) + eh(j)) * ch(i, j);
            for (Eigen::Index k = 0; k < nc; ++k)
                s += rc(i, k) * ch(k, j);
            for (Eigen::Index k = 0; k < nh; ++k)
                s -= rh(k, j) * ch(i, k);
            for (Eigen::Index k = 0; k < nh; ++k)
                s += g(i, k) * ((j == k ? 1.0 : 0.0) - h(j, k));
            for (Eigen::Index k = 0; k < nc; ++k)
                s -= g(k, j) * c(i, k);
            d.rho_ch(i, j) = s;
        }
    }

    const cplx factor = -I / system.hbar;
    d.rho_c *= factor;
    d.rho_h *= factor;
    d.rho_ch *= factor;
    return d;
}

// --- reduced model -------------------------------------------------------------

GhState& GhState::operator+=(const GhState& o)
{
    n_e += o.n_e;
    n_h += o.n_h;
    p += o.p;
    return *this;
}

GhState& GhState::operator*=(double s)
{
    n_e *= s;
    n_h *= s;
    p *= s;
    return *this;
}

GhState to_gh(const ElectronHoleState& state)
{
    GhState s;
    s.n_e = state.rho_c.diagonal().real();
    s.n_h = state.rho_h.diagonal().real();
    s.p = state.rho_ch.transpose();
    return s;
}

ElectronHoleState from_gh(const GhState& state)
{
    ElectronHoleState s;
    s.rho_c = state.n_e.cast<cplx>().asDiagonal();
    s.rho_h = state.n_h.cast<cplx>().asDiagonal();
    s.rho_ch = state.p.transpose();
    return s;
}

GhState gh_rhs(const GhState& state, const TwoSpeciesSystem& system, const Vec3c& field)
{
    const Eigen::Index nc = system.conduction_levels();
    const Eigen::Index nh = system.valence_levels();
    if (state.n_e.size() != nc || state.n_h.size() != nh || state.p.rows() != nh ||
        state.p.cols() != nc)
        throw DimensionError("gh_rhs: state dimensions do not match the system");

    const RealVector& ec = system.conduction_energies;
    const RealVector eh = system.hole_energies();
    const Vec3c re = real_part(field);
    const Matrix rc = system.dipole_cc.contract(re);
    const Matrix rh = system.dipole_hh().contract(re);
    const Matrix g = system.dipole_ch().contract(field);
    const Matrix& p = state.p; // p(j, i) = p_ji
    const cplx factor = -I / system.hbar;

    GhState d;
    d.n_e = RealVector::Zero(nc);
    for (Eigen::Index i = 0; i < nc; ++i) {
        cplx s = 0.0;
        for (Eigen::Index k = 0; k < nh; ++k)
            s += g(i, k) * std::conj(p(k, i)) - std::conj(g(i, k)) * p(k, i);
        d.n_e(i) = (factor * s).real();
    }

    d.n_h = RealVector::Zero(nh);
    for (Eigen::Index j = 0; j < nh; ++j) {
        cplx s = 0.0;
        for (Eigen::Index k = 0; k < nc; ++k)
            s += g(k, j) * std::conj(p(j, k)) - std::conj(g(k, j)) * p(j, k);
        d.n_h(j) = (factor * s).real();
    }

    d.p = Matrix::Zero(nh, nc);
    for (Eigen::Index j = 0; j < nh; ++j) {
        for (Eigen::Index i = 0; i < nc; ++i) {
            cplx s = (ec(i) + eh(j)) * p(j, i);
            for (Eigen::Index k = 0; k < nc; ++k)
                s += rc(i, k) * p(j, k);
            for (Eigen::Index k = 0; k < nh; ++k)
                s -= rh(k, j) * p(k, i);
            s += g(i, j) * (1.0 - state.n_h(j) - state.n_e(i));
            d.p(j, i) = factor * s;
        }
    }
    return d;
}

// --- helpers -----------------------------------------------------------------

double hermiticity_defect(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw DimensionError("hermiticity_defect: matrix is not square");
    if (m.size() == 0)
        return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void validate_density(const DensityMatrix& rho, const char* what)
{
    if (rho.rows() != rho.cols())
        throw ValidationError(std::string(what) + " is not square");
    const double herm = hermiticity_defect(rho);
    if (herm > 1e-13) {
        std::ostringstream os;
        os << what << " is not Hermitian (defect " << herm << ")";
        throw ValidationError(os.str());
    }
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const double pop = rho(i, i).real();
        if (pop < -1e-12 || pop > 1.0 + 1e-12) {
            std::ostringstream os;
            os << what << ": population " << i << " = " << pop << " is outside [0, 1]";
            throw ValidationError(os.str());
        }
    }
    const HermitianEigen eig = hermitian_eig(rho);
    if (eig.eigenvalues.size() > 0 && eig.eigenvalues(0) < -1e-12) {
        std::ostringstream os;
        os << what << " is not positive semidefinite (min eigenvalue " << eig.eigenvalues(0) << ")";
        throw ValidationError(os.str());
    }
}

} // namespace qbloch
