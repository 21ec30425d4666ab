#include "qbloch/random.hpp"

namespace qbloch::sampling {

namespace {

cplx normal_cplx(Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

Vec3c random_vec3(Rng& rng, double scale)
{
    Vec3c v;
    for (auto& x : v)
        x = scale * normal_cplx(rng);
    return v;
}

DipoleMatrix random_intra_band_dipole(Rng& rng, Eigen::Index n, double scale)
{
    DipoleMatrix m = DipoleMatrix::zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = k + 1; l < n; ++l) {
            const Vec3c v = random_vec3(rng, scale);
            m.set(k, l, v);
            m.set(l, k, conj(v));
        }
    }
    return m;
}

DipoleMatrix random_dipole(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale)
{
    DipoleMatrix m = DipoleMatrix::zero(rows, cols);
    for (Eigen::Index k = 0; k < rows; ++k)
        for (Eigen::Index l = 0; l < cols; ++l)
            m.set(k, l, random_vec3(rng, scale));
    return m;
}

OneSpeciesSystem random_one_species(Rng& rng, Eigen::Index n, double dipole_scale)
{
    OneSpeciesSystem s;
    s.energies.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        s.energies(i) = uniform(rng, 0.0, 2.0);
    s.dipole = random_intra_band_dipole(rng, n, dipole_scale);
    s.degeneracies.assign(static_cast<std::size_t>(n), 1);
    s.hbar = 1.0;
    return s;
}

TwoSpeciesSystem random_two_species(Rng& rng, Eigen::Index nc, Eigen::Index nv, double dipole_scale)
{
    TwoSpeciesSystem s;
    s.conduction_energies.resize(nc);
    for (Eigen::Index i = 0; i < nc; ++i)
        s.conduction_energies(i) = uniform(rng, 1.0, 3.0);
    s.valence_energies.resize(nv);
    for (Eigen::Index i = 0; i < nv; ++i)
        s.valence_energies(i) = uniform(rng, -1.0, 0.0);
    s.dipole_cc = random_intra_band_dipole(rng, nc, dipole_scale);
    s.dipole_vv = random_intra_band_dipole(rng, nv, dipole_scale);
    s.dipole_cv = random_dipole(rng, nc, nv, dipole_scale);
    s.hbar = 1.0;
    return s;
}

Matrix random_hermitian(Rng& rng, Eigen::Index n)
{
    Matrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            a(i, j) = normal_cplx(rng);
    return 0.5 * (a + a.adjoint());
}

Matrix random_unitary(Rng& rng, Eigen::Index n)
{
    Matrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            a(i, j) = normal_cplx(rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(n, n);
}

DensityMatrix random_density(Rng& rng, Eigen::Index n)
{
    const Matrix u = random_unitary(rng, n);
    RealVector p(n);
    for (Eigen::Index i = 0; i < n; ++i)
        p(i) = uniform(rng, 0.0, 1.0);
    const Matrix rho = u * p.cast<cplx>().asDiagonal() * u.adjoint();
    return 0.5 * (rho + rho.adjoint());
}

} // namespace qbloch::sampling
