#include "qbloch/linalg.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "qbloch/random.hpp"

using namespace qbloch;

namespace {

double max_abs(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace

TEST(HermitianEig, DiagonalInputIsSortedPermutation)
{
    const RealVector d{{2.0, -1.0, 0.5}};
    const auto e = hermitian_eig(d.cast<cplx>().asDiagonal());
    EXPECT_EQ(e.eigenvalues, (RealVector{{-1.0, 0.5, 2.0}}));
    for (Eigen::Index k = 0; k < 3; ++k)
        EXPECT_EQ(e.vectors.col(k).cwiseAbs().sum(), 1.0);
}

TEST(HermitianEig, PauliX)
{
    Matrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const auto e = hermitian_eig(x);
    EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-15);
    EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
}

TEST(HermitianEig, ComplexPauliY)
{
    Matrix y(2, 2);
    y << 0.0, -I, I, 0.0;
    const auto e = hermitian_eig(y);
    EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-15);
    EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
    EXPECT_LT(max_abs(y * e.vectors - e.vectors * e.eigenvalues.cast<cplx>().asDiagonal()), 1e-15);
}

TEST(HermitianEig, RandomReconstructionAndUnitarity)
{
    auto rng = sampling::trial_rng(1, 0);
    for (int t = 0; t < 50; ++t) {
        const Eigen::Index n = 1 + t % 8;
        const Matrix h = sampling::random_hermitian(rng, n);
        const auto e = hermitian_eig(h);
        const Matrix& u = e.vectors;
        const double scale = max_abs(h);
        EXPECT_LE(max_abs(h * u - u * e.eigenvalues.cast<cplx>().asDiagonal()), 1e-11 * scale);
        EXPECT_LE(max_abs(u.adjoint() * u - Matrix::Identity(n, n)), 1e-12);
        EXPECT_LE(max_abs(u * e.eigenvalues.cast<cplx>().asDiagonal() * u.adjoint() - h), 1e-11 * scale);
        for (Eigen::Index k = 1; k < n; ++k)
            EXPECT_LE(e.eigenvalues(k - 1), e.eigenvalues(k));
    }
}

TEST(HermitianEig, AgreesWithLapackStyleSolver)
{
    auto rng = sampling::trial_rng(2, 0);
    const Matrix h = sampling::random_hermitian(rng, 6);
    const Eigen::SelfAdjointEigenSolver<Matrix> ref(h);
    const auto e = hermitian_eig(h);
    EXPECT_LT((e.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HermitianEig, DegenerateSpectrum)
{
    auto rng = sampling::trial_rng(3, 0);
    const Matrix u = sampling::random_unitary(rng, 5);
    const RealVector d{{1.0, 1.0, 1.0, -2.0, -2.0}};
    const Matrix h = hermitian_part(u * d.cast<cplx>().asDiagonal() * u.adjoint());
    const auto e = hermitian_eig(h);
    EXPECT_LT((e.eigenvalues - RealVector{{-2.0, -2.0, 1.0, 1.0, 1.0}}).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LE(max_abs(e.vectors.adjoint() * e.vectors - Matrix::Identity(5, 5)), 1e-12);
}

TEST(HermitianEig, ZeroAndEmpty)
{
    const auto z = hermitian_eig(Matrix::Zero(3, 3));
    EXPECT_EQ(z.eigenvalues, RealVector::Zero(3));
    EXPECT_EQ(z.vectors, Matrix::Identity(3, 3));
    EXPECT_EQ(hermitian_eig(Matrix(0, 0)).eigenvalues.size(), 0);
}

TEST(HermitianEig, RejectsNonHermitian)
{
    Matrix a(2, 2);
    a << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(hermitian_eig(a), ValidationError);
    EXPECT_THROW(hermitian_eig(Matrix::Zero(2, 3)), DimensionError);
}

TEST(UnitaryPropagator, IsUnitary)
{
    auto rng = sampling::trial_rng(4, 0);
    const Matrix h = sampling::random_hermitian(rng, 5);
    const Matrix u = unitary_propagator(h, 0.37, 0.8);
    EXPECT_LE(max_abs(u.adjoint() * u - Matrix::Identity(5, 5)), 1e-13);
}
