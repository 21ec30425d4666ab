#include "qbloch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace qbloch {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kOffDiagonalThreshold = 1e-14;
constexpr int kMaxSweeps = 30;

double off_diagonal_norm(const Matrix& a)
{
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j)
                s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Zeroes a(p,q) with J = P R, where P = diag(1, e^{-i phi}) makes the (p,q)
// entry real and R is the real symmetric Jacobi rotation. A <- J^+ A J.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q)
{
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0)
        return;
    const cplx phase = apq / mag; // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p,q) plane.
    const cplx jpp = c;
    const cplx jpq = s;
    const cplx jqp = -s * std::conj(phase);
    const cplx jqq = c * std::conj(phase);

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) { // A <- A J
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (Eigen::Index k = 0; k < n; ++k) { // A <- J^+ A
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (Eigen::Index k = 0; k < n; ++k) { // V <- V J
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

} // namespace

HermitianEigen hermitian_eig(const Matrix& h)
{
    if (h.rows() != h.cols())
        throw DimensionError("hermitian_eig: matrix is not square");
    const Eigen::Index n = h.rows();
    if (n == 0)
        return {RealVector(0), Matrix(0, 0)};

    const double scale = h.cwiseAbs().maxCoeff();
    const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (defect > kHermitianTolerance * std::max(1.0, scale)) {
        std::ostringstream os;
        os << "hermitian_eig: input is not Hermitian (defect " << defect << ")";
        throw ValidationError(os.str());
    }

    Matrix a = hermitian_part(h);
    Matrix v = Matrix::Identity(n, n);
    const double threshold = kOffDiagonalThreshold * a.norm();

    bool converged = off_diagonal_norm(a) <= threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                rotate(a, v, p, q);
        converged = off_diagonal_norm(a) <= threshold;
    }
    if (!converged)
        throw Error("hermitian_eig: Jacobi sweeps did not converge");

    // One Newton-Schulz step towards the nearest unitary.
    v = 0.5 * v * (3.0 * Matrix::Identity(n, n) - v.adjoint() * v);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() < a(y, y).real();
    });

    HermitianEigen out{RealVector(n), Matrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = a(src, src).real();
        out.vectors.col(k) = v.col(src);
    }
    return out;
}

Matrix unitary_propagator(const Matrix& h, double dt, double hbar)
{
    const HermitianEigen eig = hermitian_eig(h);
    ComplexVector phases(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases(k) = std::exp(-I * (dt * eig.eigenvalues(k) / hbar));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

} // namespace qbloch
