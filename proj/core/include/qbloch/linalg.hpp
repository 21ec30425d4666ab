#pragma once

#include "qbloch/types.hpp"

namespace qbloch {

struct HermitianEigen {
    RealVector eigenvalues; // ascending
    Matrix vectors;         // unitary; column k pairs with eigenvalues(k)
};

/// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius norm is
/// below 1e-14 * ||H||_F, at most 30 sweeps. Rejects input whose Hermiticity
/// defect exceeds 1e-12 * max(1, ||H||_max).
HermitianEigen hermitian_eig(const Matrix& h);

/// U = exp(-i dt H / hbar) from the eigendecomposition of H.
Matrix unitary_propagator(const Matrix& h, double dt, double hbar);

/// (M + M^dagger) / 2.
inline Matrix hermitian_part(const Matrix& m)
{
    return 0.5 * (m + m.adjoint());
}

} // namespace qbloch
