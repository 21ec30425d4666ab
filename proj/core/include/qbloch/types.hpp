#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qbloch {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Complex 3-vector: field values and dipole moment entries.
using Vec3c = std::array<cplx, 3>;

inline constexpr cplx I{0.0, 1.0};

/// Bilinear contraction a·b = sum_k a_k b_k. Neither side is conjugated.
inline cplx dot(const Vec3c& a, const Vec3c& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Componentwise real part, kept complex so it can be contracted directly.
inline Vec3c real_part(const Vec3c& v)
{
    return {cplx(v[0].real()), cplx(v[1].real()), cplx(v[2].real())};
}

inline Vec3c conj(const Vec3c& v)
{
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid problem description or initial data.
class ValidationError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

} // namespace qbloch
