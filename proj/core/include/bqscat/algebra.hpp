#pragma once

#include <array>
#include <complex>

#include "bqscat/errors.hpp"

namespace bqscat {

using cplx = std::complex<double>;

/// Dense 3x3 complex matrix, the universal value type of the toolkit.
struct Complex3x3 {
    std::array<cplx, 9> e{};

    constexpr cplx& operator()(int i, int j) { return e[3 * i + j]; }
    constexpr const cplx& operator()(int i, int j) const { return e[3 * i + j]; }

    static Complex3x3 identity();
    static Complex3x3 zero() { return Complex3x3{}; }
    static Complex3x3 diag(cplx a, cplx b, cplx c);

    Complex3x3& operator+=(const Complex3x3& o);
    Complex3x3& operator-=(const Complex3x3& o);
    Complex3x3& operator*=(cplx s);

    bool finite() const;
};

using Vec3 = std::array<cplx, 3>;
using Diag3 = std::array<cplx, 3>;

Complex3x3 operator+(Complex3x3 a, const Complex3x3& b);
Complex3x3 operator-(Complex3x3 a, const Complex3x3& b);
Complex3x3 operator*(cplx s, Complex3x3 a);

/// Standard matrix product.
Complex3x3 matmul(const Complex3x3& a, const Complex3x3& b);
Complex3x3 operator*(const Complex3x3& a, const Complex3x3& b);

/// Matrix-vector product (columns as Vec3).
Vec3 matvec(const Complex3x3& a, const Vec3& x);

cplx det(const Complex3x3& a);
Complex3x3 transpose(const Complex3x3& a);

/// Matrix of signed 2x2 minors; for det a = 1 it equals the inverse transpose.
Complex3x3 cofactor(const Complex3x3& a);

/// Max entry magnitude.
double max_abs(const Complex3x3& a);
/// Frobenius norm.
double frobenius(const Complex3x3& a);

/// Inverse via adjugate/determinant. Throws SingularMatrix when
/// |det a| <= singular_scale * max_abs(a)^3.
Complex3x3 inverse(const Complex3x3& a, double singular_scale = 1e-13);

/// e^{B-hat} A = e^B A e^{-B} for diagonal B = diag(d): entry (i,j) of the
/// result is exp(d_i - d_j) * a_ij. When |Re(d_i - d_j)| exceeds the cap the
/// exponent is clamped; the overflow flag is set when provided, otherwise
/// OverflowRisk is thrown.
Complex3x3 conj_exp(const Diag3& d, const Complex3x3& a, double exponent_cap = 700.0,
                    bool* overflow_risk = nullptr);

/// Structural constants: omega and the symmetry matrices.
struct StructuralConstants {
    cplx omega;       ///< primitive cube root of unity exp(2*pi*i/3)
    Complex3x3 matA;  ///< cyclic permutation matrix of order 3
    Complex3x3 matB;  ///< transposition of the first two indices
};

const StructuralConstants& constants();
inline cplx omega() { return constants().omega; }

} // namespace bqscat
