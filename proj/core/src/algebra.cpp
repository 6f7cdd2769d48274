#include "bqscat/algebra.hpp"

#include <cmath>

namespace bqscat {

Complex3x3 Complex3x3::identity() {
    Complex3x3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

Complex3x3 Complex3x3::diag(cplx a, cplx b, cplx c) {
    Complex3x3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

Complex3x3& Complex3x3::operator+=(const Complex3x3& o) {
    for (int i = 0; i < 9; ++i) e[i] += o.e[i];
    return *this;
}

Complex3x3& Complex3x3::operator-=(const Complex3x3& o) {
    for (int i = 0; i < 9; ++i) e[i] -= o.e[i];
    return *this;
}

Complex3x3& Complex3x3::operator*=(cplx s) {
    for (int i = 0; i < 9; ++i) e[i] *= s;
    return *this;
}

bool Complex3x3::finite() const {
    for (const auto& z : e)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Complex3x3 operator+(Complex3x3 a, const Complex3x3& b) { return a += b; }
Complex3x3 operator-(Complex3x3 a, const Complex3x3& b) { return a -= b; }
Complex3x3 operator*(cplx s, Complex3x3 a) { return a *= s; }

Complex3x3 matmul(const Complex3x3& a, const Complex3x3& b) {
    Complex3x3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return c;
}

Complex3x3 operator*(const Complex3x3& a, const Complex3x3& b) { return matmul(a, b); }

Vec3 matvec(const Complex3x3& a, const Vec3& x) {
    return {a(0, 0) * x[0] + a(0, 1) * x[1] + a(0, 2) * x[2],
            a(1, 0) * x[0] + a(1, 1) * x[1] + a(1, 2) * x[2],
            a(2, 0) * x[0] + a(2, 1) * x[1] + a(2, 2) * x[2]};
}

cplx det(const Complex3x3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Complex3x3 transpose(const Complex3x3& a) {
    Complex3x3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
    return t;
}

Complex3x3 cofactor(const Complex3x3& a) {
    Complex3x3 c;
    for (int i = 0; i < 3; ++i) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        for (int j = 0; j < 3; ++j) {
            const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            // Cyclic index choice absorbs the (-1)^{i+j} sign.
            c(i, j) = a(i1, j1) * a(i2, j2) - a(i1, j2) * a(i2, j1);
        }
    }
    return c;
}

double max_abs(const Complex3x3& a) {
    double m = 0.0;
    for (const auto& z : a.e) m = std::max(m, std::abs(z));
    return m;
}

double frobenius(const Complex3x3& a) {
    double s = 0.0;
    for (const auto& z : a.e) s += std::norm(z);
    return std::sqrt(s);
}

Complex3x3 inverse(const Complex3x3& a, double singular_scale) {
    const cplx d = det(a);
    const double scale = std::max(max_abs(a), 1.0);
    if (std::abs(d) <= singular_scale * scale * scale * scale)
        throw SingularMatrix("3x3 inverse: determinant below singular threshold");
    Complex3x3 adj = transpose(cofactor(a));
    adj *= 1.0 / d;
    return adj;
}

Complex3x3 conj_exp(const Diag3& d, const Complex3x3& a, double exponent_cap,
                    bool* overflow_risk) {
    Complex3x3 r;
    bool risk = false;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            cplx ex = d[i] - d[j];
            if (std::abs(ex.real()) > exponent_cap) {
                risk = true;
                ex = cplx(ex.real() > 0 ? exponent_cap : -exponent_cap, ex.imag());
            }
            r(i, j) = std::exp(ex) * a(i, j);
        }
    }
    if (risk) {
        if (overflow_risk)
            *overflow_risk = true;
        else
            throw OverflowRisk("conj_exp: exponent magnitude exceeds cap");
    }
    return r;
}

const StructuralConstants& constants() {
    static const StructuralConstants c = [] {
        StructuralConstants sc;
        sc.omega = std::polar(1.0, 2.0 * M_PI / 3.0);
        sc.matA = Complex3x3::zero();
        sc.matA(0, 2) = 1.0;
        sc.matA(1, 0) = 1.0;
        sc.matA(2, 1) = 1.0;
        sc.matB = Complex3x3::zero();
        sc.matB(0, 1) = 1.0;
        sc.matB(1, 0) = 1.0;
        sc.matB(2, 2) = 1.0;
        return sc;
    }();
    return c;
}

} // namespace bqscat
