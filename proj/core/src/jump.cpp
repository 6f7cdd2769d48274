#include "bqscat/jump.hpp"

#include <cmath>

namespace bqscat {

namespace {

constexpr double kLocateTol = 1e-9;

/// Reflection-coefficient accessor. Domain checks are disabled because the
/// jump matrices are evaluated on the closures of the coefficient domains,
/// where the strict geometric membership tests can reject boundary points.
struct Cf {
    const SpectralCache& sc;
    cplx w = omega();
    cplx w2 = omega() * omega();

    cplx r1(cplx k) const { return sc.small(k, false).r1; }
    cplx rt1(cplx k) const { return sc.small(k, false).rt1; }
    cplx r2(cplx k) const { return sc.small(k, false).r2; }
    cplx rt2(cplx k) const { return sc.small(k, false).rt2; }
    cplx rh2(cplx k) const { return sc.small(k, false).rh2; }
    cplx rc2(cplx k) const { return sc.small(k, false).rc2; }
    cplx R1(cplx k) const { return sc.big(k, false).R1; }
    cplx R2(cplx k) const { return sc.big(k, false).R2; }
    cplx Rt2(cplx k) const { return sc.big(k, false).Rt2; }

    cplx h(cplx k) const { return -R1(w2 * k) * r2(1.0 / k); }
    cplx g(cplx k) const {
        return -r2(k) * (R1(1.0 / (w * k)) + R1(w2 * k) * rt2(1.0 / k));
    }
    cplx ht(cplx k) const { return R1(w2 * k) * rt2(1.0 / k); }
    cplx gt(cplx k) const {
        return rt2(k) * (R1(1.0 / (w * k)) + R1(w2 * k) * r2(1.0 / k));
    }

    cplx f1(cplx k) const {
        return 1.0 + r1(1.0 / (w2 * k)) * r2(1.0 / (w2 * k)) + r1(k) * r2(k);
    }
    cplx f2(cplx k) const {
        return 1.0 + rt1(1.0 / (w2 * k)) * rt2(1.0 / (w2 * k)) + rt1(k) * rt2(k);
    }
    cplx f3(cplx k) const {
        return 1.0 + rt1(1.0 / (w2 * k)) * rc2(1.0 / (w2 * k)) -
               rh2(k) * (r2(1.0 / k) + rt1(1.0 / (w2 * k)) * r2(w * k));
    }
    cplx f4(cplx k) const {
        return 1.0 + r1(1.0 / (w2 * k)) * rh2(1.0 / (w2 * k)) -
               rc2(k) * (rt2(1.0 / k) + r1(1.0 / (w2 * k)) * rt2(w * k));
    }
};

Complex3x3 m3(cplx a11, cplx a12, cplx a13, cplx a21, cplx a22, cplx a23, cplx a31,
              cplx a32, cplx a33) {
    Complex3x3 m;
    m(0, 0) = a11; m(0, 1) = a12; m(0, 2) = a13;
    m(1, 0) = a21; m(1, 1) = a22; m(1, 2) = a23;
    m(2, 0) = a31; m(2, 1) = a32; m(2, 2) = a33;
    return m;
}

/// Identity plus a single off-diagonal entry at (i,j), 1-based.
Complex3x3 elem(int i, int j, cplx val) {
    Complex3x3 m = Complex3x3::identity();
    m(i - 1, j - 1) = val;
    return m;
}

Complex3x3 vtilde_ray(const Cf& C, int n, cplx k) {
    const cplx w = C.w, w2 = C.w2;
    switch (n) {
    case 1:
        return m3(1.0 - C.r2(1.0 / k) * C.rt2(k), -C.r2(1.0 / k), 0.0,
                  C.rt2(k), 1.0, 0.0,
                  C.gt(k), -C.h(k), 1.0);
    case 2: return elem(3, 2, C.R1(1.0 / (w * k)));
    case 3: return elem(2, 1, -C.Rt2(k));
    case 4:
        return m3(1.0, 0.0, 0.0,
                  0.0, 1.0, -C.r1(w * k),
                  0.0, C.rt1(1.0 / (w * k)), 1.0 - C.r1(w * k) * C.rt1(1.0 / (w * k)));
    case 5: return elem(3, 1, C.R2(1.0 / (w2 * k)));
    case 6: return elem(2, 3, C.R1(w * k));
    case 7:
        return m3(1.0, 0.0, C.rt2(w2 * k),
                  -C.h(w2 * k), 1.0, C.gt(w2 * k),
                  -C.r2(1.0 / (w2 * k)), 0.0, 1.0 - C.r2(1.0 / (w2 * k)) * C.rt2(w2 * k));
    case 8: return elem(2, 1, C.R1(1.0 / k));
    case 9: return elem(1, 3, -C.Rt2(w2 * k));
    case 10:
        return m3(1.0, -C.r1(k), 0.0,
                  C.rt1(1.0 / k), 1.0 - C.r1(k) * C.rt1(1.0 / k), 0.0,
                  0.0, 0.0, 1.0);
    case 11: return elem(2, 3, C.R2(1.0 / (w * k)));
    case 12: return elem(1, 2, C.R1(k));
    case 13:
        return m3(1.0, C.gt(w * k), -C.h(w * k),
                  0.0, 1.0 - C.r2(1.0 / (w * k)) * C.rt2(w * k), -C.r2(1.0 / (w * k)),
                  0.0, C.rt2(w * k), 1.0);
    case 14: return elem(1, 3, C.R1(1.0 / (w2 * k)));
    case 15: return elem(3, 2, -C.Rt2(w * k));
    case 16:
        return m3(1.0 - C.r1(w2 * k) * C.rt1(1.0 / (w2 * k)), 0.0, C.rt1(1.0 / (w2 * k)),
                  0.0, 1.0, 0.0,
                  -C.r1(w2 * k), 0.0, 1.0);
    case 17: return elem(1, 2, C.R2(1.0 / k));
    case 18: return elem(3, 1, C.R1(w2 * k));
    }
    throw InvalidInput("ray index out of range");
}

Complex3x3 vtilde_segment(const Cf& C, int n, cplx k) {
    const cplx w = C.w, w2 = C.w2;
    switch (n) {
    case 1:
        return m3(1.0, -C.rt1(k), 0.0,
                  C.r1(1.0 / k), 1.0 - C.r1(1.0 / k) * C.rt1(k), 0.0,
                  0.0, 0.0, 1.0);
    case 2: return elem(2, 3, C.Rt2(1.0 / (w * k)));
    case 3: return elem(1, 2, -C.R1(k));
    case 4:
        return m3(1.0, C.g(w * k), -C.ht(w * k),
                  0.0, 1.0 - C.r2(w * k) * C.rt2(1.0 / (w * k)), -C.rt2(1.0 / (w * k)),
                  0.0, C.r2(w * k), 1.0);
    case 5: return elem(1, 3, -C.R1(1.0 / (w2 * k)));
    case 6: return elem(3, 2, -C.R2(w * k));
    case 7:
        return m3(1.0 - C.r1(1.0 / (w2 * k)) * C.rt1(w2 * k), 0.0, C.r1(1.0 / (w2 * k)),
                  0.0, 1.0, 0.0,
                  -C.rt1(w2 * k), 0.0, 1.0);
    case 8: return elem(1, 2, C.Rt2(1.0 / k));
    case 9: return elem(3, 1, -C.R1(w2 * k));
    case 10:
        return m3(1.0 - C.r2(k) * C.rt2(1.0 / k), -C.rt2(1.0 / k), 0.0,
                  C.r2(k), 1.0, 0.0,
                  C.g(k), -C.ht(k), 1.0);
    case 11: return elem(3, 2, -C.R1(1.0 / (w * k)));
    case 12: return elem(2, 1, -C.R2(k));
    case 13:
        return m3(1.0, 0.0, 0.0,
                  0.0, 1.0, -C.rt1(w * k),
                  0.0, C.r1(1.0 / (w * k)), 1.0 - C.r1(1.0 / (w * k)) * C.rt1(w * k));
    case 14: return elem(3, 1, C.Rt2(1.0 / (w2 * k)));
    case 15: return elem(2, 3, -C.R1(w * k));
    case 16:
        return m3(1.0, 0.0, C.r2(w2 * k),
                  -C.ht(w2 * k), 1.0, C.g(w2 * k),
                  -C.rt2(1.0 / (w2 * k)), 0.0, 1.0 - C.r2(w2 * k) * C.rt2(1.0 / (w2 * k)));
    case 17: return elem(2, 1, -C.R1(1.0 / k));
    case 18: return elem(1, 3, -C.R2(w2 * k));
    }
    throw InvalidInput("segment index out of range");
}

Complex3x3 vtilde_arc(const Cf& C, int n, cplx k) {
    const cplx w = C.w, w2 = C.w2;
    const cplx iwk = 1.0 / (w * k), iw2k = 1.0 / (w2 * k), ik = 1.0 / k;
    switch (n) {
    case 1:
        return m3(1.0, -C.rt1(k), C.rc2(w2 * k),
                  -C.rt2(k), 1.0 + C.rt1(k) * C.rt2(k),
                  C.rh2(iwk) - C.rc2(w2 * k) * C.rt2(k),
                  -C.rt2(iw2k) - C.r1(iwk) * C.rt2(k),
                  C.r1(iwk) + C.rt1(k) * (C.rt2(iw2k) + C.r1(iwk) * C.rt2(k)),
                  C.f4(w2 * k));
    case 2:
        return m3(1.0, -C.rt1(k), C.rt2(w2 * k),
                  -C.rt2(k), 1.0 + C.rt1(k) * C.rt2(k),
                  C.rt2(iwk) - C.rt2(w2 * k) * C.rt2(k),
                  -C.rt2(iw2k) - C.rt1(iwk) * C.rt2(k),
                  C.rt1(iwk) + C.rt1(k) * (C.rt2(iw2k) + C.rt1(iwk) * C.rt2(k)),
                  C.f2(w2 * k));
    case 3:
        return m3(1.0, -C.r1(k), C.rt2(w2 * k),
                  -C.rh2(k), 1.0 + C.r1(k) * C.rh2(k),
                  C.rt2(iwk) - C.rt2(w2 * k) * C.rh2(k),
                  -C.rc2(iw2k) - C.rt1(iwk) * C.rh2(k),
                  C.rt1(iwk) + C.r1(k) * (C.rc2(iw2k) + C.rt1(iwk) * C.rh2(k)),
                  C.f2(w2 * k));
    case 4:
        return m3(C.f3(k), -C.r2(ik) - C.rt1(iw2k) * C.r2(w * k),
                  C.r1(w * k) * C.r2(ik) +
                      C.rt1(iw2k) * (1.0 + C.r1(w * k) * C.r2(w * k)),
                  C.rh2(k), 1.0, -C.r1(w * k),
                  C.rc2(iw2k) - C.r2(w * k) * C.rh2(k), -C.r2(w * k),
                  1.0 + C.r1(w * k) * C.r2(w * k));
    case 5:
        return m3(C.f1(k), -C.r2(ik) - C.r1(iw2k) * C.r2(w * k),
                  C.r1(w * k) * C.r2(ik) +
                      C.r1(iw2k) * (1.0 + C.r1(w * k) * C.r2(w * k)),
                  C.r2(k), 1.0, -C.r1(w * k),
                  C.r2(iw2k) - C.r2(w * k) * C.r2(k), -C.r2(w * k),
                  1.0 + C.r1(w * k) * C.r2(w * k));
    case 6:
        return m3(C.f1(k), -C.rh2(ik) - C.r1(iw2k) * C.rc2(w * k),
                  C.rt1(w * k) * C.rh2(ik) +
                      C.r1(iw2k) * (1.0 + C.rt1(w * k) * C.rc2(w * k)),
                  C.r2(k), 1.0, -C.rt1(w * k),
                  C.r2(iw2k) - C.rc2(w * k) * C.r2(k), -C.rc2(w * k),
                  1.0 + C.rt1(w * k) * C.rc2(w * k));
    case 7:
        return m3(1.0 + C.rt1(w2 * k) * C.rt2(w2 * k),
                  C.rh2(ik) - C.rc2(w * k) * C.rt2(w2 * k), -C.rt2(w2 * k),
                  C.rt1(w2 * k) * C.rt2(iwk) +
                      C.r1(ik) * (1.0 + C.rt1(w2 * k) * C.rt2(w2 * k)),
                  C.f4(w * k), -C.rt2(iwk) - C.r1(ik) * C.rt2(w2 * k),
                  -C.rt1(w2 * k), C.rc2(w * k), 1.0);
    case 8:
        return m3(1.0 + C.rt1(w2 * k) * C.rt2(w2 * k),
                  C.rt2(ik) - C.rt2(w * k) * C.rt2(w2 * k), -C.rt2(w2 * k),
                  C.rt1(w2 * k) * C.rt2(iwk) +
                      C.rt1(ik) * (1.0 + C.rt1(w2 * k) * C.rt2(w2 * k)),
                  C.f2(w * k), -C.rt2(iwk) - C.rt1(ik) * C.rt2(w2 * k),
                  -C.rt1(w2 * k), C.rt2(w * k), 1.0);
    case 9:
        return m3(1.0 + C.r1(w2 * k) * C.rh2(w2 * k),
                  C.rt2(ik) - C.rt2(w * k) * C.rh2(w2 * k), -C.rh2(w2 * k),
                  C.r1(w2 * k) * C.rc2(iwk) +
                      C.rt1(ik) * (1.0 + C.r1(w2 * k) * C.rh2(w2 * k)),
                  C.f2(w * k), -C.rc2(iwk) - C.rt1(ik) * C.rh2(w2 * k),
                  -C.r1(w2 * k), C.rt2(w * k), 1.0);
    case 10:
        return m3(1.0, -C.r1(k), C.rh2(w2 * k),
                  -C.r2(k), 1.0 + C.r1(k) * C.r2(k),
                  C.rc2(iwk) - C.r2(k) * C.rh2(w2 * k),
                  -C.r2(iw2k) - C.rt1(iwk) * C.r2(k),
                  C.r1(k) * C.r2(iw2k) + C.rt1(iwk) * (1.0 + C.r1(k) * C.r2(k)),
                  C.f3(w2 * k));
    case 11:
        return m3(1.0, -C.r1(k), C.r2(w2 * k),
                  -C.r2(k), 1.0 + C.r1(k) * C.r2(k),
                  C.r2(iwk) - C.r2(k) * C.r2(w2 * k),
                  -C.r2(iw2k) - C.r1(iwk) * C.r2(k),
                  C.r1(k) * C.r2(iw2k) + C.r1(iwk) * (1.0 + C.r1(k) * C.r2(k)),
                  C.f1(w2 * k));
    case 12:
        return m3(1.0, -C.rt1(k), C.r2(w2 * k),
                  -C.rc2(k), 1.0 + C.rt1(k) * C.rc2(k),
                  C.r2(iwk) - C.rc2(k) * C.r2(w2 * k),
                  -C.rh2(iw2k) - C.r1(iwk) * C.rc2(k),
                  C.rt1(k) * C.rh2(iw2k) + C.r1(iwk) * (1.0 + C.rt1(k) * C.rc2(k)),
                  C.f1(w2 * k));
    case 13:
        return m3(C.f4(k), -C.rt2(ik) - C.r1(iw2k) * C.rt2(w * k),
                  C.rt1(w * k) * C.rt2(ik) +
                      C.r1(iw2k) * (1.0 + C.rt1(w * k) * C.rt2(w * k)),
                  C.rc2(k), 1.0, -C.rt1(w * k),
                  C.rh2(iw2k) - C.rc2(k) * C.rt2(w * k), -C.rt2(w * k),
                  1.0 + C.rt1(w * k) * C.rt2(w * k));
    case 14:
        return m3(C.f2(k), -C.rt2(ik) - C.rt1(iw2k) * C.rt2(w * k),
                  C.rt1(w * k) * C.rt2(ik) +
                      C.rt1(iw2k) * (1.0 + C.rt1(w * k) * C.rt2(w * k)),
                  C.rt2(k), 1.0, -C.rt1(w * k),
                  C.rt2(iw2k) - C.rt2(k) * C.rt2(w * k), -C.rt2(w * k),
                  1.0 + C.rt1(w * k) * C.rt2(w * k));
    case 15:
        return m3(C.f2(k), -C.rc2(ik) - C.rt1(iw2k) * C.rh2(w * k),
                  C.r1(w * k) * C.rc2(ik) +
                      C.rt1(iw2k) * (1.0 + C.r1(w * k) * C.rh2(w * k)),
                  C.rt2(k), 1.0, -C.r1(w * k),
                  C.rt2(iw2k) - C.rt2(k) * C.rh2(w * k), -C.rh2(w * k),
                  1.0 + C.r1(w * k) * C.rh2(w * k));
    case 16:
        return m3(1.0 + C.r1(w2 * k) * C.r2(w2 * k),
                  C.rc2(ik) - C.r2(w2 * k) * C.rh2(w * k), -C.r2(w2 * k),
                  C.rt1(ik) + C.r1(w2 * k) * (C.r2(iwk) + C.rt1(ik) * C.r2(w2 * k)),
                  C.f3(w * k), -C.r2(iwk) - C.rt1(ik) * C.r2(w2 * k),
                  -C.r1(w2 * k), C.rh2(w * k), 1.0);
    case 17:
        return m3(1.0 + C.r1(w2 * k) * C.r2(w2 * k),
                  C.r2(ik) - C.r2(w2 * k) * C.r2(w * k), -C.r2(w2 * k),
                  C.r1(ik) + C.r1(w2 * k) * (C.r2(iwk) + C.r1(ik) * C.r2(w2 * k)),
                  C.f1(w * k), -C.r2(iwk) - C.r1(ik) * C.r2(w2 * k),
                  -C.r1(w2 * k), C.r2(w * k), 1.0);
    case 18:
        return m3(1.0 + C.rt1(w2 * k) * C.rc2(w2 * k),
                  C.r2(ik) - C.rc2(w2 * k) * C.r2(w * k), -C.rc2(w2 * k),
                  C.r1(ik) + C.rt1(w2 * k) * (C.rh2(iwk) + C.r1(ik) * C.rc2(w2 * k)),
                  C.f1(w * k), -C.rh2(iwk) - C.r1(ik) * C.rc2(w2 * k),
                  -C.rt1(w2 * k), C.r2(w * k), 1.0);
    }
    throw InvalidInput("arc index out of range");
}

/// Quotient with the genericity guard shared by the T-matrix entries.
cplx quot(cplx num, cplx den) {
    if (std::abs(den) < 1e-10)
        throw AssumptionViolation("vanishing denominator in region triangular factor");
    return num / den;
}

/// T_n for n in 7..12 (1-based matrix indices in the comments below).
Complex3x3 t_base(const SpectralMatrices& m, int n) {
    const Complex3x3& s = m.s;
    const Complex3x3& sA = m.sA;
    const Complex3x3& SA = m.SA;
    const Complex3x3& Ss = m.Sinv_s;
    const Complex3x3& Ts = m.St_sA;
    Complex3x3 t = Complex3x3::identity();
    // Shared column-3 entries.
    cplx e13, e23;
    if (n == 7 || n == 8) {
        e13 = quot(Ts(2, 0), Ts(2, 2));
        e23 = quot(Ts(2, 1), Ts(2, 2));
    } else if (n == 9 || n == 10) {
        cplx den = sA(2, 2) * SA(1, 1) - sA(1, 2) * SA(2, 1);
        e13 = quot(sA(2, 0) * SA(1, 1) - sA(1, 0) * SA(2, 1), den);
        e23 = quot(sA(2, 1) * SA(1, 1) - sA(1, 1) * SA(2, 1), den);
    } else { // 11, 12
        e13 = quot(sA(2, 0), sA(2, 2));
        e23 = quot(sA(2, 1), sA(2, 2));
    }
    t(0, 2) = e13;
    t(1, 2) = e23;
    switch (n) {
    case 7: t(1, 0) = -quot(s(1, 0), s(1, 1)); break;
    case 8:
    case 9: t(1, 0) = -quot(Ss(1, 0), Ss(1, 1)); break;
    case 10:
    case 11: t(0, 1) = -quot(s(0, 1), s(0, 0)); break;
    case 12: t(0, 1) = -quot(Ss(0, 1), Ss(0, 0)); break;
    }
    return t;
}

Complex3x3 conj_by_A(const Complex3x3& m, int a) {
    const Complex3x3& A = constants().matA;
    Complex3x3 Ainv = transpose(A); // permutation matrix: inverse = transpose
    Complex3x3 r = m;
    for (int i = 0; i < a; ++i) r = A * r * Ainv;
    return r;
}

double angle_diff(double a, double b) {
    double d = std::remainder(a - b, 2.0 * M_PI);
    return std::abs(d);
}

} // namespace

const ContourPiece& locate_piece(cplx k) {
    double r = std::abs(k);
    if (r < kLocateTol) throw DomainViolation("contour point at the origin");
    double th = std::arg(k);
    const auto& angles = ray_angles();
    if (std::abs(r - 1.0) <= kLocateTol) {
        // Arc between consecutive ray angles.
        int n = sector_of(k);
        return piece(PieceKind::Arc, n);
    }
    for (int n = 1; n <= 18; ++n) {
        if (angle_diff(th, angles[n]) <= kLocateTol / std::max(r, 1.0))
            return piece(r < 1.0 ? PieceKind::Segment : PieceKind::Ray, n);
    }
    throw DomainViolation("point is not on the jump contour");
}

JumpHelpers JumpEvaluator::helpers(cplx k) const {
    Cf C{sc_};
    JumpHelpers out;
    out.g = C.g(k);
    out.h = C.h(k);
    out.gt = C.gt(k);
    out.ht = C.ht(k);
    out.f1 = C.f1(k);
    out.f2 = C.f2(k);
    out.f3 = C.f3(k);
    out.f4 = C.f4(k);
    return out;
}

HelperForms JumpEvaluator::helper_forms(cplx k) const {
    Cf C{sc_};
    const cplx w = C.w, w2 = C.w2;
    const cplx ik = 1.0 / k, iw2k = 1.0 / (w2 * k);
    HelperForms out;
    out.f1_a = C.f1(k);
    out.f1_b = 1.0 + C.r1(iw2k) * C.r2(iw2k) -
               C.r2(k) * (C.r2(ik) + C.r1(iw2k) * C.r2(w * k));
    out.f1_c = 1.0 + C.r1(iw2k) * C.r2(iw2k) -
               C.r2(k) * (C.rh2(ik) + C.r1(iw2k) * C.rc2(w * k));
    out.f2_a = C.f2(k);
    out.f2_b = 1.0 + C.rt1(iw2k) * C.rt2(iw2k) -
               C.rt2(k) * (C.rt2(ik) + C.rt1(iw2k) * C.rt2(w * k));
    out.f2_c = 1.0 + C.rt1(iw2k) * C.rt2(iw2k) -
               C.rt2(k) * (C.rc2(ik) + C.rt1(iw2k) * C.rh2(w * k));
    return out;
}

Complex3x3 JumpEvaluator::vtilde(const ContourPiece& pc, cplx k) const {
    Cf C{sc_};
    switch (pc.kind) {
    case PieceKind::Ray: return vtilde_ray(C, pc.n, k);
    case PieceKind::Segment: return vtilde_segment(C, pc.n, k);
    case PieceKind::Arc: return vtilde_arc(C, pc.n, k);
    }
    throw InvalidInput("unknown piece kind");
}

Complex3x3 JumpEvaluator::v_dressed(double x, double t, const ContourPiece& pc,
                                    cplx k) const {
    SpectralPoint p = make_point(k);
    Diag3 d;
    for (int j = 0; j < 3; ++j) d[j] = x * p.l[j] + t * p.z[j];
    return conj_exp(d, vtilde(pc, k));
}

JumpEvaluator::SymmResiduals JumpEvaluator::check_vsymm(double x, double t,
                                                        cplx k) const {
    const auto& C = constants();
    Complex3x3 vk = v_dressed(x, t, locate_piece(k), k);
    cplx kw = C.omega * k;
    Complex3x3 vwk = v_dressed(x, t, locate_piece(kw), kw);
    cplx kin = 1.0 / k;
    Complex3x3 vik = v_dressed(x, t, locate_piece(kin), kin);
    Complex3x3 Ainv = transpose(C.matA);
    SymmResiduals out;
    out.rot = max_abs(vk - C.matA * vwk * Ainv);
    out.inv = max_abs(vk - C.matB * inverse(vik) * C.matB);
    return out;
}

JumpEvaluator::RayFactorPair JumpEvaluator::t_ray1_reduced(cplx k) const {
    Cf C{sc_};
    const cplx w = C.w, w2 = C.w2;
    RayFactorPair out;
    out.t_minus = Complex3x3::identity();
    out.t_minus(0, 1) = C.r2(1.0 / k);
    out.t_minus(2, 0) = -C.rt1(w2 * k);
    out.t_minus(2, 1) = C.r2(w * k);
    out.t_plus = Complex3x3::identity();
    out.t_plus(1, 0) = C.rt2(k);
    out.t_plus(2, 0) = C.rt2(1.0 / (w2 * k));
    out.t_plus(2, 1) = -C.r1(1.0 / (w * k));
    return out;
}

Complex3x3 JumpEvaluator::t_matrix(cplx k) const {
    RegionId r = classify(k);
    if (r.on_boundary())
        throw DomainViolation("triangular factor requested on the contour");
    const cplx w = omega();
    if (r.is_D()) {
        for (int a = 0; a < 3; ++a) {
            int m = ((r.index - 1 + 6 * a) % 18) + 1;
            if (m >= 7 && m <= 12) {
                cplx kp = k;
                for (int i = 0; i < a; ++i) kp *= w;
                return conj_by_A(t_base(sc_.at_full(kp), m), a);
            }
        }
        throw InvalidInput("unreachable sector index");
    }
    // Inside the disk: reflect through the unit circle first.
    const Complex3x3& B = constants().matB;
    return B * t_matrix(1.0 / k) * B;
}

} // namespace bqscat
