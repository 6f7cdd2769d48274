#include "bqscat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bqscat {

namespace {

constexpr double kDenomThreshold = 1e-10;
constexpr double kGeomTol = 1e-9;

cplx quotient(cplx num, cplx den, const char* what) {
    if (std::abs(den) < kDenomThreshold)
        throw AssumptionViolation(std::string("vanishing denominator in ") + what);
    return num / den;
}

bool on_circle(cplx k) { return std::abs(std::abs(k) - 1.0) < kGeomTol; }
bool on_imag_axis(cplx k) { return std::abs(k.real()) < kGeomTol; }

// Closed angular sector test in degrees, handling wrap-around.
bool angle_in(cplx k, double lo_deg, double hi_deg) {
    double a = std::arg(k) * 180.0 / M_PI;
    for (double cand : {a - 360.0, a, a + 360.0})
        if (cand >= lo_deg - 1e-7 && cand <= hi_deg + 1e-7) return true;
    return false;
}

} // namespace

bool in_small_r1_domain(cplx k) {
    if (on_circle(k)) return true;
    if (!on_imag_axis(k)) return false;
    const double y = k.imag();
    return (y > kGeomTol && y < 1.0 + kGeomTol) || (y < -1.0 + kGeomTol);
}

bool in_small_r2_domain(cplx k) {
    if (on_circle(k)) return true;
    if (!on_imag_axis(k)) return false;
    const double y = k.imag();
    return (y > 1.0 - kGeomTol) || (y < kGeomTol && y > -1.0 - kGeomTol);
}

bool in_big_R1_domain(cplx k) {
    if (on_circle(k)) return true;
    const double r = std::abs(k);
    if (r >= 1.0) return angle_in(k, -90.0, -30.0);
    return angle_in(k, 90.0, 150.0);
}

bool in_big_R2_domain(cplx k) {
    if (on_circle(k)) return true;
    const double r = std::abs(k);
    if (r >= 1.0) return angle_in(k, 90.0, 150.0);
    return angle_in(k, -90.0, -30.0);
}

SpectralMatrices spectral_functions(const InitialData& init, const BoundaryData& bnd,
                                    cplx k, const SolverOptions& opt) {
    const SpectralPoint p = make_point(k);
    SpectralMatrices m;

    const EigenfunctionValue s_val = solve_mu3(init, p, 0.0, opt);
    const EigenfunctionValue sA_val = solve_mu3A(init, p, 0.0, opt);
    m.s = s_val.m;
    m.sA = sA_val.m;
    m.s_valid = s_val.column_valid;
    m.sA_valid = sA_val.column_valid;

    m.S = solve_mu1_boundary(bnd, p, 0.0, opt).m;
    m.SA = solve_mu1A_boundary(bnd, p, 0.0, opt).m;

    // S has unit determinant and S^A = (S^{-1})^T, so the stably integrated
    // adjoint matrix provides the inverse without cancellation-prone minors.
    m.Sinv_s = transpose(m.SA) * m.s;
    m.St_sA = transpose(m.S) * m.sA;
    return m;
}

SpectralMatrices spectral_functions_full(const InitialData& init,
                                         const BoundaryData& bnd, cplx k,
                                         const SolverOptions& opt,
                                         double exponent_budget) {
    const SpectralPoint p = make_point(k);

    // Largest exponential growth rate among column modes.
    double re_min = std::numeric_limits<double>::infinity(), re_max = -re_min;
    for (const cplx& l : p.l) {
        re_min = std::min(re_min, l.real());
        re_max = std::max(re_max, l.real());
    }
    const double rate = re_max - re_min;
    const double x_start =
        rate > 0 ? std::min(init.x_max(), exponent_budget / rate) : init.x_max();

    SolverOptions all = opt;
    all.skip_invalid_columns = false;
    SpectralMatrices m;
    m.s = solve_mu3(init.x_fields(), x_start, p, 0.0, all).m;
    m.sA = solve_mu3A(init.x_fields(), x_start, p, 0.0, all).m;
    m.S = solve_mu1_boundary(bnd, p, 0.0, all).m;
    m.SA = solve_mu1A_boundary(bnd, p, 0.0, all).m;
    m.Sinv_s = transpose(m.SA) * m.s;
    m.St_sA = transpose(m.S) * m.sA;
    if (!m.s.finite() || !m.sA.finite() || !m.Sinv_s.finite() || !m.St_sA.finite())
        throw OverflowRisk("compute-all spectral matrices exceeded double range");
    return m;
}

ReflectionSmall reflection_small(const SpectralMatrices& m, cplx k,
                                 bool check_domain) {
    const bool dom1 = in_small_r1_domain(k);
    const bool dom2 = in_small_r2_domain(k);
    if (check_domain && !dom1 && !dom2)
        throw DomainViolation("reflection_small: k outside both quotient domains");

    ReflectionSmall r{};
    if (dom1 || !check_domain) {
        r.r1 = quotient(m.s(0, 1), m.s(0, 0), "r1");
        r.rt1 = quotient(m.Sinv_s(0, 1), m.Sinv_s(0, 0), "rt1");
    }
    if (dom2 || !check_domain) {
        r.r2 = quotient(m.sA(0, 1), m.sA(0, 0), "r2");
        r.rt2 = quotient(m.St_sA(0, 1), m.St_sA(0, 0), "rt2");
        r.rh2 = quotient(m.sA(0, 1) * m.SA(2, 2) - m.sA(2, 1) * m.SA(0, 2),
                         m.sA(0, 0) * m.SA(2, 2) - m.sA(2, 0) * m.SA(0, 2), "rh2");
        r.rc2 = quotient(m.sA(0, 1) * m.SA(1, 1) - m.sA(1, 1) * m.SA(0, 1),
                         m.sA(0, 0) * m.SA(1, 1) - m.sA(1, 0) * m.SA(0, 1), "rc2");
    }
    return r;
}

ReflectionBig reflection_big(const SpectralMatrices& m, cplx k, bool check_domain) {
    const bool dom1 = in_big_R1_domain(k);
    const bool dom2 = in_big_R2_domain(k);
    if (check_domain && !dom1 && !dom2)
        throw DomainViolation("reflection_big: k outside both sector domains");

    ReflectionBig r{};
    if (dom1 || !check_domain) {
        r.R1 = quotient(m.sA(1, 2) * m.SA(2, 0) - m.sA(2, 2) * m.SA(1, 0),
                        m.s(0, 0) * m.Sinv_s(0, 0), "R1");
    }
    if (dom2 || !check_domain) {
        r.R2 = quotient(m.SA(0, 1) * m.s(2, 2),
                        m.sA(0, 0) *
                            (m.sA(0, 0) * m.SA(1, 1) - m.sA(1, 0) * m.SA(0, 1)),
                        "R2");
        r.Rt2 = quotient(m.S(1, 0) * m.Sinv_s(2, 2),
                         m.St_sA(0, 0) *
                             (m.sA(0, 0) * m.SA(2, 2) - m.sA(2, 0) * m.SA(0, 2)),
                         "Rt2");
    }
    return r;
}

SpectralCache::SpectralCache(InitialData init, BoundaryData bnd, SolverOptions opt)
    : init_(std::move(init)), bnd_(std::move(bnd)), opt_(opt) {}

const SpectralMatrices& SpectralCache::at(cplx k) const {
    const std::pair<double, double> key{k.real(), k.imag()};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    SpectralMatrices m = spectral_functions(init_, bnd_, k, opt_);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(key, std::move(m)).first->second;
}

const SpectralMatrices& SpectralCache::at_full(cplx k) const {
    const std::pair<double, double> key{k.real(), k.imag()};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = full_cache_.find(key);
        if (it != full_cache_.end()) return it->second;
    }
    SpectralMatrices m = spectral_functions_full(init_, bnd_, k, opt_);
    std::lock_guard<std::mutex> lock(mutex_);
    return full_cache_.emplace(key, std::move(m)).first->second;
}

ReflectionSmall SpectralCache::small(cplx k, bool check_domain) const {
    return reflection_small(at(k), k, check_domain);
}

ReflectionBig SpectralCache::big(cplx k, bool check_domain) const {
    return reflection_big(at(k), k, check_domain);
}

GlobalRelationResidual global_relation_residual(const InitialData& init,
                                                const BoundaryData& bnd,
                                                const FullFieldGrid& grid, cplx k,
                                                const SolverOptions& opt) {
    const SpectralPoint p = make_point(k);
    const SpectralMatrices m = spectral_functions(init, bnd, k, opt);
    const double T = grid.T();

    const EigenfunctionValue mu3_T = solve_mu3(grid.x_fields(T), grid.x_max(), p, 0.0, opt);
    const EigenfunctionValue mu3A_T =
        solve_mu3A(grid.x_fields(T), grid.x_max(), p, 0.0, opt);

    Diag3 tz = p.calZ();
    Diag3 neg_tz;
    for (int i = 0; i < 3; ++i) {
        tz[i] *= T;
        neg_tz[i] = -tz[i];
    }
    bool overflow = false;
    const Complex3x3 rhs_direct = conj_exp(neg_tz, mu3_T.m, 700.0, &overflow);
    const Complex3x3 rhs_adjoint = conj_exp(tz, mu3A_T.m, 700.0, &overflow);
    if (overflow)
        throw OverflowRisk("global_relation_residual: exponent cap exceeded");

    GlobalRelationResidual res;
    for (int j = 0; j < 3; ++j) {
        if (m.s_valid[j])
            for (int i = 0; i < 3; ++i)
                res.direct = std::max(res.direct,
                                      std::abs(m.Sinv_s(i, j) - rhs_direct(i, j)));
        if (m.sA_valid[j])
            for (int i = 0; i < 3; ++i)
                res.adjoint = std::max(res.adjoint,
                                       std::abs(m.St_sA(i, j) - rhs_adjoint(i, j)));
    }
    return res;
}

double CircleRelationResiduals::max() const {
    return *std::max_element(residual.begin(), residual.end());
}

CircleRelationResiduals unit_circle_relations(const SpectralCache& sc, cplx k) {
    const cplx w = omega();
    auto S = [&sc](cplx kk) { return sc.small(kk, false); };
    auto B = [&sc](cplx kk) { return sc.big(kk, false); };

    const ReflectionSmall at_k = S(k);
    const ReflectionSmall at_wk = S(w * k);
    const ReflectionSmall at_w2k = S(w * w * k);
    const ReflectionSmall at_inv = S(1.0 / k);
    const ReflectionSmall at_invw = S(1.0 / (w * k));
    const ReflectionSmall at_invw2 = S(1.0 / (w * w * k));
    const ReflectionBig big_k = B(k);

    CircleRelationResiduals out;
    out.residual[0] = std::abs(at_invw.r1 + at_wk.r2 + at_w2k.r1 * at_inv.r2);
    out.residual[1] = std::abs(at_invw.rt1 + at_wk.rt2 + at_w2k.rt1 * at_inv.rt2);
    out.residual[2] = std::abs(at_k.r2 - at_k.rh2 +
                               at_wk.r1 * (at_invw2.r2 - at_invw2.rc2));
    out.residual[3] = std::abs(at_k.rt2 - at_k.rc2 +
                               at_wk.rt1 * (at_invw2.rt2 - at_invw2.rh2));
    out.residual[4] = std::abs(big_k.R1 - (at_k.r1 - at_k.rt1));
    out.residual[5] = std::abs(big_k.R2 - (at_k.r2 - at_k.rc2));
    out.residual[6] = std::abs(big_k.Rt2 - (at_k.rt2 - at_k.rh2));
    // Rewritten quotient form of the first relation.
    out.residual[7] = std::abs(at_k.r2 * (1.0 - at_wk.r1 * at_invw.r1) -
                               (at_wk.r1 * at_w2k.r1 - at_inv.r1));
    return out;
}

AssumptionReport check_assumptions(const SpectralCache& sc, int samples_per_set) {
    AssumptionReport rep;
    const double inf = std::numeric_limits<double>::infinity();
    rep.min_abs_s11 = rep.min_abs_Sinv_s_11 = rep.min_abs_sA11 = rep.min_abs_sA_comb =
        inf;

    // Sample sets: sectors 13..15 outside / 4..6 inside the disk plus the
    // circle (where s11 is defined), and the mirrored sets for s^A.
    auto away = [](cplx k) {
        return dist_to_degenerate(k) > kExclusionRadius &&
               std::abs(k - cplx(0, 1)) > kExclusionRadius &&
               std::abs(k + cplx(0, 1)) > kExclusionRadius;
    };
    std::vector<cplx> set_s, set_sA, set_circle;
    for (int i = 0; i < samples_per_set; ++i) {
        const double f = (i + 0.5) / samples_per_set;
        // outside-disk fan for s (angles -30..30 degrees), radius 1.15..4
        const double a1 = (-30.0 + 60.0 * f) * M_PI / 180.0;
        set_s.push_back(std::polar(1.15 + 2.85 * f, a1));
        // inside-disk fan for s (angles 150..210 degrees)
        const double a2 = (150.0 + 60.0 * f) * M_PI / 180.0;
        set_s.push_back(std::polar(0.15 + 0.7 * f, a2));
        // mirrored fans for s^A
        set_sA.push_back(std::polar(1.15 + 2.85 * f, a2));
        set_sA.push_back(std::polar(0.15 + 0.7 * f, a1));
        set_circle.push_back(std::polar(1.0, 2.0 * M_PI * f));
    }
    for (cplx k : set_s) {
        if (!away(k)) continue;
        const SpectralMatrices& m = sc.at(k);
        rep.min_abs_s11 = std::min(rep.min_abs_s11, std::abs(m.s(0, 0)));
        rep.min_abs_Sinv_s_11 = std::min(rep.min_abs_Sinv_s_11,
                                         std::abs(m.Sinv_s(0, 0)));
    }
    for (cplx k : set_sA) {
        if (!away(k)) continue;
        const SpectralMatrices& m = sc.at(k);
        rep.min_abs_sA11 = std::min(rep.min_abs_sA11, std::abs(m.sA(0, 0)));
    }
    for (cplx k : set_circle) {
        if (!away(k)) continue;
        const SpectralMatrices& m = sc.at(k);
        rep.min_abs_s11 = std::min(rep.min_abs_s11, std::abs(m.s(0, 0)));
        rep.min_abs_sA11 = std::min(rep.min_abs_sA11, std::abs(m.sA(0, 0)));
        rep.min_abs_sA_comb =
            std::min(rep.min_abs_sA_comb,
                     std::abs(m.sA(0, 0) * m.SA(1, 1) - m.sA(1, 0) * m.SA(0, 1)));
    }
    rep.solitonless = rep.min_abs_s11 > kDenomThreshold &&
                      rep.min_abs_Sinv_s_11 > kDenomThreshold &&
                      rep.min_abs_sA11 > kDenomThreshold &&
                      rep.min_abs_sA_comb > kDenomThreshold;

    // Endpoint limits at k* = +1, -1 by Richardson extrapolation along the
    // circle.  The quotients are smooth across k* on the circle, so averaging
    // the two approach directions cancels every odd order in the distance;
    // two Richardson steps on the even average at h, h/2, h/4 then remove
    // the h^2 and h^4 terms.  The one-sided error has an O(1) linear
    // coefficient set by the inverse width of the pole-dominated layer, so
    // the symmetric scheme gains several orders of accuracy over a one-sided
    // ladder at the same closest distance.
    const double h = 2.5e-2;
    bool generic = true;
    for (int side = 0; side < 2; ++side) {
        const double base = (side == 0) ? 0.0 : M_PI;
        const double kstar = (side == 0) ? 1.0 : -1.0;
        std::array<ReflectionSmall, 3> even;
        for (int q = 0; q < 3; ++q) {
            const double d = h / (1 << q);
            const ReflectionSmall p = sc.small(std::polar(1.0, base + d), false);
            const ReflectionSmall m = sc.small(std::polar(1.0, base - d), false);
            even[q].r1 = 0.5 * (p.r1 + m.r1);
            even[q].rt1 = 0.5 * (p.rt1 + m.rt1);
            even[q].r2 = 0.5 * (p.r2 + m.r2);
            even[q].rt2 = 0.5 * (p.rt2 + m.rt2);
            even[q].rh2 = 0.5 * (p.rh2 + m.rh2);
            even[q].rc2 = 0.5 * (p.rc2 + m.rc2);
        }
        auto extrap = [](cplx a, cplx b, cplx c) {
            const cplx r1 = (4.0 * b - a) / 3.0;
            const cplx r2 = (4.0 * c - b) / 3.0;
            return (16.0 * r2 - r1) / 15.0;
        };
        rep.r1_at[side] = extrap(even[0].r1, even[1].r1, even[2].r1);
        rep.rt1_at[side] = extrap(even[0].rt1, even[1].rt1, even[2].rt1);
        rep.r2_at[side] = extrap(even[0].r2, even[1].r2, even[2].r2);
        rep.rt2_at[side] = extrap(even[0].rt2, even[1].rt2, even[2].rt2);
        rep.rh2_at[side] = extrap(even[0].rh2, even[1].rh2, even[2].rh2);
        rep.rc2_at[side] = extrap(even[0].rc2, even[1].rc2, even[2].rc2);
        const cplx kf = std::polar(1.0, base + h / 4);
        rep.pole_scale_s11[side] = std::abs((kf - kstar) * sc.at(kf).s(0, 0));
        if (rep.pole_scale_s11[side] < 1e-8) generic = false;
        if (std::abs(rep.r1_at[side] - 1.0) > 1e-2) generic = false;
        if (std::abs(rep.r2_at[side] + 1.0) > 1e-2) generic = false;
    }
    rep.generic = generic;
    return rep;
}

namespace {

// Complex least squares c = argmin sum_i |w_i - sum_r c_r b_{ir}|^2 via the
// normal equations (basis size <= 8); returns the constant term and the max
// pointwise misfit of the fitted model.
std::pair<cplx, double> fit_constant(const std::vector<std::array<cplx, 8>>& basis,
                                     int m, const std::vector<cplx>& w) {
    const int n = static_cast<int>(w.size());
    cplx A[8][8] = {}, b[8] = {};
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < m; ++r) {
            b[r] += std::conj(basis[i][r]) * w[i];
            for (int c = 0; c < m; ++c) A[r][c] += std::conj(basis[i][r]) * basis[i][c];
        }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        for (int c = 0; c < m; ++c) std::swap(A[col][c], A[piv][c]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < m; ++r) {
            const cplx f = A[r][col] / A[col][col];
            for (int c = col; c < m; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    cplx coef[8];
    for (int r = m - 1; r >= 0; --r) {
        cplx acc = b[r];
        for (int c = r + 1; c < m; ++c) acc -= A[r][c] * coef[c];
        coef[r] = acc / A[r][r];
    }
    double mis = 0.0;
    for (int i = 0; i < n; ++i) {
        cplx pred = 0.0;
        for (int r = 0; r < m; ++r) pred += coef[r] * basis[i][r];
        mis = std::max(mis, std::abs(pred - w[i]));
    }
    return {coef[0], mis};
}

} // namespace

ReflectionLimitFits reflection_limit_fits(const SpectralCache& sc, int n_points) {
    if (n_points < 10) throw InvalidInput("reflection_limit_fits: need >= 10 points");
    const double T = sc.boundary().T();
    ReflectionLimitFits out;

    // One fit: sample |k| geometrically, evaluate the rescaled coefficient,
    // and fit against {1, s, s^2, s^3} plus (for the boundary-made
    // coefficients) the oscillatory endpoint pair e^{+-i (r^-2 + r^2) T/4}.
    auto run = [&](double ang, bool small_k, bool oscillatory, auto val) {
        std::vector<std::array<cplx, 8>> basis;
        std::vector<cplx> wv;
        for (int i = 0; i < n_points; ++i) {
            const double f = i / (n_points - 1.0);
            const double r = small_k ? 0.04 * std::pow(5.0, f) : 8.0 * std::pow(4.0, f);
            const cplx k = std::polar(r, ang);
            const double s = small_k ? r / 0.2 : 8.0 / r;
            std::array<cplx, 8> row{};
            row[0] = 1.0;
            row[1] = s;
            row[2] = s * s;
            row[3] = s * s * s;
            if (oscillatory) {
                const double phi = (1.0 / (r * r) + r * r) * T / 4.0;
                row[4] = std::polar(1.0, phi);
                row[5] = s * row[4];
                row[6] = std::polar(1.0, -phi);
                row[7] = s * row[6];
            }
            basis.push_back(row);
            wv.push_back(val(sc.at(k), k));
        }
        auto [c0, mis] = fit_constant(basis, oscillatory ? 8 : 4, wv);
        out.misfit = std::max(out.misfit, mis);
        return c0;
    };

    out.k2_r1 = run(-M_PI / 2, false, false, [](const SpectralMatrices& m, cplx k) {
        return k * k * m.s(0, 1) / m.s(0, 0);
    });
    out.r2_over_k2 = run(-M_PI / 2, true, false, [](const SpectralMatrices& m, cplx k) {
        return m.sA(0, 1) / m.sA(0, 0) / (k * k);
    });
    out.R1_over_k2 = run(3 * M_PI / 4, true, true, [](const SpectralMatrices& m, cplx k) {
        return (m.sA(1, 2) * m.SA(2, 0) - m.sA(2, 2) * m.SA(1, 0)) /
               (m.s(0, 0) * m.Sinv_s(0, 0)) / (k * k);
    });
    out.R2_over_k2 = run(-M_PI / 4, true, true, [](const SpectralMatrices& m, cplx k) {
        return (m.SA(0, 1) * m.s(2, 2)) /
               (m.sA(0, 0) * (m.sA(0, 0) * m.SA(1, 1) - m.sA(1, 0) * m.SA(0, 1))) /
               (k * k);
    });
    out.k2_Rt2 = run(3 * M_PI / 4, false, true, [](const SpectralMatrices& m, cplx k) {
        return k * k * (m.S(1, 0) * m.Sinv_s(2, 2)) /
               (m.St_sA(0, 0) * (m.sA(0, 0) * m.SA(2, 2) - m.sA(2, 0) * m.SA(0, 2)));
    });
    return out;
}

} // namespace bqscat
