#include "bqscat/fields.hpp"

#include <cmath>
#include <mutex>

namespace bqscat {

namespace {
const double kSqrt3 = std::sqrt(3.0);

std::vector<double> derivative_table(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    if (x.size() >= 5) {
        const double h = x[1] - x[0];
        bool uniform = true;
        for (size_t i = 1; i + 1 < x.size(); ++i)
            if (std::abs((x[i + 1] - x[i]) - h) > 1e-12 * std::max(1.0, h)) {
                uniform = false;
                break;
            }
        if (uniform) return fd_derivative(y, h);
    }
    CubicSpline s(x, y);
    std::vector<double> d(x.size());
    for (size_t i = 0; i < x.size(); ++i) d[i] = s.derivative(x[i]);
    return d;
}

} // namespace

XFieldFn InitialData::x_fields() const {
    struct Splines {
        CubicSpline u, ux, v;
    };
    auto sp = std::make_shared<Splines>(Splines{CubicSpline(grid_x, u0),
                                                CubicSpline(grid_x, u0_x),
                                                CubicSpline(grid_x, v0)});
    const double xm = x_max();
    return [sp, xm](double x) {
        if (x >= xm) return XFieldValues{};
        return XFieldValues{(*sp).u(x), (*sp).ux(x), (*sp).v(x)};
    };
}

double InitialData::tail_magnitude() const {
    return std::max(std::abs(u0.back()), std::abs(u1.back()));
}

TFieldFn BoundaryData::t_fields() const {
    struct Splines {
        CubicSpline u, ux, uxx, v, vx;
    };
    auto sp = std::make_shared<Splines>(Splines{
        CubicSpline(grid_t, ut0), CubicSpline(grid_t, ut1), CubicSpline(grid_t, ut2),
        CubicSpline(grid_t, vt0), CubicSpline(grid_t, vx0)});
    return [sp](double t) {
        return TFieldValues{(*sp).u(t), (*sp).ux(t), (*sp).uxx(t), (*sp).v(t),
                            (*sp).vx(t)};
    };
}

std::shared_ptr<const FullFieldGrid::Slice> FullFieldGrid::slice(double t) const {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    auto it = slice_cache_.find(t);
    if (it != slice_cache_.end()) return it->second;

    const size_t n = nx();
    std::vector<double> su(n), sux(n), sv(n);
    if (nt() == 1 || t <= grid_t.front()) {
        for (size_t ix = 0; ix < n; ++ix) {
            su[ix] = at(u, ix, 0);
            sux[ix] = at(u_x, ix, 0);
            sv[ix] = at(v, ix, 0);
        }
    } else {
        for (size_t ix = 0; ix < n; ++ix) {
            std::vector<double> cu(grid_t.size()), cux(grid_t.size()), cv(grid_t.size());
            for (size_t jt = 0; jt < grid_t.size(); ++jt) {
                cu[jt] = at(u, ix, jt);
                cux[jt] = at(u_x, ix, jt);
                cv[jt] = at(v, ix, jt);
            }
            su[ix] = CubicSpline(grid_t, cu)(t);
            sux[ix] = CubicSpline(grid_t, cux)(t);
            sv[ix] = CubicSpline(grid_t, cv)(t);
        }
    }
    auto sl = std::make_shared<Slice>(Slice{CubicSpline(grid_x, su),
                                            CubicSpline(grid_x, sux),
                                            CubicSpline(grid_x, sv)});
    slice_cache_[t] = sl;
    return sl;
}

XFieldFn FullFieldGrid::x_fields(double t) const {
    auto sl = slice(t);
    const double xm = x_max();
    return [sl, xm](double x) {
        if (x >= xm) return XFieldValues{};
        return XFieldValues{sl->u(x), sl->u_x(x), sl->v(x)};
    };
}

InitialData FullFieldGrid::initial_trace() const {
    InitialData d;
    d.grid_x = grid_x;
    const size_t n = nx();
    d.u0.resize(n);
    d.u1.resize(n);
    d.v0.resize(n);
    d.u0_x.resize(n);
    for (size_t ix = 0; ix < n; ++ix) {
        d.u0[ix] = at(u, ix, 0);
        d.u1[ix] = at(u_t, ix, 0);
        d.v0[ix] = at(v, ix, 0);
        d.u0_x[ix] = at(u_x, ix, 0);
    }
    return d;
}

BoundaryData FullFieldGrid::boundary_trace() const {
    BoundaryData b;
    b.grid_t = grid_t;
    const size_t m = nt();
    b.ut0.resize(m);
    b.ut1.resize(m);
    b.ut2.resize(m);
    b.ut3.resize(m);
    b.vt0.resize(m);
    b.vx0.resize(m);
    // u_xxx at x = 0 from a one-sided 4th-order difference of u_xx.
    const double hx = grid_x[1] - grid_x[0];
    for (size_t it = 0; it < m; ++it) {
        b.ut0[it] = at(u, 0, it);
        b.ut1[it] = at(u_x, 0, it);
        b.ut2[it] = at(u_xx, 0, it);
        b.ut3[it] = (-25.0 * at(u_xx, 0, it) + 48.0 * at(u_xx, 1, it) -
                     36.0 * at(u_xx, 2, it) + 16.0 * at(u_xx, 3, it) -
                     3.0 * at(u_xx, 4, it)) / (12.0 * hx);
        b.vt0[it] = at(v, 0, it);
        b.vx0[it] = at(v_x, 0, it);
    }
    return b;
}

InitialData make_initial_data(std::vector<double> grid_x, std::vector<double> u0,
                              std::vector<double> u1, double decay_tol) {
    InitialData d;
    d.grid_x = std::move(grid_x);
    d.u0 = std::move(u0);
    d.u1 = std::move(u1);
    d.decay_tol = decay_tol;
    if (d.grid_x.size() != d.u0.size() || d.grid_x.size() != d.u1.size())
        throw InvalidInput("make_initial_data: array sizes disagree");
    if (d.tail_magnitude() > decay_tol)
        throw NonDecayingInput("make_initial_data: fields not decayed at x_max");

    CubicSpline u1s(d.grid_x, d.u1);
    const double total = u1s.integral_from_start(d.x_max());
    d.v0.resize(d.grid_x.size());
    for (size_t i = 0; i < d.grid_x.size(); ++i)
        d.v0[i] = u1s.integral_from_start(d.grid_x[i]) - total;
    d.u0_x = derivative_table(d.grid_x, d.u0);
    return d;
}

BoundaryData make_boundary_data(std::vector<double> grid_t, std::vector<double> ut0,
                                std::vector<double> ut1, std::vector<double> ut2,
                                std::vector<double> ut3, double v0_at_zero) {
    BoundaryData b;
    b.grid_t = std::move(grid_t);
    b.ut0 = std::move(ut0);
    b.ut1 = std::move(ut1);
    b.ut2 = std::move(ut2);
    b.ut3 = std::move(ut3);
    const size_t m = b.grid_t.size();
    if (b.ut0.size() != m || b.ut1.size() != m || b.ut2.size() != m ||
        b.ut3.size() != m)
        throw InvalidInput("make_boundary_data: array sizes disagree");

    // v(0,t) = v0(0) + integral of (u_x + 2 u u_x + u_xxx) at x = 0.
    std::vector<double> integrand(m);
    for (size_t i = 0; i < m; ++i)
        integrand[i] = b.ut1[i] + 2.0 * b.ut0[i] * b.ut1[i] + b.ut3[i];
    CubicSpline s(b.grid_t, integrand);
    b.vt0.resize(m);
    for (size_t i = 0; i < m; ++i)
        b.vt0[i] = v0_at_zero + s.integral_from_start(b.grid_t[i]);
    b.vx0 = derivative_table(b.grid_t, b.ut0);
    return b;
}

std::pair<InitialData, BoundaryData> convert_scalar_to_system(
    std::vector<double> grid_x, std::vector<double> u0, std::vector<double> u1,
    std::vector<double> grid_t, std::vector<double> ut0, std::vector<double> ut1,
    std::vector<double> ut2, std::vector<double> ut3, double decay_tol) {
    InitialData init = make_initial_data(std::move(grid_x), std::move(u0),
                                         std::move(u1), decay_tol);
    BoundaryData bnd = make_boundary_data(std::move(grid_t), std::move(ut0),
                                          std::move(ut1), std::move(ut2),
                                          std::move(ut3), init.v0.front());
    return {std::move(init), std::move(bnd)};
}

LaxMatrices lax_matrices(const SpectralPoint& p) {
    LaxMatrices m;
    m.p = p;
    Vandermonde vd = vandermonde(p);
    m.P = vd.P;
    m.Pinv = vd.P_inv;

    // Conjugated unit matrices C_ij = P^{-1} E_ij P.
    auto C = [&](int i, int j) {
        Complex3x3 e;
        e(i, j) = 1.0;
        return matmul(m.Pinv, matmul(e, m.P));
    };
    const cplx iu(0.0, 1.0);
    const Complex3x3 C00 = C(0, 0), C11 = C(1, 1), C22 = C(2, 2);
    const Complex3x3 C10 = C(1, 0), C20 = C(2, 0), C21 = C(2, 1);

    m.Au = cplx(-0.5) * C21;
    m.Aux = cplx(-0.25) * C20;
    m.Av = (-iu / (4.0 * kSqrt3)) * C20;

    m.Bu = (-iu / kSqrt3) * C00 + (iu / (2.0 * kSqrt3)) * (C11 + C22);
    m.Bux = (-iu / (4.0 * kSqrt3)) * C10 + (iu / (4.0 * kSqrt3)) * C21;
    m.Buxx = (-iu / (4.0 * kSqrt3)) * C20;
    m.Bv = cplx(-0.25) * (C10 + C21);
    m.Bvx = cplx(-0.25) * C20;
    return m;
}

Complex3x3 LaxMatrices::U(const XFieldValues& f) const {
    Complex3x3 r;
    for (int i = 0; i < 9; ++i)
        r.e[i] = f.u * Au.e[i] + f.u_x * Aux.e[i] + f.v * Av.e[i];
    return r;
}

Complex3x3 LaxMatrices::V(const TFieldValues& f) const {
    Complex3x3 r;
    for (int i = 0; i < 9; ++i)
        r.e[i] = f.u * Bu.e[i] + f.u_x * Bux.e[i] + f.u_xx * Buxx.e[i] +
                 f.v * Bv.e[i] + f.v_x * Bvx.e[i];
    return r;
}

Complex3x3 U_matrix(const XFieldValues& f, const SpectralPoint& p) {
    return lax_matrices(p).U(f);
}

Complex3x3 V_matrix(const TFieldValues& f, const SpectralPoint& p) {
    return lax_matrices(p).V(f);
}

} // namespace bqscat
