#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "bqscat/interp.hpp"
#include "bqscat/lax_symbols.hpp"

namespace bqscat {

/// Field values needed by the x-part coefficient matrix at one point.
struct XFieldValues {
    double u = 0.0, u_x = 0.0, v = 0.0;
};

/// Field values needed by the t-part coefficient matrix at one point (x = 0).
struct TFieldValues {
    double u = 0.0, u_x = 0.0, u_xx = 0.0, v = 0.0, v_x = 0.0;
};

using XFieldFn = std::function<XFieldValues(double x)>;
using TFieldFn = std::function<TFieldValues(double t)>;

/// Initial data on [0, x_max]: u(x,0), u_t(x,0) and the derived auxiliary
/// field v(x,0) = integral of u_t from +infinity (truncated at x_max).
struct InitialData {
    std::vector<double> grid_x;
    std::vector<double> u0, u1;   ///< u(x,0), u_t(x,0)
    std::vector<double> v0;       ///< derived: -integral_x^{x_max} u1
    std::vector<double> u0_x;     ///< derivative table
    double decay_tol = 1e-10;

    double x_max() const { return grid_x.back(); }
    /// Spline-backed evaluator of (u, u_x, v) along t = 0.
    XFieldFn x_fields() const;
    /// max(|u0|, |u1|) at the last grid point.
    double tail_magnitude() const;
};

/// Boundary data on [0, T]: traces of u and its x-derivatives at x = 0 plus
/// the derived v(0,t) and v_x(0,t) = u_t(0,t).
struct BoundaryData {
    std::vector<double> grid_t;
    std::vector<double> ut0, ut1, ut2, ut3; ///< u, u_x, u_xx, u_xxx at x = 0
    std::vector<double> vt0;                ///< v(0,t)
    std::vector<double> vx0;                ///< v_x(0,t) = d/dt u(0,t)

    double T() const { return grid_t.back(); }
    /// Spline-backed evaluator of (u, u_x, u_xx, v, v_x) at x = 0.
    TFieldFn t_fields() const;
};

/// Sampled two-dimensional fields on [0,x_max] x [0,T] (oracle data).
struct FullFieldGrid {
    std::vector<double> grid_x; ///< fine grid (uniform)
    std::vector<double> grid_t; ///< coarse grid (uniform)
    // Row-major [ix * nt + it] layout, t contiguous.
    std::vector<double> u, v, u_x, u_xx, v_x, u_t;

    size_t nx() const { return grid_x.size(); }
    size_t nt() const { return grid_t.size(); }
    double at(const std::vector<double>& f, size_t ix, size_t it) const {
        return f[ix * nt() + it];
    }
    double x_max() const { return grid_x.back(); }
    double T() const { return grid_t.back(); }

    /// Spline-backed evaluator of (u, u_x, v) along the horizontal line at
    /// time t. Slices are cached per t.
    XFieldFn x_fields(double t) const;
    /// Traces at t = 0 / x = 0 extracted from the grid.
    InitialData initial_trace() const;
    BoundaryData boundary_trace() const;

private:
    struct Slice {
        CubicSpline u, u_x, v;
    };
    mutable std::map<double, std::shared_ptr<const Slice>> slice_cache_;
    mutable std::shared_ptr<std::mutex> cache_mutex_ = std::make_shared<std::mutex>();
    std::shared_ptr<const Slice> slice(double t) const;
};

/// Build (InitialData, BoundaryData) from raw scalar-equation samples:
/// populates the derived fields v0, vt0, vx0 by spline quadrature.
/// Throws NonDecayingInput when |u0| or |u1| at x_max exceeds decay_tol.
InitialData make_initial_data(std::vector<double> grid_x, std::vector<double> u0,
                              std::vector<double> u1, double decay_tol = 1e-10);
BoundaryData make_boundary_data(std::vector<double> grid_t, std::vector<double> ut0,
                                std::vector<double> ut1, std::vector<double> ut2,
                                std::vector<double> ut3, double v0_at_zero);

/// Scalar-equation inputs to system form: derives v0 from u1 and v(0,t) from
/// the boundary traces, chaining the two constructors above.
std::pair<InitialData, BoundaryData> convert_scalar_to_system(
    std::vector<double> grid_x, std::vector<double> u0, std::vector<double> u1,
    std::vector<double> grid_t, std::vector<double> ut0, std::vector<double> ut1,
    std::vector<double> ut2, std::vector<double> ut3, double decay_tol = 1e-10);

/// k-dependent coefficient-matrix builder: both Lax coefficients are linear
/// in the field values with matrix weights fixed per k.
struct LaxMatrices {
    SpectralPoint p;
    Complex3x3 P, Pinv;
    Complex3x3 Au, Aux, Av;           ///< U = u Au + u_x Aux + v Av
    Complex3x3 Bu, Bux, Buxx, Bv, Bvx;

    Complex3x3 U(const XFieldValues& f) const;
    Complex3x3 V(const TFieldValues& f) const;
};
LaxMatrices lax_matrices(const SpectralPoint& p);

/// Single-point evaluation of the Lax coefficient matrices.
Complex3x3 U_matrix(const XFieldValues& f, const SpectralPoint& p);
Complex3x3 V_matrix(const TFieldValues& f, const SpectralPoint& p);

} // namespace bqscat
