#pragma once

#include "bqscat/contour.hpp"
#include "bqscat/fields.hpp"

namespace bqscat {

/// Step-size and refinement controls for the Runge-Kutta column solvers.
struct SolverOptions {
    double base_step = 0.05;    ///< cap on the raw step size
    double osc_per_step = 0.08; ///< cap on |exponent spread| * h
    int min_steps = 32;
    /// When positive, halve the step until two successive answers differ by
    /// less than this (at most max_halvings times).
    double refine_tol = 0.0;
    int max_halvings = 4;
    /// Compute only columns whose boundedness domain contains k; when false,
    /// out-of-domain columns are integrated anyway (they grow, but over short
    /// legs the growth stays representable and relative accuracy is kept).
    bool skip_invalid_columns = true;
};

/// Solver result: matrix value, per-column validity, error estimate from
/// step-halving (negative when no refinement was requested).
struct EigenfunctionValue {
    Complex3x3 m = Complex3x3::identity();
    std::array<bool, 3> column_valid = {true, true, true};
    double est_error = -1.0;
};

/// Eigenfunction normalized to I as x -> +infinity, integrated backward along
/// the line at fixed time; fields supplies (u, u_x, v) on that line.
EigenfunctionValue solve_mu3(const XFieldFn& fields, double x_max,
                             const SpectralPoint& p, double x,
                             const SolverOptions& opt = {});
EigenfunctionValue solve_mu3(const InitialData& data, const SpectralPoint& p, double x,
                             const SolverOptions& opt = {});

/// Adjoint companion of solve_mu3 (transposed coefficients, reversed signs).
EigenfunctionValue solve_mu3A(const XFieldFn& fields, double x_max,
                              const SpectralPoint& p, double x,
                              const SolverOptions& opt = {});
EigenfunctionValue solve_mu3A(const InitialData& data, const SpectralPoint& p, double x,
                              const SolverOptions& opt = {});

/// Boundary eigenfunction at x = 0, normalized to I at t = T.
EigenfunctionValue solve_mu1_boundary(const BoundaryData& data, const SpectralPoint& p,
                                      double t, const SolverOptions& opt = {});
EigenfunctionValue solve_mu1A_boundary(const BoundaryData& data, const SpectralPoint& p,
                                       double t, const SolverOptions& opt = {});

/// Corner eigenfunction at x = 0 normalized to I at (0,0), integrated forward
/// in t (the vertical leg of the second normalization path).
EigenfunctionValue solve_mu2_boundary(const BoundaryData& data, const SpectralPoint& p,
                                      double t, const SolverOptions& opt = {});

/// General (x,t) eigenfunction for which = 1, 2, 3, integrated along the
/// two-leg normalization path: vertical at x = 0, then horizontal at time t.
EigenfunctionValue solve_mu_general(int which, const FullFieldGrid& grid,
                                    const BoundaryData& bnd, double x, double t,
                                    const SpectralPoint& p,
                                    const SolverOptions& opt = {});

/// Batched variant of solve_mu3 on a shared backward sweep: xs must be
/// sorted ascending; one value per requested position.
std::vector<EigenfunctionValue> solve_mu3_multi(const XFieldFn& fields, double x_max,
                                                const SpectralPoint& p,
                                                const std::vector<double>& xs,
                                                const SolverOptions& opt = {});

} // namespace bqscat
