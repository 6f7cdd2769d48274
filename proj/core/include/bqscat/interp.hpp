#pragma once

#include <vector>

#include "bqscat/errors.hpp"

namespace bqscat {

/// Cubic interpolating spline with not-a-knot boundary conditions.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    /// Integral of the spline from x[0] to x.
    double integral_from_start(double x) const;

    bool empty() const { return x_.empty(); }
    const std::vector<double>& knots() const { return x_; }

private:
    int interval(double x) const;
    std::vector<double> x_, y_, c1_, c2_, c3_; ///< piecewise cubic coefficients
    std::vector<double> cumint_;               ///< integral up to each knot
    double h_ = 0.0;                           ///< uniform spacing (0 if non-uniform)
};

/// Derivative of sampled data by centered 4th-order finite differences,
/// one-sided (4th order) at the boundaries. Requires >= 5 uniform samples.
std::vector<double> fd_derivative(const std::vector<double>& y, double h);

/// Gauss-Legendre nodes and weights on [a, b].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre(int n, double a, double b);

} // namespace bqscat
