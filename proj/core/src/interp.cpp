#include "bqscat/interp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bqscat {

namespace {

// 4th-order one-sided slope estimate at the first of five uniform samples.
double one_sided_slope(const double* y, double h) {
    return (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) /
           (12.0 * h);
}

} // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw InvalidInput("CubicSpline: bad sample arrays");
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i])) throw InvalidInput("CubicSpline: knots not increasing");

    // Detect uniform spacing for O(1) interval lookup.
    h_ = x_[1] - x_[0];
    for (size_t i = 1; i + 1 < n; ++i)
        if (std::abs((x_[i + 1] - x_[i]) - h_) > 1e-12 * std::max(1.0, std::abs(h_))) {
            h_ = 0.0;
            break;
        }

    // Clamped spline with end slopes from one-sided 4th-order differences
    // (falls back to secant slopes for very short arrays).
    std::vector<double> m(n);
    double m0, mn;
    if (n >= 5 && h_ > 0.0) {
        m0 = one_sided_slope(y_.data(), h_);
        std::array<double, 5> rev;
        for (int i = 0; i < 5; ++i) rev[i] = y_[n - 1 - i];
        mn = -one_sided_slope(rev.data(), h_);
    } else {
        m0 = (y_[1] - y_[0]) / (x_[1] - x_[0]);
        mn = (y_[n - 1] - y_[n - 2]) / (x_[n - 1] - x_[n - 2]);
    }

    if (n == 2) {
        m[0] = m0;
        m[1] = mn;
    } else {
        // Tridiagonal system for interior slopes (C2 continuity).
        std::vector<double> a(n), b(n), c(n), r(n);
        b[0] = 1.0;
        c[0] = 0.0;
        r[0] = m0;
        for (size_t i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1];
            const double hr = x_[i + 1] - x_[i];
            a[i] = 1.0 / hl;
            b[i] = 2.0 * (1.0 / hl + 1.0 / hr);
            c[i] = 1.0 / hr;
            r[i] = 3.0 * ((y_[i] - y_[i - 1]) / (hl * hl) +
                          (y_[i + 1] - y_[i]) / (hr * hr));
        }
        a[n - 1] = 0.0;
        b[n - 1] = 1.0;
        r[n - 1] = mn;
        // Thomas algorithm.
        for (size_t i = 1; i < n; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            r[i] -= w * r[i - 1];
        }
        m[n - 1] = r[n - 1] / b[n - 1];
        for (size_t i = n - 1; i-- > 0;) m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
    }

    c1_ = std::move(m);
    c2_.resize(n - 1);
    c3_.resize(n - 1);
    cumint_.resize(n, 0.0);
    for (size_t i = 0; i + 1 < n; ++i) {
        const double h = x_[i + 1] - x_[i];
        const double d = (y_[i + 1] - y_[i]) / h;
        c2_[i] = (3.0 * d - 2.0 * c1_[i] - c1_[i + 1]) / h;
        c3_[i] = (c1_[i] + c1_[i + 1] - 2.0 * d) / (h * h);
        cumint_[i + 1] = cumint_[i] + h * (y_[i] + h * (c1_[i] / 2.0 +
                         h * (c2_[i] / 3.0 + h * c3_[i] / 4.0)));
    }
}

int CubicSpline::interval(double x) const {
    const int n = static_cast<int>(x_.size());
    if (h_ > 0.0) {
        int i = static_cast<int>(std::floor((x - x_[0]) / h_));
        return std::clamp(i, 0, n - 2);
    }
    int i = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    return std::clamp(i, 0, n - 2);
}

double CubicSpline::operator()(double x) const {
    const int i = interval(x);
    const double s = x - x_[i];
    return y_[i] + s * (c1_[i] + s * (c2_[i] + s * c3_[i]));
}

double CubicSpline::derivative(double x) const {
    const int i = interval(x);
    const double s = x - x_[i];
    return c1_[i] + s * (2.0 * c2_[i] + s * 3.0 * c3_[i]);
}

double CubicSpline::integral_from_start(double x) const {
    const int i = interval(x);
    const double s = x - x_[i];
    return cumint_[i] + s * (y_[i] + s * (c1_[i] / 2.0 +
                       s * (c2_[i] / 3.0 + s * c3_[i] / 4.0)));
}

std::vector<double> fd_derivative(const std::vector<double>& y, double h) {
    const size_t n = y.size();
    if (n < 5) throw InvalidInput("fd_derivative: need at least 5 samples");
    std::vector<double> d(n);
    d[0] = one_sided_slope(y.data(), h);
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / (12.0 * h);
    for (size_t i = 2; i + 2 < n; ++i)
        d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    d[n - 2] = (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] -
                y[n - 5]) / (12.0 * h);
    std::array<double, 5> rev;
    for (int i = 0; i < 5; ++i) rev[i] = y[n - 1 - i];
    d[n - 1] = -one_sided_slope(rev.data(), h);
    return d;
}

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InvalidInput("gauss_legendre: n must be positive");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
        q.nodes[n - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
        q.weights[i] = q.weights[n - 1 - i] = 0.5 * (b - a) * w;
    }
    return q;
}

} // namespace bqscat
