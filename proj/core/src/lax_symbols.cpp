#include "bqscat/lax_symbols.hpp"

#include <cmath>

namespace bqscat {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

const std::array<cplx, 6>& degenerate_points() {
    static const std::array<cplx, 6> pts = [] {
        std::array<cplx, 6> q;
        for (int j = 0; j < 6; ++j) q[j] = std::polar(1.0, M_PI * j / 3.0);
        return q;
    }();
    return pts;
}

double dist_to_degenerate(cplx k) {
    double d = std::abs(k);
    for (const auto& q : degenerate_points()) d = std::min(d, std::abs(k - q));
    return d;
}

SpectralPoint make_point(cplx k) {
    if (k == cplx(0.0, 0.0)) throw ZeroArgument("make_point: k = 0");
    SpectralPoint p;
    p.k = k;
    const cplx i(0.0, 1.0);
    const cplx w = omega();
    for (int j = 1; j <= 3; ++j) {
        const cplx wk = std::pow(w, j) * k;
        p.l[j - 1] = i * (wk + 1.0 / wk) / (2.0 * kSqrt3);
        p.z[j - 1] = i * (wk * wk + 1.0 / (wk * wk)) / (4.0 * kSqrt3);
    }
    const cplx k3 = k * k * k;
    p.lambda = (k3 + 1.0 / k3) / 2.0;
    return p;
}

cplx phase(int i, int j, double x, double t, const SpectralPoint& p) {
    return (p.l[i - 1] - p.l[j - 1]) * x + (p.z[i - 1] - p.z[j - 1]) * t;
}

Vandermonde vandermonde(const SpectralPoint& p, double spacing_threshold) {
    double min_spacing = std::abs(p.l[0] - p.l[1]);
    min_spacing = std::min(min_spacing, std::abs(p.l[0] - p.l[2]));
    min_spacing = std::min(min_spacing, std::abs(p.l[1] - p.l[2]));
    if (min_spacing < spacing_threshold)
        throw NearSingularPoint("vandermonde: l-values nearly collide");

    Vandermonde v;
    for (int j = 0; j < 3; ++j) {
        v.P(0, j) = 1.0;
        v.P(1, j) = p.l[j];
        v.P(2, j) = p.l[j] * p.l[j];
    }
    v.P_inv = inverse(v.P);
    return v;
}

} // namespace bqscat
