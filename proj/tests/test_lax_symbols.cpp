#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

TEST_CASE("symbol values at a fixed spectral parameter") {
    // Reference values computed independently from the closed forms
    // l_j = i(w^j k + (w^j k)^{-1})/(2 sqrt 3), z_j = i((w^j k)^2 +
    // (w^j k)^{-2})/(4 sqrt 3), lambda = (k^3 + k^{-3})/2 at k = 1.3+0.45i.
    const SpectralPoint p = make_point(cplx(1.3, 0.45));
    check_close(p.l[0], cplx(-1.2263826923866800e-01, -4.5873267499607523e-01), 1e-15);
    check_close(p.l[1], cplx(+1.8390070037824080e-01, -1.1484231832500559e-01), 1e-15);
    check_close(p.l[2], cplx(-6.1262431139572922e-02, +5.7357499332108064e-01), 1e-15);
    check_close(p.z[0], cplx(+1.9488405672247308e-01, +4.9759837127739112e-02), 1e-15);
    check_close(p.z[1], cplx(-7.3160380795086674e-02, -3.2440857168197845e-01), 1e-15);
    check_close(p.z[2], cplx(-1.2172367592738657e-01, +2.7464873455423933e-01), 1e-15);
    check_close(p.lambda, cplx(+8.0743366289331542e-01, +9.3361002621428679e-01), 1e-15);
}

TEST_CASE("symbol symmetries") {
    const cplx k(0.83, -1.21);
    const SpectralPoint p = make_point(k);
    const SpectralPoint pw = make_point(omega() * k);
    const SpectralPoint pi = make_point(1.0 / k);

    for (int j = 0; j < 3; ++j) {
        // rotation shifts the branch index cyclically
        check_close(pw.l[j], p.l[(j + 1) % 3], 1e-15);
        check_close(pw.z[j], p.z[(j + 1) % 3], 1e-15);
    }
    // inversion swaps the first two branches and fixes the third
    check_close(pi.l[0], p.l[1], 1e-15);
    check_close(pi.l[1], p.l[0], 1e-15);
    check_close(pi.l[2], p.l[2], 1e-15);
    check_close(pi.lambda, p.lambda, 1e-14);

    // the branches sum to zero
    check_close(p.l[0] + p.l[1] + p.l[2], 0.0, 1e-15);
    check_close(p.z[0] + p.z[1] + p.z[2], 0.0, 1e-15);
}

TEST_CASE("real-axis structure") {
    const SpectralPoint p = make_point(2.0);
    // third branch purely imaginary, first two with opposite real parts
    CHECK(std::abs(p.l[2].real()) < 1e-15);
    check_close(p.l[0].real(), -p.l[1].real(), 1e-15);
    check_close(p.z[0].real(), -p.z[1].real(), 1e-15);
    CHECK(std::abs(p.z[2].real()) < 1e-15);
}

TEST_CASE("phase combination") {
    const SpectralPoint p = make_point(cplx(0.4, 1.7));
    const double x = 2.3, t = 0.6;
    check_close(phase(1, 3, x, t, p), (p.l[0] - p.l[2]) * x + (p.z[0] - p.z[2]) * t, 1e-14);
    check_close(phase(2, 2, x, t, p), 0.0, 0.0);
    check_close(phase(1, 2, x, t, p), -phase(2, 1, x, t, p), 1e-14);
}

TEST_CASE("degenerate set and guards") {
    CHECK(degenerate_points().size() == 6);
    check_close(degenerate_points()[0], 1.0, 1e-15);
    CHECK(dist_to_degenerate(1.0) == 0.0);
    CHECK(dist_to_degenerate(cplx(0.0, 0.02)) == doctest::Approx(0.02));
    CHECK_THROWS_AS(make_point(cplx(0, 0)), ZeroArgument);
    CHECK(kExclusionRadius == 0.05);
}

TEST_CASE("vandermonde inverse and collision guard") {
    const SpectralPoint p = make_point(cplx(1.3, 0.45));
    const Vandermonde v = vandermonde(p);
    CHECK(dist(v.P * v.P_inv, Complex3x3::identity()) < 1e-13);
    for (int j = 0; j < 3; ++j) {
        CHECK(v.P(0, j) == 1.0);
        check_close(v.P(2, j), p.l[j] * p.l[j], 1e-15);
    }
    // near a degenerate point two l-branches collide
    CHECK_THROWS_AS(vandermonde(make_point(cplx(1.0 + 1e-10, 0.0))), NearSingularPoint);
}
