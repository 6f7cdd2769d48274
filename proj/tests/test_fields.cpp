#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

namespace {

// Exponential test profile: u0 = e^{-x}, u1 = -e^{-x}; then the auxiliary
// field v(x,0) = -int_x^inf u1 = -e^{-x} up to the truncation tail.
InitialData exp_initial(double x_max = 26.0, double dx = 0.02) {
    std::vector<double> gx, u0, u1;
    for (double x = 0.0; x <= x_max + dx / 2; x += dx) {
        gx.push_back(x);
        u0.push_back(std::exp(-x));
        u1.push_back(-std::exp(-x));
    }
    return make_initial_data(std::move(gx), std::move(u0), std::move(u1));
}

} // namespace

TEST_CASE("initial-data construction derives the auxiliary field") {
    const InitialData init = exp_initial();
    const XFieldFn f = init.x_fields();
    for (double x : {0.0, 0.7, 2.3, 5.5}) {
        const XFieldValues v = f(x);
        CHECK(v.u == doctest::Approx(std::exp(-x)).epsilon(1e-8));
        CHECK(v.u_x == doctest::Approx(-std::exp(-x)).epsilon(1e-6));
        // v(x) = int_{+inf}^x u1 dx' with u1 = -e^{-x'} gives +e^{-x}
        CHECK(v.v == doctest::Approx(std::exp(-x)).epsilon(1e-6));
    }
    CHECK(init.x_max() == doctest::Approx(26.0));
    CHECK(init.tail_magnitude() < 1e-10);
}

TEST_CASE("non-decaying input is rejected") {
    std::vector<double> gx, u0, u1;
    for (double x = 0.0; x <= 5.0; x += 0.1) {
        gx.push_back(x);
        u0.push_back(1.0); // no decay at the right end
        u1.push_back(0.0);
    }
    CHECK_THROWS_AS(make_initial_data(std::move(gx), std::move(u0), std::move(u1)),
                    NonDecayingInput);
}

TEST_CASE("boundary-data construction: v_x trace is the time derivative of u") {
    std::vector<double> gt, ut0, ut1, ut2, ut3;
    const double dt = 0.01;
    for (double t = 0.0; t <= 1.0 + dt / 2; t += dt) {
        gt.push_back(t);
        ut0.push_back(std::sin(2 * t));
        ut1.push_back(0.3 * std::cos(t));
        ut2.push_back(0.1 * t);
        ut3.push_back(0.05);
    }
    const BoundaryData bnd =
        make_boundary_data(std::move(gt), std::move(ut0), std::move(ut1),
                           std::move(ut2), std::move(ut3), -0.25);
    const TFieldFn f = bnd.t_fields();
    CHECK(bnd.T() == doctest::Approx(1.0));
    for (double t : {0.1, 0.45, 0.9}) {
        const TFieldValues v = f(t);
        CHECK(v.u == doctest::Approx(std::sin(2 * t)).epsilon(1e-8));
        CHECK(v.v_x == doctest::Approx(2 * std::cos(2 * t)).epsilon(1e-5));
    }
    // v(0,0) honours the prescribed corner value
    CHECK(f(0.0).v == doctest::Approx(-0.25).epsilon(1e-10));
}

TEST_CASE("full grid slices interpolate the stored samples") {
    const FullFieldGrid& g = wavepacket().grid;
    const size_t ix = g.nx() / 3, it = g.nt() / 2;
    const XFieldFn f = g.x_fields(g.grid_t[it]);
    CHECK(f(g.grid_x[ix]).u == doctest::Approx(g.at(g.u, ix, it)).epsilon(1e-12));
    CHECK(f(g.grid_x[ix]).v == doctest::Approx(g.at(g.v, ix, it)).epsilon(1e-12));

    const InitialData tr = g.initial_trace();
    CHECK(tr.u0[ix] == doctest::Approx(g.at(g.u, ix, 0)));
    const BoundaryData bt = g.boundary_trace();
    CHECK(bt.ut0[it] == doctest::Approx(g.at(g.u, 0, it)));
    CHECK(bt.T() == doctest::Approx(g.T()));
}

TEST_CASE("Lax coefficient matrices") {
    const SpectralPoint p = make_point(cplx(1.1, 0.6));
    const LaxMatrices lm = lax_matrices(p);

    SUBCASE("zero fields carry zero coefficients") {
        CHECK(max_abs(U_matrix({}, p)) == 0.0);
        CHECK(max_abs(V_matrix({}, p)) == 0.0);
    }
    SUBCASE("linearity in the field values") {
        const XFieldValues f{0.3, -0.1, 0.7};
        const Complex3x3 direct = U_matrix(f, p);
        const Complex3x3 built = 0.3 * lm.Au + (-0.1) * lm.Aux + 0.7 * lm.Av;
        CHECK(dist(direct, built) < 1e-13);
        CHECK(dist(direct, lm.U(f)) < 1e-14);

        const TFieldValues g{0.2, 0.1, -0.4, 0.05, 0.6};
        CHECK(dist(V_matrix(g, p), lm.V(g)) < 1e-14);
    }
    SUBCASE("symbol conjugation frame is consistent") {
        CHECK(dist(lm.P * lm.Pinv, Complex3x3::identity()) < 1e-12);
        CHECK(dist(lm.P, vandermonde(p).P) < 1e-14);
    }
}
