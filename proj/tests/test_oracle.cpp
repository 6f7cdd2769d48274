#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

TEST_CASE("zero dataset") {
    const OracleDataset& ds = zeros();
    CHECK(ds.grid.T() == doctest::Approx(1.0));
    CHECK(pde_residual(ds.grid) == 0.0);
    CHECK(scalar_linear_residual(ds.grid) == 0.0);
    CHECK(ds.init.tail_magnitude() == 0.0);
}

TEST_CASE("wavepacket dataset satisfies the linearized equation") {
    const OracleDataset& ds = wavepacket();
    // the family is an exact solution of the linearized equation, so the
    // scalar linear residual only carries finite-difference truncation
    CHECK(scalar_linear_residual(ds.grid) < 5e-8);
    // the full system residual is dominated by the quadratic nonlinearity
    const double r = pde_residual(ds.grid);
    CHECK(r > 1e-8);
    CHECK(r < 2e-6);
    CHECK(ds.init.tail_magnitude() < 1e-7 * 1e-3 * 10);
}

TEST_CASE("system residual scales quadratically with the amplitude") {
    WavepacketSpec big;
    big.amplitude = 2e-3;
    const double r2 = pde_residual(wavepacket_dataset(big).grid);
    const double r1 = pde_residual(wavepacket().grid);
    CHECK(r2 / r1 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("deterministic generation") {
    WavepacketSpec spec;
    spec.seed = 7;
    const OracleDataset a = wavepacket_dataset(spec);
    const OracleDataset b = wavepacket_dataset(spec);
    CHECK(a.grid.u == b.grid.u);
    CHECK(a.grid.v == b.grid.v);
    CHECK(a.init.u0 == b.init.u0);
    CHECK(a.bnd.ut3 == b.bnd.ut3);

    spec.seed = 8;
    const OracleDataset c = wavepacket_dataset(spec);
    CHECK(a.grid.u != c.grid.u);
}

TEST_CASE("band violations are rejected") {
    WavepacketSpec bad;
    bad.kappa_center = 0.9;
    bad.kappa_width = 0.4; // band reaches beyond the stable interval
    CHECK_THROWS_AS(wavepacket_dataset(bad), BandViolation);
}

TEST_CASE("boundary traces are consistent between grid and trace objects") {
    const OracleDataset& ds = wavepacket();
    const TFieldFn bf = ds.bnd.t_fields();
    const XFieldFn xf = ds.grid.x_fields(0.5);
    CHECK(bf(0.5).u == doctest::Approx(xf(0.0).u).epsilon(1e-6));
    CHECK(bf(0.5).v == doctest::Approx(xf(0.0).v).epsilon(1e-6));
}

TEST_CASE("fixed-point reference agrees with the integrator on spot checks") {
    const OracleDataset& ds = wavepacket();
    SUBCASE("initial-line eigenfunction") {
        EigenfunctionRequest req;
        req.which = FnTag::mu3;
        req.x = 1.7;
        req.k = cplx(0.6, 0.8) * 1.4;
        const EigenfunctionValue ref = picard_reference(req, ds.init, ds.bnd);
        const EigenfunctionValue rk =
            solve_mu3(ds.init, make_point(req.k), req.x);
        for (int c = 0; c < 3; ++c) {
            if (!ref.column_valid[c] || !rk.column_valid[c]) continue;
            for (int r = 0; r < 3; ++r)
                check_close(rk.m(r, c), ref.m(r, c), 1e-8);
        }
    }
    SUBCASE("boundary eigenfunction") {
        EigenfunctionRequest req;
        req.which = FnTag::mu1;
        req.t = 0.3;
        req.k = std::polar(1.0, 1.2);
        const EigenfunctionValue ref = picard_reference(req, ds.init, ds.bnd);
        const EigenfunctionValue rk =
            solve_mu1_boundary(ds.bnd, make_point(req.k), req.t);
        CHECK(dist(rk.m, ref.m) < 1e-8);
    }
}
