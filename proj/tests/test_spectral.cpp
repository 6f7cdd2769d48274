#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include "bqscat/spectral.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

namespace {
const SpectralCache& wp_cache() {
    static const SpectralCache sc(wavepacket().init, wavepacket().bnd);
    return sc;
}
} // namespace

TEST_CASE("zero data: identity spectral matrices, vanishing coefficients") {
    const OracleDataset& ds = zeros();
    SpectralCache sc(ds.init, ds.bnd);
    const cplx k = std::polar(1.0, 0.8);
    const SpectralMatrices& m = sc.at(k);
    CHECK(dist(m.s, Complex3x3::identity()) == 0.0);
    CHECK(dist(m.S, Complex3x3::identity()) == 0.0);
    CHECK(dist(m.sA, Complex3x3::identity()) == 0.0);
    CHECK(dist(m.SA, Complex3x3::identity()) == 0.0);
    const ReflectionSmall r = sc.small(k);
    CHECK(std::abs(r.r1) == 0.0);
    CHECK(std::abs(r.r2) == 0.0);
    const ReflectionBig R = sc.big(k);
    CHECK(std::abs(R.R1) == 0.0);
    CHECK(unit_circle_relations(sc, k).max() == 0.0);
}

TEST_CASE("circle identities") {
    const SpectralCache& sc = wp_cache();
    for (double th : {0.7, 2.0, -1.3, 2.9}) {
        const cplx k = std::polar(1.0, th);
        const SpectralMatrices& m = sc.at(k);
        check_close(det(m.s), 1.0, 1e-10);
        check_close(det(m.S), 1.0, 1e-10);
        // the adjoint is the cofactor matrix on the circle
        CHECK(dist(m.sA, cofactor(m.s)) < 1e-8);
        CHECK(dist(m.SA, cofactor(m.S)) < 1e-10);
        // the eight displayed coefficient relations
        CHECK(unit_circle_relations(sc, k).max() < 1e-10);
    }
}

TEST_CASE("rotation and inversion symmetries of the spectral matrices") {
    const SpectralCache& sc = wp_cache();
    const auto& cst = constants();
    const Complex3x3 a_inv = inverse(cst.matA);
    for (double th : {0.55, 1.9}) {
        const cplx k = std::polar(1.0, th);
        const SpectralMatrices& m = sc.at(k);
        const SpectralMatrices& mw = sc.at(omega() * k);
        const SpectralMatrices& mi = sc.at(1.0 / k);
        CHECK(dist(m.s, cst.matA * mw.s * a_inv) < 1e-7);
        CHECK(dist(m.S, cst.matA * mw.S * a_inv) < 1e-7);
        CHECK(dist(m.s, cst.matB * mi.s * cst.matB) < 1e-7);
        CHECK(dist(m.S, cst.matB * mi.S * cst.matB) < 1e-7);
    }
}

TEST_CASE("products backing the quotient coefficients") {
    const SpectralCache& sc = wp_cache();
    const cplx k = std::polar(1.0, 1.1);
    const SpectralMatrices& m = sc.at(k);
    CHECK(dist(m.Sinv_s, inverse(m.S) * m.s) < 1e-9);
    CHECK(dist(m.St_sA, transpose(m.S) * m.sA) < 1e-12);
}

TEST_CASE("global relation holds to the data-compatibility error") {
    const OracleDataset& ds = wavepacket();
    for (cplx k : {std::polar(1.0, 0.8), cplx(0.4, 1.5)}) {
        const GlobalRelationResidual g =
            global_relation_residual(ds.init, ds.bnd, ds.grid, k);
        CHECK(g.direct < 1e-5);
        CHECK(g.adjoint < 1e-5);
        CHECK(g.direct > 0.0); // nonzero: the data is only quadratically compatible
    }
}

TEST_CASE("domain guards on the coefficient quotients") {
    const SpectralCache& sc = wp_cache();
    // off the circle and off the imaginary axis neither quotient is defined
    CHECK_THROWS_AS((void)sc.small(cplx(0.5, 0.5)), DomainViolation);
    // on the upper imaginary ray outside the disk only the r2 family remains
    CHECK_NOTHROW((void)sc.small(cplx(0, 2.0)));
    CHECK(in_small_r2_domain(cplx(0, 2.0)));
    CHECK(!in_small_r1_domain(cplx(0, 2.0)));
    CHECK(in_small_r1_domain(cplx(0, -2.0)));
    CHECK(in_big_R1_domain(std::polar(0.5, 2 * M_PI / 3)));
    CHECK(!in_big_R2_domain(std::polar(0.5, 2 * M_PI / 3)));
}

TEST_CASE("endpoint behaviour and genericity report") {
    // The endpoint limits are reached through a layer whose width scales
    // with the pole strength of s at +-1, itself proportional to the field
    // amplitude; a moderate-amplitude packet keeps the extrapolation ladder
    // inside that layer.
    WavepacketSpec spec;
    spec.amplitude = 0.3;
    const OracleDataset ds = wavepacket_dataset(spec);
    const SpectralCache sc(ds.init, ds.bnd);
    const AssumptionReport rep = check_assumptions(sc);
    CHECK(rep.solitonless);
    CHECK(rep.generic);
    for (int side = 0; side < 2; ++side) {
        check_close(rep.r1_at[side], 1.0, 1e-3);
        check_close(rep.rt1_at[side], 1.0, 1e-3);
        check_close(rep.r2_at[side], -1.0, 1e-3);
        check_close(rep.rt2_at[side], -1.0, 1e-3);
        check_close(rep.rh2_at[side], -1.0, 1e-3);
        check_close(rep.rc2_at[side], -1.0, 1e-3);
        CHECK(rep.pole_scale_s11[side] > 1e-8);
    }
}

TEST_CASE("fitted coefficient limits match the corner value") {
    const double u00 = wavepacket().grid.x_fields(0.0)(0.0).u;
    const cplx target = cplx(0, 2.0) * u00 / std::sqrt(3.0);
    const ReflectionLimitFits f = reflection_limit_fits(wp_cache());
    const double tol = 0.02 * std::abs(target);
    check_close(f.k2_r1, target, tol);
    check_close(f.r2_over_k2, -target, tol);
    check_close(f.R1_over_k2, -target, tol);
    check_close(f.R2_over_k2, -target, tol);
    check_close(f.k2_Rt2, -target, tol);
    CHECK(f.misfit < 0.05 * std::abs(target));
}
