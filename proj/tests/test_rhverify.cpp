#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include "bqscat/rhverify.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

namespace {
const SpectralCache& wp_cache() {
    static const SpectralCache sc(wavepacket().init, wavepacket().bnd);
    return sc;
}
SectionalM& wp_M() {
    static SectionalM sm(wavepacket().grid, wp_cache());
    return sm;
}
} // namespace

TEST_CASE("zero data: the sectional solution is the identity") {
    const OracleDataset& ds = zeros();
    SpectralCache sc(ds.init, ds.bnd);
    SectionalM sm(ds.grid, sc);
    for (cplx k : {cplx(2.0, 0.3), cplx(-0.2, 0.4), std::polar(3.0, -2.2),
                   std::polar(0.4, 1.9)}) {
        CHECK(dist(sm.build_M(1.0, 0.5, k), Complex3x3::identity()) == 0.0);
    }
    CHECK(sm.jump_residual(1.0, 0.5, piece(PieceKind::Ray, 1), cplx(0, 1.8)) == 0.0);
    const auto ru = sm.recover_u(1.0, 0.5);
    CHECK(std::abs(ru.u_a) < 1e-12);
    CHECK(std::abs(ru.u_b) < 1e-12);
    CHECK(std::abs(sm.recover_v(1.0, 0.5)) < 1e-12);

    const VerificationReport rep = run_verification(ds.grid, sc);
    CHECK(rep.all_pass());
}

TEST_CASE("extension symmetries of the sectional solution") {
    const auto res = wp_M().check_symmetry(1.0, 0.5, cplx(1.3, 0.45));
    CHECK(res.rot < 1e-12);
    CHECK(res.inv < 1e-12);
}

TEST_CASE("jump condition across representative pieces") {
    SectionalM& sm = wp_M();
    const cplx kr = sample_piece(piece(PieceKind::Ray, 1), 1, 3.0)[0];
    CHECK(sm.jump_residual(1.0, 0.5, piece(PieceKind::Ray, 1), kr) < 1e-8);
    const cplx ks = sample_piece(piece(PieceKind::Segment, 10), 1)[0];
    CHECK(sm.jump_residual(1.0, 0.5, piece(PieceKind::Segment, 10), ks) < 1e-7);
    // arcs need the finer offset ladder to reach the quadratic floor
    const cplx ka = sample_piece(piece(PieceKind::Arc, 17), 1)[0];
    CHECK(sm.jump_residual(1.0, 0.5, piece(PieceKind::Arc, 17), ka, 2.5e-3) < 1e-5);
}

TEST_CASE("large-k structure of the fitted expansion") {
    const auto sn = wp_M().structure_numbers(1.0, 0.5);
    CHECK(sn.m1_norm > 1e-5);           // nontrivial data
    CHECK(sn.m1_offdiag < 1e-6);        // vanishing pattern entries
    CHECK(sn.m2_sym < 1e-6);            // antisymmetric off-diagonal pair
    CHECK(sn.m1_pattern < 1e-5);
    CHECK(sn.m2_pattern < 0.05 * sn.m2_norm + 1e-7);
    CHECK(sn.det_residual < 1e-6);      // quadratic compatibility floor
    CHECK(sn.residue_pattern_rel < 0.1);
    CHECK(sn.fit_residual < 1e-7);
}

TEST_CASE("field recovery against the dataset") {
    SectionalM& sm = wp_M();
    const FullFieldGrid& g = wavepacket().grid;
    const double x = 1.0, t = 0.5;
    const auto ru = sm.recover_u(x, t);
    const XFieldValues ref = g.x_fields(t)(x);
    CHECK(std::abs(ru.u_a - ref.u) < 5e-6);
    CHECK(std::abs(ru.u_b - ref.u) < 5e-5);
    CHECK(std::abs(ru.u_a - ru.u_b) < 5e-5);
    CHECK(std::abs(sm.recover_v(x, t) - ref.v) < 5e-6);
}

TEST_CASE("second-order reconstruction carries the compatibility defect") {
    SectionalM& sm = wp_M();
    const FullFieldGrid& g = wavepacket().grid;
    const auto r2 = sm.recover_second_order(1.0, 0.5);
    const XFieldValues ref = g.x_fields(0.5)(1.0);
    // deviation is of the order of the quadratic data defect, far above the
    // solver noise of the direct reconstructions but well below the fields
    CHECK(std::abs(r2.u - ref.u) > 1e-9);
    CHECK(std::abs(r2.u - ref.u) < 5e-7);
    CHECK(std::abs(r2.v - ref.v) < 5e-7);
}

TEST_CASE("invalid recovery points are rejected") {
    CHECK_THROWS_AS((void)wp_M().recover_v(1.0, 1e-9), InvalidInput);
    CHECK_THROWS_AS((void)wp_M().recover_second_order(1.0, 1e-9), InvalidInput);
}

TEST_CASE("verification report bookkeeping") {
    VerificationReport rep;
    rep.items.push_back({"a", 3, 1e-9, 1e-8, true});
    CHECK(rep.all_pass());
    rep.items.push_back({"b", 1, 2e-8, 1e-8, false});
    CHECK(!rep.all_pass());
}

TEST_CASE("full identity sweep passes at the default tolerances") {
    const VerificationReport rep = run_verification(wavepacket().grid, wp_cache());
    for (const auto& it : rep.items) {
        INFO(it.name, ": residual ", it.max_residual, " tol ", it.tolerance);
        CHECK(it.pass);
    }
    CHECK(rep.items.size() >= 12);
}
