#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include "bqscat/jump.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

namespace {
const SpectralCache& wp_cache() {
    static const SpectralCache sc(wavepacket().init, wavepacket().bnd);
    return sc;
}
} // namespace

TEST_CASE("piece lookup from contour points") {
    CHECK(locate_piece(cplx(0, 2.0)).id() == "G1pp");
    CHECK(locate_piece(cplx(0, 0.5)).id() == "G1p");
    CHECK(locate_piece(std::polar(1.0, M_PI / 2 + 0.1)).id() == "G1");
    CHECK(locate_piece(std::polar(1.0, -M_PI / 4 - 0.05)).id() == "G11");
    CHECK_THROWS_AS(locate_piece(cplx(0.5, 0.1)), DomainViolation);
}

TEST_CASE("zero data: identity jumps and region matrices") {
    const OracleDataset& ds = zeros();
    SpectralCache sc(ds.init, ds.bnd);
    JumpEvaluator je(sc);
    for (const ContourPiece& pc : contour_pieces()) {
        const cplx k = sample_piece(pc, 1)[0];
        CHECK(dist(je.vtilde(pc, k), Complex3x3::identity()) == 0.0);
    }
    CHECK(dist(je.t_matrix(cplx(0.4, 1.6)), Complex3x3::identity()) == 0.0);
}

TEST_CASE("unit determinant on all 54 pieces") {
    JumpEvaluator je(wp_cache());
    double worst = 0.0;
    for (const ContourPiece& pc : contour_pieces())
        for (cplx k : sample_piece(pc, 2))
            worst = std::max(worst, std::abs(det(je.vtilde(pc, k)) - 1.0));
    CHECK(worst < 1e-12);
}

TEST_CASE("rotation and inversion symmetries of the jump matrix") {
    JumpEvaluator je(wp_cache());
    for (const ContourPiece* pc : {&piece(PieceKind::Ray, 2), &piece(PieceKind::Arc, 8),
                                   &piece(PieceKind::Segment, 12)}) {
        const cplx k = sample_piece(*pc, 1)[0];
        const auto res = je.check_vsymm(0.9, 0.4, k);
        CHECK(res.rot < 1e-7);
        CHECK(res.inv < 1e-7);
    }
}

TEST_CASE("displayed helper forms agree") {
    JumpEvaluator je(wp_cache());
    const cplx k = sample_piece(piece(PieceKind::Arc, 5), 1)[0];
    const HelperForms hf = je.helper_forms(k);
    check_close(hf.f1_a, hf.f1_b, 1e-12);
    check_close(hf.f1_a, hf.f1_c, 1e-12);
    check_close(hf.f2_a, hf.f2_b, 1e-12);
    check_close(hf.f2_a, hf.f2_c, 1e-12);
    const JumpHelpers h = je.helpers(k);
    check_close(h.f1, hf.f1_a, 1e-12);
    check_close(h.f2, hf.f2_a, 1e-12);
}

TEST_CASE("dressing conjugates by the phase exponentials") {
    JumpEvaluator je(wp_cache());
    const ContourPiece& pc = piece(PieceKind::Ray, 1);
    const cplx k = sample_piece(pc, 1)[0];
    const SpectralPoint p = make_point(k);
    const Complex3x3 undressed = je.vtilde(pc, k);
    const Complex3x3 dressed = je.v_dressed(1.2, 0.7, pc, k);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const cplx ph = std::exp((p.l[i] - p.l[j]) * 1.2 + (p.z[i] - p.z[j]) * 0.7);
            check_close(dressed(i, j), ph * undressed(i, j), 1e-12 * std::abs(ph) + 1e-14);
        }
}

TEST_CASE("upper-ray factorization through boundary-reduced factors") {
    JumpEvaluator je(wp_cache());
    for (cplx k : {cplx(0, 1.4), cplx(0, 2.5)}) {
        const auto f = je.t_ray1_reduced(k);
        check_close(det(f.t_minus), 1.0, 1e-10);
        check_close(det(f.t_plus), 1.0, 1e-10);
        // T_-^{-1} T_+ reproduces the undressed ray jump matrix up to the
        // quadratic data-compatibility error
        const Complex3x3 quot = transpose(cofactor(f.t_minus)) * f.t_plus;
        const Complex3x3 v = je.vtilde(piece(PieceKind::Ray, 1), k);
        CHECK(dist(quot, v) < 1e-5);
    }
}
