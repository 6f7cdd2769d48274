#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include "bqscat/contour.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

TEST_CASE("piece inventory") {
    CHECK(contour_pieces().size() == 54);
    int arcs = 0, segs = 0, rays = 0;
    for (const auto& p : contour_pieces()) {
        if (p.kind == PieceKind::Arc) ++arcs;
        if (p.kind == PieceKind::Segment) ++segs;
        if (p.kind == PieceKind::Ray) ++rays;
    }
    CHECK(arcs == 18);
    CHECK(segs == 18);
    CHECK(rays == 18);
    CHECK(piece(PieceKind::Arc, 7).id() == "G7");
    CHECK(piece(PieceKind::Segment, 7).id() == "G7p");
    CHECK(piece(PieceKind::Ray, 7).id() == "G7pp");
    CHECK_THROWS_AS(piece(PieceKind::Ray, 19), InvalidInput);
    CHECK(contour_star().size() == 19);
    check_close(contour_star()[18], 0.0, 0.0);
}

TEST_CASE("ray angles") {
    const auto& a = ray_angles();
    check_close(std::polar(1.0, a[1]), cplx(0, 1), 1e-15);    // upper imaginary axis
    check_close(std::polar(1.0, a[10]), cplx(0, -1), 1e-15);  // lower imaginary axis
    check_close(std::polar(1.0, a[3]), std::polar(1.0, 3 * M_PI / 4), 1e-15);
    check_close(std::polar(1.0, a[12]), std::polar(1.0, -M_PI / 4), 1e-15);
    // no ray along the real axis: the positive real axis is region interior
    for (int n = 1; n <= 18; ++n) CHECK(std::abs(std::sin(a[n])) > 0.2);
}

TEST_CASE("region classification") {
    CHECK(classify(cplx(2.0, 0.0)) == RegionId::D(14));
    CHECK(classify(cplx(0.5, 0.0)) == RegionId::E(14));
    CHECK(classify(cplx(-2.0, 0.0)) == RegionId::D(5));
    CHECK(classify(std::polar(2.0, M_PI / 2)).on_boundary()); // on ray 1
    CHECK(classify(std::polar(1.0, 0.3)).on_boundary());      // on the circle
    CHECK(RegionId::D(14).f_index() == 14);
    CHECK(RegionId::E(3).f_index() == 21);
    CHECK(RegionId::D(14).name() == "D14");

    CHECK(sector_of(cplx(2.0, 0.1)) == 14);
    CHECK(sector_of(std::polar(1.0, M_PI / 2 + 0.01)) == 1);
    CHECK(sector_of(std::polar(1.0, 3 * M_PI / 4 + 0.01)) == 3);
}

TEST_CASE("piece sampling") {
    for (const auto& pc : contour_pieces()) {
        const auto pts = sample_piece(pc, 3);
        CHECK(pts.size() == 3);
        for (cplx k : pts) {
            if (pc.kind == PieceKind::Arc) CHECK(std::abs(std::abs(k) - 1.0) < 1e-12);
            if (pc.kind == PieceKind::Segment) CHECK(std::abs(k) < 1.0);
            if (pc.kind == PieceKind::Ray) {
                CHECK(std::abs(k) > 1.0);
                CHECK(std::abs(k) < 6.0 + 1e-12);
            }
            if (pc.kind != PieceKind::Arc) {
                // radial pieces stay on their ray
                check_close(k / std::abs(k), std::polar(1.0, pc.theta1), 1e-12);
            }
            for (cplx s : contour_star()) CHECK(std::abs(k - s) > kExclusionRadius);
        }
    }
    CHECK_THROWS_AS(sample_piece(piece(PieceKind::Ray, 1), 0), InvalidInput);
}

TEST_CASE("normal offsets straddle the piece") {
    const double h = 1e-3;
    SUBCASE("ray: travel outward, plus side counterclockwise") {
        const ContourPiece& pc = piece(PieceKind::Ray, 1); // upper imaginary axis
        const SidePoints sp = normal_offsets(pc, cplx(0, 2), h);
        CHECK(sp.k_plus.real() < 0);
        CHECK(sp.k_minus.real() > 0);
        check_close(sp.k_plus, cplx(-h, 2), 1e-15);
    }
    SUBCASE("arc: plus side is the disk interior for counterclockwise travel") {
        const ContourPiece& pc = piece(PieceKind::Arc, 1);
        REQUIRE(pc.ccw);
        const cplx k = sample_piece(pc, 1)[0];
        const SidePoints sp = normal_offsets(pc, k, h);
        CHECK(std::abs(sp.k_plus) < 1.0);
        CHECK(std::abs(sp.k_minus) > 1.0);
    }
    SUBCASE("clockwise arc swaps the sides") {
        const ContourPiece& pc = piece(PieceKind::Arc, 4);
        REQUIRE(!pc.ccw);
        const cplx k = sample_piece(pc, 1)[0];
        const SidePoints sp = normal_offsets(pc, k, h);
        CHECK(std::abs(sp.k_plus) > 1.0);
        CHECK(std::abs(sp.k_minus) < 1.0);
    }
}

TEST_CASE("column boundedness domains") {
    // On the circle every column is in its closed domain.
    const cplx kc = std::polar(1.0, 0.7);
    for (int c = 1; c <= 3; ++c) {
        CHECK(in_domain(FnTag::s, c, kc));
        CHECK(in_domain(FnTag::sA, c, kc));
    }
    // Off the circle only some columns survive (cross-checked against the
    // integrated eigenfunction growth): at 135 degrees inside the disk the
    // direct function keeps column 1 and the adjoint keeps column 3.
    const cplx k3 = std::polar(0.125, 3 * M_PI / 4);
    CHECK(in_domain(FnTag::s, 1, k3));
    CHECK(!in_domain(FnTag::s, 2, k3));
    CHECK(!in_domain(FnTag::s, 3, k3));
    CHECK(in_domain(FnTag::sA, 3, k3));
    CHECK(!in_domain(FnTag::sA, 1, k3));
}
