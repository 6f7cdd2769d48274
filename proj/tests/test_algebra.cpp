#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

using namespace bqscat;
using namespace bqscat::testutil;

namespace {
const Complex3x3 kA = mat({cplx(1, 2), 0.5, cplx(0, -1),   //
                           0, cplx(2, -1), 1,              //
                           3, 0, cplx(1, 1)});
const Complex3x3 kB = mat({cplx(0.3, -0.7), 1, 2,          //
                           cplx(0, 0.1), -1, 0.4,          //
                           cplx(1, 1), 0.2, cplx(0, -0.5)});
} // namespace

TEST_CASE("constructors and accessors") {
    const Complex3x3 id = Complex3x3::identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));
    const Complex3x3 d = Complex3x3::diag(1.0, cplx(0, 2), -3.0);
    CHECK(d(1, 1) == cplx(0, 2));
    CHECK(d(0, 1) == 0.0);
    CHECK(max_abs(Complex3x3::zero()) == 0.0);
}

TEST_CASE("determinant, product, norms against fixed references") {
    check_close(det(kA), cplx(5.5, 13.0), 1e-13);
    check_close(matmul(kA, kB)(1, 2), cplx(0.8, -0.9), 1e-13);
    CHECK(frobenius(kA) == doctest::Approx(4.8218253804964775).epsilon(1e-13));
}

TEST_CASE("inverse against fixed references and identities") {
    const Complex3x3 inv = inverse(kA);
    check_close(inv(0, 2), cplx(1.7189460476787954e-01, -4.2659974905897083e-02), 1e-13);
    check_close(inv(2, 0), cplx(3.0112923462986146e-02, 4.7427854454203261e-01), 1e-13);
    CHECK(dist(matmul(kA, inv), Complex3x3::identity()) < 1e-13);

    // adjugate identity: transpose(cofactor(A)) = det(A) * A^{-1}
    const Complex3x3 adj = transpose(cofactor(kA));
    CHECK(dist(adj, det(kA) * inv) < 1e-12);

    Complex3x3 sing = kA;
    for (int j = 0; j < 3; ++j) sing(2, j) = sing(0, j); // repeated row
    CHECK_THROWS_AS(inverse(sing), SingularMatrix);
}

TEST_CASE("matvec and transpose") {
    const Vec3 x = {1.0, cplx(0, 1), -2.0};
    const Vec3 y = matvec(kA, x);
    check_close(y[0], kA(0, 0) * x[0] + kA(0, 1) * x[1] + kA(0, 2) * x[2], 1e-14);
    CHECK(transpose(kA)(0, 2) == kA(2, 0));
    CHECK(dist(transpose(transpose(kA)), kA) == 0.0);
}

TEST_CASE("diagonal conjugation exponential") {
    const Diag3 d = {cplx(0.3, 1.1), cplx(-0.2, 0.0), cplx(0.0, -2.0)};
    const Complex3x3 r = conj_exp(d, kA);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            check_close(r(i, j), std::exp(d[i] - d[j]) * kA(i, j), 1e-13);

    // exponent clamp: flag is set instead of throwing when requested
    const Diag3 big = {800.0, 0.0, 0.0};
    bool risk = false;
    const Complex3x3 c = conj_exp(big, kA, 700.0, &risk);
    CHECK(risk);
    CHECK(c.finite());
    CHECK_THROWS_AS(conj_exp(big, kA), OverflowRisk);
}

TEST_CASE("structural constants") {
    const auto& sc = constants();
    check_close(sc.omega, std::polar(1.0, 2 * M_PI / 3), 1e-15);
    check_close(sc.omega * sc.omega * sc.omega, 1.0, 1e-15);
    check_close(1.0 + sc.omega + sc.omega * sc.omega, 0.0, 1e-15);

    CHECK(dist(sc.matA * sc.matA * sc.matA, Complex3x3::identity()) == 0.0);
    CHECK(dist(sc.matB * sc.matB, Complex3x3::identity()) == 0.0);

    // conjugation by the cyclic matrix permutes indices: for every unit
    // matrix E_ij, A E_ij A^{-1} = E_{sigma(i) sigma(j)} for one fixed sigma.
    const Complex3x3 a_inv = inverse(sc.matA);
    int sigma[3] = {-1, -1, -1};
    for (int i = 0; i < 3; ++i) {
        Complex3x3 eii;
        eii(i, i) = 1.0;
        const Complex3x3 m = sc.matA * eii * a_inv;
        for (int p = 0; p < 3; ++p)
            if (std::abs(m(p, p) - 1.0) < 1e-15) sigma[i] = p;
        CHECK(sigma[i] >= 0);
    }
    CHECK(sigma[0] != sigma[1]);
    CHECK(sigma[1] != sigma[2]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex3x3 eij;
            eij(i, j) = 1.0;
            Complex3x3 want;
            want(sigma[i], sigma[j]) = 1.0;
            CHECK(dist(sc.matA * eij * a_inv, want) < 1e-15);
        }
}
