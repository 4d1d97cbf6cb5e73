#include <doctest.h>

#include <cmath>

#include "frokaweil/mattuple.hpp"
#include "frokaweil/ncpoly.hpp"

using namespace frokaweil;

namespace {

// Independent oracle for 2x2 operator norms: maximize ||M v|| over unit
// vectors v = (cos t, e^{i phi} sin t) on a grid, then refine locally.
double brute_force_norm_2x2(const Matrix& M) {
    REQUIRE(M.rows() == 2);
    REQUIRE(M.cols() == 2);
    auto value = [&](double t, double phi) {
        Eigen::Vector2cd v(std::cos(t), std::polar(std::sin(t), phi));
        return (M * v).norm();
    };
    double best = 0.0, bt = 0.0, bphi = 0.0;
    const double pi = 3.14159265358979323846;
    double t_lo = 0.0, t_hi = pi / 2, p_lo = 0.0, p_hi = 2 * pi;
    int steps = 200;
    for (int round = 0; round < 4; ++round) {
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
                const double t = t_lo + (t_hi - t_lo) * i / steps;
                const double phi = p_lo + (p_hi - p_lo) * j / steps;
                const double val = value(t, phi);
                if (val > best) {
                    best = val;
                    bt = t;
                    bphi = phi;
                }
            }
        const double dt = (t_hi - t_lo) / steps, dp = (p_hi - p_lo) / steps;
        t_lo = bt - 2 * dt;
        t_hi = bt + 2 * dt;
        p_lo = bphi - 2 * dp;
        p_hi = bphi + 2 * dp;
        steps = 40;
    }
    return best;
}

} // namespace

TEST_CASE("spectral norm: simple exact values") {
    Matrix M(2, 2);
    M << Complex(0, 0), Complex(2, 0), Complex(0, 0), Complex(0, 0);
    CHECK(spectral_norm(M) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(spectral_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("spectral norm: golden ratio for the unipotent Jordan block") {
    Matrix M(2, 2);
    M << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
    const double phi = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
    CHECK(spectral_norm(M) == doctest::Approx(phi).epsilon(1e-12));
    CHECK(phi == doctest::Approx(1.6180339887).epsilon(1e-9));
}

TEST_CASE("spectral norm agrees with the brute-force 2x2 oracle") {
    Rng rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        const Matrix M = random_gaussian(2, 2, rng);
        CHECK(spectral_norm(M) == doctest::Approx(brute_force_norm_2x2(M)).epsilon(1e-9));
    }
}

TEST_CASE("spectral norm invariances") {
    Rng rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const Matrix M = random_gaussian(n, n, rng);
        const Matrix U = random_unitary(n, rng);
        const Matrix W = random_unitary(n, rng);
        const double nm = spectral_norm(M);
        CHECK(std::abs(spectral_norm(M.adjoint()) - nm) <= 1e-10 * (1 + nm));
        CHECK(std::abs(spectral_norm(U * M * W) - nm) <= 1e-10 * (1 + nm));
    }
}

TEST_CASE("spectral norm rejects bad input") {
    Matrix M(1, 1);
    M(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(spectral_norm(M), std::invalid_argument);
}

TEST_CASE("direct_sum: block layout and ampliation") {
    const MatrixTuple x = random_tuple(1, 2, 1.0, 5u);
    const MatrixTuple y = random_tuple(2, 2, 1.0, 6u);
    const MatrixTuple xy = direct_sum(x, y);
    CHECK(xy.level == 3);
    for (int j = 0; j < 2; ++j) {
        CHECK((xy.mats[j].topLeftCorner(1, 1) - x.mats[j]).norm() == 0.0);
        CHECK((xy.mats[j].bottomRightCorner(2, 2) - y.mats[j]).norm() == 0.0);
        CHECK(xy.mats[j].topRightCorner(1, 2).norm() == 0.0);
        CHECK(xy.mats[j].bottomLeftCorner(2, 1).norm() == 0.0);
    }
    const MatrixTuple xx = direct_sum(x, x);
    const MatrixTuple amp = ampliate(x, 2);
    for (int j = 0; j < 2; ++j) CHECK((xx.mats[j] - amp.mats[j]).norm() == 0.0);

    const MatrixTuple a = random_tuple(2, 2, 1.0, 7u);
    CHECK_THROWS_AS(direct_sum(a, random_tuple(2, 3, 1.0, 8u)), std::invalid_argument);
}

TEST_CASE("direct_sum is associative, entry-exact") {
    const MatrixTuple a = random_tuple(1, 2, 1.0, 21u);
    const MatrixTuple b = random_tuple(2, 2, 1.0, 22u);
    const MatrixTuple c = random_tuple(3, 2, 1.0, 23u);
    const MatrixTuple lhs = direct_sum(direct_sum(a, b), c);
    const MatrixTuple rhs = direct_sum(a, direct_sum(b, c));
    for (int j = 0; j < 2; ++j) CHECK((lhs.mats[j] - rhs.mats[j]).norm() == 0.0);
}

TEST_CASE("ampliate: identity at k=1 and block repetition") {
    const MatrixTuple x = random_tuple(2, 2, 1.0, 9u);
    const MatrixTuple same = ampliate(x, 1);
    CHECK(same.level == 2);
    for (int j = 0; j < 2; ++j) CHECK((same.mats[j] - x.mats[j]).norm() == 0.0);
    const MatrixTuple big = ampliate(x, 3);
    CHECK(big.level == 6);
    for (int j = 0; j < 2; ++j)
        for (int c = 0; c < 3; ++c)
            CHECK((big.mats[j].block(2 * c, 2 * c, 2, 2) - x.mats[j]).norm() == 0.0);

    // polynomials respect ampliation
    const FreePolynomial p = parse_poly("x1*x2 + 2*x2^2", 2);
    const Matrix small = eval_poly(p, x);
    const Matrix lifted = eval_poly(p, big);
    for (int c = 0; c < 3; ++c) CHECK((lifted.block(2 * c, 2 * c, 2, 2) - small).norm() <= 1e-14);
}

TEST_CASE("conjugate: identity, unitary norm preservation, singular rejection") {
    const MatrixTuple x = random_tuple(3, 2, 1.0, 10u);
    const MatrixTuple same = conjugate(x, Matrix::Identity(3, 3));
    for (int j = 0; j < 2; ++j) CHECK((same.mats[j] - x.mats[j]).norm() <= 1e-14);

    Rng rng(77);
    const Matrix U = random_unitary(3, rng);
    const MatrixTuple rot = conjugate(x, U);
    for (int j = 0; j < 2; ++j)
        CHECK(std::abs(spectral_norm(rot.mats[j]) - spectral_norm(x.mats[j])) <= 1e-10);

    double cond = 0.0;
    conjugate(x, random_similarity(3, 50.0, rng), &cond);
    CHECK(cond <= 50.0 + 1e-6);
    CHECK_THROWS_AS(conjugate(x, Matrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("check_intertwine: identity, projection, and random rejection") {
    const MatrixTuple x = random_tuple(2, 2, 1.0, 30u);
    const auto same = check_intertwine(x, x, Matrix::Identity(2, 2), 1e-12);
    CHECK(same.ok);
    CHECK(same.defect == 0.0);

    const MatrixTuple b = random_tuple(3, 2, 1.0, 31u);
    const MatrixTuple ab = direct_sum(x, b);
    Matrix proj = Matrix::Zero(2, 5);
    proj.leftCols(2) = Matrix::Identity(2, 2);
    CHECK(check_intertwine(ab, x, proj, 1e-12).ok);

    Rng rng(32);
    const MatrixTuple y = random_tuple(2, 2, 1.0, 33u);
    const auto bad = check_intertwine(x, y, random_gaussian(2, 2, rng), 1e-9);
    CHECK(!bad.ok);
    CHECK(bad.defect > 1e-3);
}

TEST_CASE("compress: identity, block inclusion, and hand oracle") {
    const MatrixTuple x = random_tuple(2, 2, 1.0, 40u);
    const MatrixTuple same = compress(x, Matrix::Identity(2, 2));
    for (int j = 0; j < 2; ++j) CHECK((same.mats[j] - x.mats[j]).norm() == 0.0);

    const MatrixTuple y = random_tuple(3, 2, 1.0, 41u);
    const MatrixTuple xy = direct_sum(x, y);
    Matrix V = Matrix::Zero(5, 2);
    V.topLeftCorner(2, 2) = Matrix::Identity(2, 2);
    const MatrixTuple back = compress(xy, V);
    for (int j = 0; j < 2; ++j) CHECK((back.mats[j] - x.mats[j]).norm() == 0.0);

    // V = (e1+e2)/sqrt(2) against a single Jordan cell gives the scalar 1/2
    Matrix J(2, 2);
    J << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
    Matrix v(2, 1);
    v << Complex(1.0 / std::sqrt(2.0), 0), Complex(1.0 / std::sqrt(2.0), 0);
    const MatrixTuple jt(1, 2, {J});
    const MatrixTuple scalar = compress(jt, v);
    CHECK(std::abs(scalar.mats[0](0, 0) - Complex(0.5, 0)) <= 1e-14);

    Matrix notIso(2, 1);
    notIso << Complex(1, 0), Complex(1, 0);
    CHECK_THROWS_AS(compress(x, notIso), std::invalid_argument);
}

TEST_CASE("compress after ampliate with the first block inclusion is exact") {
    const MatrixTuple x = random_tuple(3, 2, 0.8, 42u);
    const MatrixTuple big = ampliate(x, 3);
    Matrix V = Matrix::Zero(9, 3);
    V.topLeftCorner(3, 3) = Matrix::Identity(3, 3);
    const MatrixTuple back = compress(big, V);
    for (int j = 0; j < 2; ++j) CHECK((back.mats[j] - x.mats[j]).norm() == 0.0);
}

TEST_CASE("random generators are deterministic and well-scaled") {
    const MatrixTuple a = random_tuple(3, 2, 0.5, 1234u);
    const MatrixTuple b = random_tuple(3, 2, 0.5, 1234u);
    for (int j = 0; j < 2; ++j) CHECK((a.mats[j] - b.mats[j]).norm() == 0.0);
    double mx = 0.0;
    for (int j = 0; j < 2; ++j) mx = std::max(mx, spectral_norm(a.mats[j]));
    CHECK(mx <= 0.5 + 1e-12);
    CHECK(mx >= 0.5 - 1e-12); // rescaling makes the max exact

    const Matrix U = random_unitary(4, 777u);
    CHECK(isometry_defect(U) <= 1e-12);
    const Matrix U2 = random_unitary(4, 777u);
    CHECK((U - U2).norm() == 0.0);

    const Matrix V = random_isometry(5, 2, 88u);
    CHECK(V.rows() == 5);
    CHECK(V.cols() == 2);
    CHECK(isometry_defect(V) <= 1e-12);
    CHECK_THROWS_AS(random_isometry(2, 5, 1u), std::invalid_argument);
}
