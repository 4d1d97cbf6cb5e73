#include <doctest.h>

#include "frokaweil/domain.hpp"

using namespace frokaweil;

TEST_CASE("eval_Q: scalar entry") {
    const MatrixPolyQ Q = make_Q(1, {{"x1"}});
    Matrix z1(1, 1);
    z1(0, 0) = Complex(0.5, 0);
    const MatrixTuple z(1, 1, {z1});
    const Matrix out = eval_Q(Q, z);
    REQUIRE(out.rows() == 1);
    CHECK(out(0, 0) == Complex(0.5, 0));
    CHECK(in_DQ(Q, z).member);
    CHECK(in_DQ(Q, z).norm == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("eval_Q: row layout gives [z1 z2]") {
    const MatrixPolyQ Q = make_Q(2, {{"x1", "x2"}});
    const MatrixTuple z = random_tuple(3, 2, 1.0, 50u);
    const Matrix out = eval_Q(Q, z);
    REQUIRE(out.rows() == 3);
    REQUIRE(out.cols() == 6);
    CHECK((out.leftCols(3) - z.mats[0]).norm() == 0.0);
    CHECK((out.rightCols(3) - z.mats[1]).norm() == 0.0);
}

TEST_CASE("eval_Q: commutator entry vanishes at commuting points") {
    const MatrixPolyQ Q = make_Q(2, {{"x1*x2 - x2*x1"}});
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a.diagonal() << Complex(1, 0), Complex(2, 0);
    b.diagonal() << Complex(3, 0), Complex(4, 0);
    CHECK(eval_Q(Q, MatrixTuple(2, 2, {a, b})).norm() == 0.0);
}

TEST_CASE("in_DQ: boundary is excluded and margins bite") {
    const MatrixPolyQ Q = make_Q(1, {{"x1"}});
    Matrix one(1, 1);
    one(0, 0) = Complex(1.0, 0);
    CHECK(!in_DQ(Q, MatrixTuple(1, 1, {one})).member);
    Matrix v(1, 1);
    v(0, 0) = Complex(0.93, 0);
    CHECK(in_DQ(Q, MatrixTuple(1, 1, {v})).member);
    CHECK(!in_DQ(Q, MatrixTuple(1, 1, {v}), 0.1).member);
}

TEST_CASE("membership is closed under direct sums with the max norm") {
    const MatrixPolyQ Q = make_Q(2, {{"x1", "x2"}});
    Rng rng(60);
    for (int trial = 0; trial < 8; ++trial) {
        const MatrixTuple a = random_tuple(2, 2, 0.4, rng);
        const MatrixTuple b = random_tuple(3, 2, 0.3, rng);
        const auto ma = in_DQ(Q, a);
        const auto mb = in_DQ(Q, b);
        REQUIRE(ma.member);
        REQUIRE(mb.member);
        const auto mab = in_DQ(Q, direct_sum(a, b));
        CHECK(mab.member);
        CHECK(mab.norm == doctest::Approx(std::max(ma.norm, mb.norm)).epsilon(1e-12));
    }
}

TEST_CASE("degree-1 homogeneous norm scales linearly") {
    const MatrixPolyQ Q = make_Q(2, {{"x1", "x2"}, {"x2", "x1"}});
    Rng rng(61);
    const MatrixTuple z = random_tuple(2, 2, 1.0, rng);
    const double n1 = in_DQ(Q, z).norm;
    for (double t : {0.5, 0.25, 0.125}) {
        std::vector<Matrix> ms;
        for (const auto& m : z.mats) ms.push_back(t * m);
        const double nt = in_DQ(Q, MatrixTuple(2, 2, std::move(ms))).norm;
        CHECK(std::abs(nt - t * n1) <= 1e-10 * (1 + n1));
    }
}

TEST_CASE("unitary conjugation preserves membership and norm") {
    const MatrixPolyQ Q = make_Q(2, {{"x1", "x2"}});
    Rng rng(62);
    for (int trial = 0; trial < 6; ++trial) {
        const MatrixTuple z = random_tuple(3, 2, 0.7, rng);
        const Matrix U = random_unitary(3, rng);
        const MatrixTuple zu = conjugate(z, U);
        const auto m0 = in_DQ(Q, z);
        const auto m1 = in_DQ(Q, zu);
        CHECK(m0.member == m1.member);
        CHECK(std::abs(m0.norm - m1.norm) <= 1e-10 * (1 + m0.norm));
    }
}

TEST_CASE("Q construction validates shapes and alphabets") {
    CHECK_THROWS_AS(make_Q(2, {{"x1", "x2"}, {"x1"}}), std::invalid_argument);
    const MatrixPolyQ Q = make_Q(2, {{"x1"}});
    CHECK_THROWS_AS(eval_Q(Q, random_tuple(2, 3, 1.0, 1u)), std::invalid_argument);
    std::vector<FreePolynomial> mixed{FreePolynomial::letter(1, 1), FreePolynomial::letter(2, 1)};
    CHECK_THROWS_AS(MatrixPolyQ(1, 2, std::move(mixed)), std::invalid_argument);
}
