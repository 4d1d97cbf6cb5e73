#include <doctest.h>

#include <cmath>

#include "frokaweil/experiments.hpp"
#include "frokaweil/realization.hpp"
#include "frokaweil/zariski.hpp"

using namespace frokaweil;

namespace {

MatrixTuple scalar_tuple(double v) {
    Matrix z(1, 1);
    z(0, 0) = Complex(v, 0);
    return MatrixTuple(1, 1, {z});
}

MatrixTuple jordan_nilpotent(int n) {
    Matrix J = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = Complex(1, 0);
    return MatrixTuple(1, n, {J});
}

// coefficient vector of p over the given word list
Eigen::VectorXcd coeff_vector(const FreePolynomial& p, const std::vector<Word>& words) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(words.size()));
    for (std::size_t t = 0; t < words.size(); ++t) c(static_cast<Eigen::Index>(t)) = p.coeff(words[t]);
    return c;
}

} // namespace

TEST_CASE("evaluation_matrix: nilpotent scalar base") {
    const EvaluationMatrix em = evaluation_matrix(scalar_tuple(0.0), 2);
    REQUIRE(em.E.rows() == 1);
    REQUIRE(em.E.cols() == 3);
    CHECK(em.E(0, 0) == Complex(1, 0));
    CHECK(em.E(0, 1) == Complex(0, 0));
    CHECK(em.E(0, 2) == Complex(0, 0));
}

TEST_CASE("evaluation_matrix: scalar powers and rank bound") {
    const double t = 0.37;
    const EvaluationMatrix em = evaluation_matrix(scalar_tuple(t), 4);
    for (int len = 0; len <= 4; ++len)
        CHECK(std::abs(em.E(0, len) - Complex(std::pow(t, len), 0)) <= 1e-15);
    CHECK(numeric_rank(em.E) <= 1);

    const MatrixTuple x = random_tuple(2, 2, 1.0, 70u);
    const EvaluationMatrix em2 = evaluation_matrix(x, 3);
    CHECK(numeric_rank(em2.E) <= 4);
    CHECK(em2.words.size() == 15);
    // unit column is vec(I)
    Eigen::VectorXcd first = em2.E.col(0);
    CHECK(first(0) == Complex(1, 0));
    CHECK(first(3) == Complex(1, 0));
    CHECK(std::abs(first(1)) + std::abs(first(2)) == 0.0);
}

TEST_CASE("ideal_basis: nilpotent scalar has kernel {x1, x1^2}") {
    const IdealBasis basis = ideal_basis(scalar_tuple(0.0), 2);
    REQUIRE(basis.polys.size() == 2);
    for (const auto& p : basis.polys) {
        CHECK(std::abs(p.coeff(Word{})) <= 1e-12); // no constant part
        CHECK(spectral_norm(eval_poly(p, scalar_tuple(0.0))) <= 10.0 * basis.rank_tol);
    }
    // orthonormal coefficient vectors
    const auto words = words_up_to(1, 2);
    const Eigen::VectorXcd c0 = coeff_vector(basis.polys[0], words);
    const Eigen::VectorXcd c1 = coeff_vector(basis.polys[1], words);
    CHECK(std::abs(c0.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(c1.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(c0.dot(c1)) <= 1e-12);
}

TEST_CASE("ideal_basis: commutator lies in the span for a commuting base") {
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a.diagonal() << Complex(1, 0), Complex(2, 0);
    b.diagonal() << Complex(3, 0), Complex(4, 0);
    const MatrixTuple lam(2, 2, {a, b});
    const IdealBasis basis = ideal_basis(lam, 2);
    REQUIRE(!basis.polys.empty());

    const auto words = words_up_to(2, 2);
    Eigen::VectorXcd comm = coeff_vector(parse_poly("x1*x2 - x2*x1", 2), words);
    comm.normalize();
    Eigen::VectorXcd residual = comm;
    for (const auto& p : basis.polys) {
        const Eigen::VectorXcd c = coeff_vector(p, words);
        residual -= c.dot(comm) * c;
    }
    CHECK(residual.norm() <= 1e-10);
}

TEST_CASE("ideal_basis: trivial kernel gives an empty basis") {
    // a generic level-1 pair has evaluation span all of C at degree 0 already,
    // but the word columns are dependent; use rank == W instead: degree 0
    const MatrixTuple lam = random_tuple(2, 2, 1.0, 71u);
    const IdealBasis basis = ideal_basis(lam, 0);
    CHECK(basis.polys.empty()); // single unit column, full rank
    CHECK(basis.ranks_per_degree == std::vector<int>{1});
}

TEST_CASE("kernel correctness on random bases") {
    Rng rng(72);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(2));
        const MatrixTuple lam = random_tuple(n, 2, 1.0, rng);
        const IdealBasis basis = ideal_basis(lam, 3);
        for (const auto& p : basis.polys)
            CHECK(spectral_norm(eval_poly(p, lam)) <= 10.0 * basis.rank_tol);
    }
}

TEST_CASE("stabilization degree: scalars") {
    CHECK(stabilization_degree(scalar_tuple(0.0)) == 0);
    const int ds = stabilization_degree(scalar_tuple(0.7));
    CHECK(ds <= 1); // a 1 x W evaluation row has rank 1 from degree 0 on
}

TEST_CASE("stabilization degree: Jordan nilpotent is n-1") {
    for (int n : {2, 3, 4}) CHECK(stabilization_degree(jordan_nilpotent(n)) == n - 1);
}

TEST_CASE("stabilization degree: bounded by level squared, ranks monotone") {
    Rng rng(73);
    for (int trial = 0; trial < 4; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const MatrixTuple lam = random_tuple(n, 2, 1.0, rng);
        const int ds = stabilization_degree(lam);
        CHECK(ds <= n * n);
        int prev = 0;
        for (int D = 0; D <= ds + 1; ++D) {
            const int rank = numeric_rank(evaluation_matrix(lam, D).E);
            CHECK(rank >= prev);
            prev = rank;
        }
        CHECK(numeric_rank(evaluation_matrix(lam, ds).E) ==
              numeric_rank(evaluation_matrix(lam, ds + 1).E));
    }
}

TEST_CASE("in_zariski: base, base + base, and an explicit outsider") {
    const MatrixTuple lam = random_tuple(2, 2, 1.0, 74u);
    const int ds = stabilization_degree(lam);
    CHECK(in_zariski(lam, lam, ds, 1e-8).member);
    CHECK(in_zariski(lam, direct_sum(lam, lam), ds, 1e-8).member);

    const auto outsider = in_zariski(scalar_tuple(0.0), scalar_tuple(1.0), 2, 1e-8);
    CHECK(!outsider.member);
    CHECK(outsider.max_defect > 0.1); // x1 is in the ideal and evaluates to 1
}

TEST_CASE("interpolate: identity target needs only the unit word") {
    const MatrixTuple lam = random_tuple(3, 2, 1.0, 75u);
    const auto got = interpolate(Matrix::Identity(3, 3), lam, 2);
    CHECK(got.residual <= 1e-10);
    const Matrix back = eval_poly(got.poly, lam);
    CHECK((back - Matrix::Identity(3, 3)).norm() <= 1e-10);
}

TEST_CASE("interpolate: targets in the evaluation span are hit exactly") {
    Rng rng(76);
    const MatrixTuple lam = random_tuple(2, 2, 1.0, rng);
    for (int trial = 0; trial < 5; ++trial) {
        FreePolynomial q(2);
        for (int t = 0; t < 5; ++t) {
            const int len = static_cast<int>(rng.below(3));
            std::vector<std::uint32_t> ls;
            for (int i = 0; i < len; ++i)
                ls.push_back(1 + static_cast<std::uint32_t>(rng.below(2)));
            q.add_term(Word(std::move(ls)), rng.cgaussian());
        }
        const Matrix target = eval_poly(q, lam);
        const auto got = interpolate(target, lam, 2);
        CHECK(got.residual <= 1e-10 * (1.0 + target.norm()));
    }
}

TEST_CASE("interpolate: transfer-function target at the stabilization degree") {
    const MatrixPolyQ Q = make_Q(2, {{"x1", "x2"}});
    const Colligation col = random_colligation(1, 2, 2, 505u, ColligationMode::Contractive);
    Rng rng(506);
    const MatrixTuple raw = random_tuple(2, 2, 1.0, rng);
    const MatrixTuple lam = scale_into_domain(Q, raw, 0.9);
    const int ds = stabilization_degree(lam);
    const Matrix target = eval_closed(col, Q, lam);

    const auto at_ds = interpolate(target, lam, ds);
    CHECK(at_ds.residual <= 1e-8 * (1.0 + target.norm()));
    const auto at_next = interpolate(target, lam, ds + 1);
    CHECK(std::abs(at_ds.residual - at_next.residual) <= 1e-10);
}
