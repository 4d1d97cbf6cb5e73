#include <doctest.h>

#include "frokaweil/experiments.hpp"

using namespace frokaweil;

TEST_CASE("scale_into_domain reaches the target for letter rows") {
    const MatrixPolyQ Q = make_Q(2, {{"x1", "x2"}});
    Rng rng(120);
    const MatrixTuple raw = random_tuple(3, 2, 2.0, rng);
    const MatrixTuple in = scale_into_domain(Q, raw, 0.9);
    CHECK(in_DQ(Q, in).norm <= 0.9 + 1e-12);
    CHECK(in_DQ(Q, in).norm >= 0.5); // degree-1 scaling is exact
}

TEST_CASE("okaweil_exact: polynomial transfer functions are represented exactly") {
    // A = 0 makes f itself a polynomial, so every defect is float noise
    Matrix A = Matrix::Zero(1, 1), B = Matrix::Ones(1, 1), C = Matrix::Ones(1, 1);
    const Colligation col(1, 1, 1, A, B, C, Complex(0, 0));
    const MatrixPolyQ Q = make_Q(1, {{"x1"}});
    Rng rng(121);
    const MatrixTuple base = scale_into_domain(Q, random_tuple(2, 1, 1.0, rng), 0.9);
    const ExperimentReport rep = okaweil_exact(col, Q, base, 20, 1e-8, 7u);
    CHECK(rep.pass);
    CHECK(rep.summary["interpolation_residual"].get<double>() <= 1e-10);
    for (const auto& p : rep.points)
        if (p.id != "negative_control") CHECK(p.defect <= 1e-10);
}

TEST_CASE("okaweil_exact on a random configuration, with negative control") {
    const RealizationConfig cfg = make_realization_config(0, 42u);
    const ExperimentReport rep = okaweil_exact(cfg.col, cfg.Q, cfg.base, 25, 1e-8, 42u);
    CHECK(rep.pass);
    CHECK(rep.summary["negative_control_found"].get<bool>());
    CHECK(rep.summary["negative_control_defect"].get<double>() > 1e-3);
    CHECK(!rep.summary["near_boundary_flag"].get<bool>());
}

TEST_CASE("okaweil_exact rejects a base without margin") {
    Matrix A = Matrix::Zero(1, 1), B = Matrix::Ones(1, 1), C = Matrix::Ones(1, 1);
    const Colligation col(1, 1, 1, A, B, C, Complex(0, 0));
    const MatrixPolyQ Q = make_Q(1, {{"x1"}});
    Matrix z(1, 1);
    z(0, 0) = Complex(0.99, 0);
    CHECK_THROWS_AS(okaweil_exact(col, Q, MatrixTuple(1, 1, {z}), 5, 1e-8, 1u),
                    std::invalid_argument);
}

TEST_CASE("uniform convergence table decreases and certifies exactness at large N") {
    const Colligation col = random_colligation(1, 1, 2, 130u, ColligationMode::Unitary);
    const MatrixPolyQ Q = make_Q(1, {{"x1"}});
    Rng rng(131);
    const MatrixTuple base = scale_into_domain(Q, random_tuple(2, 1, 1.0, rng), 0.9);
    const ExperimentReport rep =
        uniform_convergence_table(col, Q, base, 15, {0, 5, 10, 20, 40, 80, 160, 320, 400}, 1.0, 132u);
    CHECK(rep.pass);
    CHECK(rep.summary["final_error"].get<double>() <= 1e-8);
    CHECK(rep.summary["monotone"].get<bool>());
    // partial sums differ from f at N = 0 for a nonconstant function
    CHECK(rep.points.front().defect > 1e-6);
}

TEST_CASE("uniform convergence is exact at every N for nilpotent series") {
    Matrix A = Matrix::Zero(1, 1), B = Matrix::Ones(1, 1), C = Matrix::Ones(1, 1);
    const Colligation col(1, 1, 1, A, B, C, Complex(0, 0));
    const MatrixPolyQ Q = make_Q(1, {{"x1"}});
    Rng rng(133);
    const MatrixTuple base = scale_into_domain(Q, random_tuple(2, 1, 1.0, rng), 0.9);
    const ExperimentReport rep = uniform_convergence_table(col, Q, base, 10, {0, 1, 2}, 1.0, 134u);
    CHECK(rep.pass);
    for (const auto& p : rep.points) CHECK(p.defect <= 1e-12);
}

TEST_CASE("scaled norm experiment holds the bound on the r grid") {
    const Colligation col = random_colligation(1, 2, 1, 140u, ColligationMode::Contractive);
    const MatrixPolyQ Q = make_Q(2, {{"x1", "x2"}});
    const ExperimentReport rep = scaled_norm_experiment(col, Q, {0.5, 0.9, 0.99}, 40, 141u);
    CHECK(rep.pass);
    int prev_n0 = -1;
    for (const auto& entry : rep.summary["per_r"]) {
        const int n0 = entry["N0"].get<int>();
        CHECK(n0 >= prev_n0); // certified bound is monotone in r
        prev_n0 = n0;
        CHECK(entry["sampled_sup"].get<double>() <= 1.0 + 1e-9);
    }
    CHECK(rep.summary["approx_error_decreasing"].get<bool>());
}

TEST_CASE("nc axiom suite passes and its negative control fails") {
    const ExperimentReport rep = nc_axiom_suite(150u, 24);
    CHECK(rep.pass);
    CHECK(rep.summary["negative_control_failed_as_expected"].get<bool>());
    bool saw_negative = false;
    for (const auto& p : rep.points)
        if (p.id == "non_nc_negative_control") {
            saw_negative = true;
            CHECK(p.defect > 1e-6);
        }
    CHECK(saw_negative);
}

TEST_CASE("reports are deterministic byte-for-byte") {
    const RealizationConfig cfg = make_realization_config(1, 160u);
    const ExperimentReport a = okaweil_exact(cfg.col, cfg.Q, cfg.base, 10, 1e-8, 161u);
    const ExperimentReport b = okaweil_exact(cfg.col, cfg.Q, cfg.base, 10, 1e-8, 161u);
    CHECK(report_to_json(a).dump(2) == report_to_json(b).dump(2));
    CHECK(report_to_csv(a) == report_to_csv(b));
    const std::string csv = report_to_csv(a);
    CHECK(csv.rfind("point_id,level,defect,norm,pass\n", 0) == 0);
}

TEST_CASE("exactness subsumes approximation on shared data") {
    const RealizationConfig cfg = make_realization_config(2, 170u);
    const ExperimentReport exact = okaweil_exact(cfg.col, cfg.Q, cfg.base, 12, 1e-8, 171u);
    REQUIRE(exact.pass);
    const ExperimentReport table =
        uniform_convergence_table(cfg.col, cfg.Q, cfg.base, 12, {0, 30, 60, 120, 240, 480}, 1.0, 171u);
    CHECK(table.pass);
}
