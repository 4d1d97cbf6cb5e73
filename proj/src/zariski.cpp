#include "frokaweil/zariski.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

namespace frokaweil {

Eigen::VectorXcd vec_row_major(const Matrix& M) {
    Eigen::VectorXcd v(M.rows() * M.cols());
    Eigen::Index t = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) v(t++) = M(i, j);
    return v;
}

EvaluationMatrix evaluation_matrix(const MatrixTuple& base, int D, std::size_t cap) {
    if (D < 0) throw std::invalid_argument("evaluation_matrix: D must be >= 0");
    std::vector<Word> words = words_up_to(base.d, D, cap);
    const int n = base.level;
    const std::size_t W = words.size();
    Matrix E(n * n, static_cast<Eigen::Index>(W));

    // evaluations grow one letter at a time; words_up_to enumerates each
    // length block as (parent words in order) x (letters 1..d)
    std::vector<Matrix> evals;
    evals.reserve(W);
    evals.push_back(Matrix::Identity(n, n));
    E.col(0) = vec_row_major(evals[0]);
    std::size_t level_begin = 0, level_end = 1, t = 1;
    for (int len = 1; len <= D && t < W; ++len) {
        for (std::size_t parent = level_begin; parent < level_end; ++parent)
            for (int l = 1; l <= base.d; ++l) {
                evals.push_back(evals[parent] * base.mats[static_cast<std::size_t>(l - 1)]);
                E.col(static_cast<Eigen::Index>(t)) = vec_row_major(evals.back());
                ++t;
            }
        level_begin = level_end;
        level_end = evals.size();
    }
    return EvaluationMatrix(base, D, std::move(words), std::move(E));
}

namespace {

double default_rank_tol(const Matrix& M, double sigma_max) {
    return 1e-10 * sigma_max * static_cast<double>(std::max(M.rows(), M.cols()));
}

} // namespace

int numeric_rank(const Matrix& M, double rank_tol) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& sv = svd.singularValues();
    const double tol = rank_tol >= 0.0 ? rank_tol : default_rank_tol(M, sv(0));
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    return rank;
}

IdealBasis ideal_basis(const MatrixTuple& base, int D, double rank_tol, std::size_t cap) {
    EvaluationMatrix em = evaluation_matrix(base, D, cap);
    Eigen::JacobiSVD<Matrix> svd(em.E, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double tol = rank_tol >= 0.0 ? rank_tol : default_rank_tol(em.E, sigma_max);
    const Eigen::Index W = em.E.cols();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;

    IdealBasis out{em.base, D, {}, tol, {}};
    const Matrix& V = svd.matrixV(); // W x W, columns beyond `rank` span the kernel
    for (Eigen::Index k = rank; k < W; ++k) {
        FreePolynomial p(base.d);
        for (Eigen::Index t = 0; t < W; ++t)
            p.add_term(em.words[static_cast<std::size_t>(t)], V(t, k));
        out.polys.push_back(std::move(p));
    }

    out.ranks_per_degree.reserve(static_cast<std::size_t>(D) + 1);
    for (int dd = 0; dd <= D; ++dd) {
        const Eigen::Index wd = static_cast<Eigen::Index>(count_words_up_to(base.d, dd));
        out.ranks_per_degree.push_back(numeric_rank(em.E.leftCols(wd), rank_tol));
    }
    return out;
}

int stabilization_degree(const MatrixTuple& base, int cap_degree, std::size_t word_cap) {
    const int n = base.level;
    if (cap_degree < 0) cap_degree = n * n + 1;
    std::vector<int> ranks;
    int prev_rank = -1;
    for (int D = 0; D <= cap_degree; ++D) {
        const int rank = numeric_rank(evaluation_matrix(base, D, word_cap).E);
        if (prev_rank >= 0 && rank == prev_rank) return D - 1;
        ranks.push_back(rank);
        prev_rank = rank;
    }
    std::string partial = "stabilization_degree: cap " + std::to_string(cap_degree) +
                          " exceeded; partial ranks:";
    for (int r : ranks) partial += " " + std::to_string(r);
    throw std::runtime_error(partial);
}

ZariskiVerdict in_zariski_with_basis(const IdealBasis& basis, const MatrixTuple& x, double tol) {
    if (basis.base.d != x.d) throw std::invalid_argument("in_zariski: alphabet mismatch");
    const double xnorm = x.max_coord_norm();
    double max_defect = 0.0;
    for (const auto& p : basis.polys) {
        const double raw = spectral_norm(eval_poly(p, x));
        const int deg = p.degree().value_or(0);
        const double growth = 1.0 + p.coeff_norm() * std::pow(xnorm, deg);
        max_defect = std::max(max_defect, raw / growth);
    }
    return {max_defect <= tol, max_defect, basis.D};
}

ZariskiVerdict in_zariski(const MatrixTuple& base, const MatrixTuple& x, int D, double tol) {
    return in_zariski_with_basis(ideal_basis(base, D), x, tol);
}

Interpolant interpolate(const Matrix& target, const MatrixTuple& base, int D, std::size_t cap) {
    const int n = base.level;
    if (target.rows() != n || target.cols() != n)
        throw std::invalid_argument("interpolate: target must match the base level");
    EvaluationMatrix em = evaluation_matrix(base, D, cap);
    const Eigen::VectorXcd b = vec_row_major(target);

    Eigen::JacobiSVD<Matrix> svd(em.E, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double tol = default_rank_tol(em.E, sigma_max);
    // minimal-norm solution: truncate directions below the rank tolerance
    Eigen::VectorXcd y = svd.matrixU().adjoint() * b;
    for (Eigen::Index i = 0; i < sv.size(); ++i) y(i) = sv(i) > tol ? y(i) / sv(i) : Complex(0.0, 0.0);
    const Eigen::VectorXcd c = svd.matrixV() * y;

    FreePolynomial p(base.d);
    for (Eigen::Index t = 0; t < c.size(); ++t)
        p.add_term(em.words[static_cast<std::size_t>(t)], c(t));
    const double residual = (em.E * c - b).norm();
    return {std::move(p), residual};
}

} // namespace frokaweil
