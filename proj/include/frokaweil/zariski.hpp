#pragma once

#include <vector>

#include "frokaweil/ncpoly.hpp"

namespace frokaweil {

/// Word-evaluation matrix at a base point: column t is the row-major
/// vectorization of the t-th word (graded length-then-lex order) evaluated at
/// the base tuple. Its kernel is the coefficient space of the degree-capped
/// vanishing ideal.
struct EvaluationMatrix {
    MatrixTuple base;
    int D = 0;
    std::vector<Word> words;
    Matrix E; // n^2 x W

    EvaluationMatrix(MatrixTuple base_, int D_, std::vector<Word> words_, Matrix E_)
        : base(std::move(base_)), D(D_), words(std::move(words_)), E(std::move(E_)) {}
};

EvaluationMatrix evaluation_matrix(const MatrixTuple& base, int D,
                                   std::size_t cap = kDefaultWordCap);

// singular values above rank_tol; rank_tol < 0 selects the default policy
// 1e-10 * sigma_max * max(n^2, W)
int numeric_rank(const Matrix& M, double rank_tol = -1.0);

struct IdealBasis {
    MatrixTuple base;
    int D = 0;
    std::vector<FreePolynomial> polys; // orthonormal coefficient vectors spanning ker E
    double rank_tol = 0.0;
    std::vector<int> ranks_per_degree; // rank of E_D' for D' = 0..D
};

// Orthonormal kernel basis of the evaluation matrix via SVD; every basis
// element vanishes at the base point to within the rank tolerance.
IdealBasis ideal_basis(const MatrixTuple& base, int D, double rank_tol = -1.0,
                       std::size_t cap = kDefaultWordCap);

// Smallest D with rank(E_D) == rank(E_{D+1}); always <= level^2. Beyond it
// the span of word evaluations is closed under appending letters, hence equal
// to the span over the full algebra. Throws when `cap_degree` (default
// level^2 + 1) is exceeded, reporting the partial ranks in the message.
int stabilization_degree(const MatrixTuple& base, int cap_degree = -1,
                         std::size_t word_cap = kDefaultWordCap);

struct ZariskiVerdict {
    bool member = false;
    double max_defect = 0.0;
    int D = 0; // the verdict is "up to degree D" by contract
};

// x is (truncatedly) in the vanishing locus of the base's ideal when every
// ideal basis element evaluates to ~0 at x; defects are normalized by
// 1 + ||coeffs|| * max_j ||x_j||^{deg}.
ZariskiVerdict in_zariski(const MatrixTuple& base, const MatrixTuple& x, int D, double tol);
ZariskiVerdict in_zariski_with_basis(const IdealBasis& basis, const MatrixTuple& x, double tol);

struct Interpolant {
    FreePolynomial poly;
    double residual = 0.0;
};

// Minimal-norm least-squares solution of E c = vec(target); the polynomial is
// assembled from c over the word list. Exact (residual ~ 0) whenever the
// target lies in the evaluation span, which holds for transfer-function
// values at the base once D reaches the stabilization degree.
Interpolant interpolate(const Matrix& target, const MatrixTuple& base, int D,
                        std::size_t cap = kDefaultWordCap);

// row-major vectorization, the normative convention for E's columns
Eigen::VectorXcd vec_row_major(const Matrix& M);

} // namespace frokaweil
