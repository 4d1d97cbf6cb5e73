#include "frokaweil/mattuple.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace frokaweil {

MatrixTuple::MatrixTuple(int d_, int level_, std::vector<Matrix> mats_)
    : d(d_), level(level_), mats(std::move(mats_)) {
    if (d < 1 || level < 1)
        throw std::invalid_argument("MatrixTuple: d and level must be positive");
    if (mats.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("MatrixTuple: expected " + std::to_string(d) + " matrices");
    for (const auto& m : mats)
        if (m.rows() != level || m.cols() != level)
            throw std::invalid_argument("MatrixTuple: all coordinates must be square of size level");
}

MatrixTuple MatrixTuple::zero(int d, int level) {
    std::vector<Matrix> ms(static_cast<std::size_t>(d), Matrix::Zero(level, level));
    return MatrixTuple(d, level, std::move(ms));
}

double MatrixTuple::max_coord_norm() const {
    double m = 0.0;
    for (const auto& mat : mats) m = std::max(m, spectral_norm(mat));
    return m;
}

double spectral_norm(const Matrix& M, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("spectral_norm: tol must be positive");
    if (!M.allFinite()) throw std::invalid_argument("spectral_norm: non-finite entries");
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    // Hermitian eigenproblem on the smaller Gram matrix
    Matrix gram;
    if (M.rows() <= M.cols())
        gram = M * M.adjoint();
    else
        gram = M.adjoint() * M;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_norm: eigensolver failed to converge");
    const double lmax = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, lmax));
}

double condition_number(const Matrix& S) {
    Eigen::JacobiSVD<Matrix> svd(S);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
    if (x.d != y.d) throw std::invalid_argument("direct_sum: variable-count mismatch");
    const int n = x.level, m = y.level;
    std::vector<Matrix> ms;
    ms.reserve(static_cast<std::size_t>(x.d));
    for (int j = 0; j < x.d; ++j) {
        Matrix b = Matrix::Zero(n + m, n + m);
        b.topLeftCorner(n, n) = x.mats[static_cast<std::size_t>(j)];
        b.bottomRightCorner(m, m) = y.mats[static_cast<std::size_t>(j)];
        ms.push_back(std::move(b));
    }
    return MatrixTuple(x.d, n + m, std::move(ms));
}

MatrixTuple ampliate(const MatrixTuple& x, int k) {
    if (k < 1) throw std::invalid_argument("ampliate: k must be >= 1");
    if (k == 1) return x;
    const int n = x.level;
    std::vector<Matrix> ms;
    ms.reserve(static_cast<std::size_t>(x.d));
    for (int j = 0; j < x.d; ++j) {
        Matrix b = Matrix::Zero(k * n, k * n);
        for (int c = 0; c < k; ++c)
            b.block(c * n, c * n, n, n) = x.mats[static_cast<std::size_t>(j)];
        ms.push_back(std::move(b));
    }
    return MatrixTuple(x.d, k * n, std::move(ms));
}

MatrixTuple conjugate(const MatrixTuple& x, const Matrix& S, double* cond_out) {
    if (S.rows() != x.level || S.cols() != x.level)
        throw std::invalid_argument("conjugate: S must be square of size level");
    Eigen::JacobiSVD<Matrix> svd(S);
    const auto& sv = svd.singularValues();
    const double smax = sv(0), smin = sv(sv.size() - 1);
    if (smin <= 1e-14 * smax)
        throw std::invalid_argument("conjugate: S is rank-deficient to tolerance");
    if (cond_out) *cond_out = smax / smin;
    // right division by S through a solve on the transposed system
    Eigen::PartialPivLU<Matrix> lu_t(S.transpose());
    std::vector<Matrix> ms;
    ms.reserve(static_cast<std::size_t>(x.d));
    for (int j = 0; j < x.d; ++j) {
        Matrix left = S * x.mats[static_cast<std::size_t>(j)];
        Matrix out = lu_t.solve(left.transpose()).transpose();
        ms.push_back(std::move(out));
    }
    return MatrixTuple(x.d, x.level, std::move(ms));
}

IntertwineResult check_intertwine(const MatrixTuple& x, const MatrixTuple& y,
                                  const Matrix& alpha, double tol) {
    if (x.d != y.d) throw std::invalid_argument("check_intertwine: variable-count mismatch");
    if (alpha.rows() != y.level || alpha.cols() != x.level)
        throw std::invalid_argument("check_intertwine: alpha must be y.level x x.level");
    double defect = 0.0;
    for (int j = 0; j < x.d; ++j) {
        const Matrix residual =
            alpha * x.mats[static_cast<std::size_t>(j)] - y.mats[static_cast<std::size_t>(j)] * alpha;
        defect = std::max(defect, spectral_norm(residual));
    }
    const double scale = 1.0 + spectral_norm(alpha) * x.max_coord_norm();
    return {defect <= tol * scale, defect};
}

double isometry_defect(const Matrix& V) {
    const Matrix g = V.adjoint() * V;
    return spectral_norm(g - Matrix::Identity(g.rows(), g.cols()));
}

MatrixTuple compress(const MatrixTuple& x, const Matrix& V) {
    if (V.rows() != x.level)
        throw std::invalid_argument("compress: V must have x.level rows");
    if (V.cols() < 1 || V.cols() > V.rows())
        throw std::invalid_argument("compress: V must be tall with at least one column");
    const double defect = isometry_defect(V);
    if (defect > kIsometryTol)
        throw std::invalid_argument("compress: V is not an isometry to tolerance (defect " +
                                    std::to_string(defect) + ")");
    std::vector<Matrix> ms;
    ms.reserve(static_cast<std::size_t>(x.d));
    for (int j = 0; j < x.d; ++j)
        ms.push_back(V.adjoint() * x.mats[static_cast<std::size_t>(j)] * V);
    return MatrixTuple(x.d, static_cast<int>(V.cols()), std::move(ms));
}

Matrix random_gaussian(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
    return m;
}

Matrix random_unitary(int n, Rng& rng) {
    const Matrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix column phases so the factorization (and hence the output) is unique
    for (int j = 0; j < n; ++j) {
        const Complex rjj = r(j, j);
        const double a = std::abs(rjj);
        if (a > 0.0) q.col(j) *= rjj / a;
    }
    return q;
}

Matrix random_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

Matrix random_isometry(int n_big, int n_small, Rng& rng) {
    if (n_big < n_small || n_small < 1)
        throw std::invalid_argument("random_isometry: need n_big >= n_small >= 1");
    const Matrix g = random_gaussian(n_big, n_small, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n_big, n_small);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n_small; ++j) {
        const Complex rjj = r(j, j);
        const double a = std::abs(rjj);
        if (a > 0.0) q.col(j) *= rjj / a;
    }
    return q;
}

Matrix random_isometry(int n_big, int n_small, std::uint64_t seed) {
    Rng rng(seed);
    return random_isometry(n_big, n_small, rng);
}

MatrixTuple random_tuple(int n, int d, double scale, Rng& rng) {
    if (scale <= 0.0) throw std::invalid_argument("random_tuple: scale must be positive");
    std::vector<Matrix> ms;
    ms.reserve(static_cast<std::size_t>(d));
    double maxnorm = 0.0;
    for (int j = 0; j < d; ++j) {
        ms.push_back(random_gaussian(n, n, rng));
        maxnorm = std::max(maxnorm, spectral_norm(ms.back()));
    }
    if (maxnorm > 0.0)
        for (auto& m : ms) m *= scale / maxnorm;
    return MatrixTuple(d, n, std::move(ms));
}

MatrixTuple random_tuple(int n, int d, double scale, std::uint64_t seed) {
    Rng rng(seed);
    return random_tuple(n, d, scale, rng);
}

Matrix random_similarity(int n, double max_cond, Rng& rng) {
    if (max_cond < 1.0) throw std::invalid_argument("random_similarity: max_cond must be >= 1");
    const Matrix u = random_unitary(n, rng);
    const Matrix w = random_unitary(n, rng);
    Eigen::VectorXd sv(n);
    sv(0) = 1.0;
    if (n > 1) {
        sv(n - 1) = 1.0 / max_cond;
        for (int i = 1; i + 1 < n; ++i) {
            const double t = rng.uniform01();
            sv(i) = std::exp(std::log(1.0 / max_cond) * t); // log-uniform in [1/max_cond, 1]
        }
    }
    return u * sv.asDiagonal() * w;
}

} // namespace frokaweil
