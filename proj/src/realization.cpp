#include "frokaweil/realization.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

namespace frokaweil {

Colligation::Colligation(int s_, int r_, int m_, Matrix A_, Matrix B_, Matrix C_, Complex D_,
                         bool unitary_)
    : s(s_), r(r_), m(m_), A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(D_),
      unitary(unitary_) {
    if (s < 1 || r < 1 || m < 1)
        throw std::invalid_argument("Colligation: s, r, m must be positive");
    if (A.rows() != r * m || A.cols() != s * m)
        throw std::invalid_argument("Colligation: A must be (r*m) x (s*m)");
    if (B.rows() != r * m || B.cols() != 1)
        throw std::invalid_argument("Colligation: B must be (r*m) x 1");
    if (C.rows() != 1 || C.cols() != s * m)
        throw std::invalid_argument("Colligation: C must be 1 x (s*m)");
    const Matrix U = block_operator();
    const double nu = spectral_norm(U);
    if (nu > 1.0 + 1e-10)
        throw std::invalid_argument("Colligation: block operator is not contractive (norm " +
                                    std::to_string(nu) + ")");
    if (unitary) {
        if (s != r) throw std::invalid_argument("Colligation: unitary flag requires s == r");
        const Matrix g = U.adjoint() * U;
        if (spectral_norm(g - Matrix::Identity(g.rows(), g.cols())) > 1e-10)
            throw std::invalid_argument("Colligation: unitary flag set but U*U != I");
    }
}

Matrix Colligation::block_operator() const {
    Matrix U(r * m + 1, s * m + 1);
    U.topLeftCorner(r * m, s * m) = A;
    U.topRightCorner(r * m, 1) = B;
    U.bottomLeftCorner(1, s * m) = C;
    U(r * m, s * m) = D;
    return U;
}

Colligation random_colligation(int s, int r, int m, std::uint64_t seed, ColligationMode mode) {
    if (s < 1 || r < 1 || m < 1)
        throw std::invalid_argument("random_colligation: s, r, m must be positive");
    Rng rng(seed);
    if (mode == ColligationMode::Unitary) {
        if (s != r)
            throw std::invalid_argument("random_colligation: unitary mode requires s == r");
        const Matrix U = random_unitary(r * m + 1, rng);
        return Colligation(s, r, m, U.topLeftCorner(r * m, s * m), U.topRightCorner(r * m, 1),
                           U.bottomLeftCorner(1, s * m), U(r * m, s * m), true);
    }
    Matrix U = random_gaussian(r * m + 1, s * m + 1, rng);
    U *= 0.95 / spectral_norm(U);
    return Colligation(s, r, m, U.topLeftCorner(r * m, s * m), U.topRightCorner(r * m, 1),
                       U.bottomLeftCorner(1, s * m), U(r * m, s * m), false);
}

Matrix lift_with_identity(const Matrix& M, int n) {
    Matrix out = Matrix::Zero(M.rows() * n, M.cols() * n);
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (M(i, j) != Complex(0.0, 0.0))
                out.block(i * n, j * n, n, n) = M(i, j) * Matrix::Identity(n, n);
    return out;
}

Matrix lift_Q(const Colligation& col, const MatrixPolyQ& Q, const MatrixTuple& z) {
    if (col.s != Q.s || col.r != Q.r)
        throw std::invalid_argument("lift_Q: colligation and Q block shapes differ");
    const int n = z.level, m = col.m;
    const Matrix Qz = eval_Q(Q, z); // (s*n) x (r*n)
    Matrix out = Matrix::Zero(Q.s * m * n, Q.r * m * n);
    for (int i = 0; i < Q.s; ++i)
        for (int j = 0; j < Q.r; ++j)
            for (int p = 0; p < m; ++p)
                out.block((i * m + p) * n, (j * m + p) * n, n, n) = Qz.block(i * n, j * n, n, n);
    return out;
}

Matrix eval_closed(const Colligation& col, const MatrixPolyQ& Q, const MatrixTuple& z) {
    const int n = z.level;
    const Matrix Qhat = lift_Q(col, Q, z);
    const Matrix Ahat = lift_with_identity(col.A, n);
    const Matrix Bhat = lift_with_identity(col.B, n);
    const Matrix Chat = lift_with_identity(col.C, n);
    const Eigen::Index dim = Qhat.rows();
    const Matrix resolvent_arg = Matrix::Identity(dim, dim) - Qhat * Ahat;
    Eigen::PartialPivLU<Matrix> lu(resolvent_arg);
    const double rc = lu.rcond();
    if (rc < 1e-14) {
        const double qn = spectral_norm(eval_Q(Q, z));
        throw std::runtime_error("eval_closed: resolvent ill-conditioned (rcond " +
                                 std::to_string(rc) + "), point near the boundary, ||Q(z)|| = " +
                                 std::to_string(qn));
    }
    const Matrix f =
        col.D * Matrix::Identity(n, n) + Chat * lu.solve(Qhat * Bhat);
    const double fnorm = spectral_norm(f);
    if (fnorm > 1.0 + 1e-9)
        throw std::runtime_error("eval_closed: transfer value norm " + std::to_string(fnorm) +
                                 " violates the contractivity bound; point likely outside the domain");
    return f;
}

Matrix eval_neumann(const Colligation& col, const MatrixPolyQ& Q, const MatrixTuple& z, int N,
                    double rho) {
    if (N < 0) throw std::invalid_argument("eval_neumann: N must be >= 0");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("eval_neumann: rho must lie in (0, 1]");
    const int n = z.level;
    const Matrix S = rho * lift_Q(col, Q, z); // (s m n) x (r m n)
    const Matrix Ahat = lift_with_identity(col.A, n);
    const Matrix Bhat = lift_with_identity(col.B, n);
    const Matrix Chat = lift_with_identity(col.C, n);
    const Matrix G = S * Ahat; // (s m n) square
    Matrix v = S * Bhat;       // (s m n) x n
    Matrix acc = v;
    for (int k = 1; k <= N; ++k) {
        v = G * v;
        acc += v;
    }
    return col.D * Matrix::Identity(n, n) + Chat * acc;
}

namespace {

using PolyVec = std::vector<FreePolynomial>;

void check_cap(const PolyVec& v, std::size_t cap) {
    for (const auto& p : v)
        if (p.term_count() > cap)
            throw std::length_error("synthesize: intermediate term count " +
                                    std::to_string(p.term_count()) + " exceeds cap " +
                                    std::to_string(cap));
}

} // namespace

FreePolynomial synthesize(const Colligation& col, const MatrixPolyQ& Q, int N, double rho,
                          std::size_t term_cap) {
    if (N < 0) throw std::invalid_argument("synthesize: N must be >= 0");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("synthesize: rho must lie in (0, 1]");
    if (col.s != Q.s || col.r != Q.r)
        throw std::invalid_argument("synthesize: colligation and Q block shapes differ");
    const int d = Q.d, m = col.m;
    const int sm = Q.s * m, rm = Q.r * m;

    // Qtil[(i,p),(j,q)] = delta_{pq} * rho * q_{ij}, shape sm x rm
    PolyVec Qtil(static_cast<std::size_t>(sm) * rm, FreePolynomial::zero(d));
    for (int i = 0; i < Q.s; ++i)
        for (int j = 0; j < Q.r; ++j)
            for (int p = 0; p < m; ++p)
                Qtil[static_cast<std::size_t>(i * m + p) * rm + (j * m + p)] =
                    Complex(rho, 0.0) * Q.at(i, j);

    // QA = Qtil * A, shape sm x sm (scalar matrix absorbed into polynomials)
    PolyVec QA(static_cast<std::size_t>(sm) * sm, FreePolynomial::zero(d));
    for (int a = 0; a < sm; ++a)
        for (int b = 0; b < sm; ++b) {
            FreePolynomial acc = FreePolynomial::zero(d);
            for (int k = 0; k < rm; ++k)
                acc += col.A(k, b) * Qtil[static_cast<std::size_t>(a) * rm + k];
            QA[static_cast<std::size_t>(a) * sm + b] = std::move(acc);
        }

    // QB = Qtil * B, column of length sm
    PolyVec QB(static_cast<std::size_t>(sm), FreePolynomial::zero(d));
    for (int a = 0; a < sm; ++a) {
        FreePolynomial acc = FreePolynomial::zero(d);
        for (int k = 0; k < rm; ++k) acc += col.B(k, 0) * Qtil[static_cast<std::size_t>(a) * rm + k];
        QB[static_cast<std::size_t>(a)] = std::move(acc);
    }

    // u = C, a scalar row of length sm; march u <- u * QA and accumulate u * QB
    PolyVec u(static_cast<std::size_t>(sm), FreePolynomial::zero(d));
    for (int a = 0; a < sm; ++a) u[static_cast<std::size_t>(a)] = FreePolynomial::constant(d, col.C(0, a));

    FreePolynomial result = FreePolynomial::constant(d, col.D);
    for (int k = 0; k <= N; ++k) {
        for (int a = 0; a < sm; ++a) result += u[static_cast<std::size_t>(a)] * QB[static_cast<std::size_t>(a)];
        if (result.term_count() > term_cap)
            throw std::length_error("synthesize: result term count exceeds cap");
        if (k == N) break;
        PolyVec next(static_cast<std::size_t>(sm), FreePolynomial::zero(d));
        for (int b = 0; b < sm; ++b) {
            FreePolynomial acc = FreePolynomial::zero(d);
            for (int a = 0; a < sm; ++a)
                acc += u[static_cast<std::size_t>(a)] * QA[static_cast<std::size_t>(a) * sm + b];
            next[static_cast<std::size_t>(b)] = std::move(acc);
        }
        u = std::move(next);
        check_cap(u, term_cap);
    }
    return result;
}

double certified_tail_bound(const Colligation& col, double rho, int N) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("certified_tail_bound: rho must lie in (0, 1)");
    if (N < 0) throw std::invalid_argument("certified_tail_bound: N must be >= 0");
    if (col.norm_A() > 1.0 + 1e-12)
        throw std::invalid_argument("certified_tail_bound: requires ||A|| <= 1");
    return col.norm_C() * col.norm_B() * std::pow(rho, N + 2) / (1.0 - rho);
}

int find_N0(const Colligation& col, double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("find_N0: rho must lie in (0, 1)");
    // T decreases geometrically, so this always terminates
    for (int N = 0;; ++N) {
        if (rho * (1.0 + certified_tail_bound(col, rho, N)) <= 1.0) return N;
    }
}

} // namespace frokaweil
