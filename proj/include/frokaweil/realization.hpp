#pragma once

#include <cstdint>
#include <string>

#include "frokaweil/domain.hpp"

namespace frokaweil {

/// Finite-dimensional colligation U = [[A,B],[C,D]] mapping
/// C^s (x) C^m (+) C  ->  C^r (x) C^m (+) C. Its transfer function against a
/// compatible Q is a function of norm at most 1 on { ||Q(z)|| < 1 } whenever
/// U is a contraction.
struct Colligation {
    int s = 0; // input block rows of Q
    int r = 0; // input block cols of Q
    int m = 0; // auxiliary dimension
    Matrix A;  // (r*m) x (s*m)
    Matrix B;  // (r*m) x 1
    Matrix C;  // 1 x (s*m)
    Complex D{0.0, 0.0};
    bool unitary = false; // set only when s == r and U*U == I to tolerance

    Colligation(int s_, int r_, int m_, Matrix A_, Matrix B_, Matrix C_, Complex D_,
                bool unitary_ = false);

    // the assembled block operator, ((r*m)+1) x ((s*m)+1)
    Matrix block_operator() const;

    double norm_A() const { return spectral_norm(A); }
    double norm_B() const { return spectral_norm(B); }
    double norm_C() const { return spectral_norm(C); }
};

enum class ColligationMode { Unitary, Contractive };

// Unitary mode draws U from the QR of a complex Gaussian (requires s == r);
// contractive mode rescales a Gaussian block to ||U|| = 0.95.
Colligation random_colligation(int s, int r, int m, std::uint64_t seed, ColligationMode mode);

// The lift of Q(z) to the auxiliary space: (s*m*n) x (r*m*n), entry
// ((i,p,a),(j,q,b)) = delta_{pq} [Q(z)_{ij}]_{ab}, indices flattened with the
// level index innermost.
Matrix lift_Q(const Colligation& col, const MatrixPolyQ& Q, const MatrixTuple& z);

// kron(M, I_n) under the same flattening
Matrix lift_with_identity(const Matrix& M, int n);

// Closed-form transfer function value
//   f(z) = D I_n + C^ (I - Q^(z) A^)^{-1} Q^(z) B^,
// the inverse applied through an LU solve. Throws when z is numerically on
// the boundary (reciprocal condition < 1e-14) and when a contractive
// colligation produces ||f(z)|| > 1 + 1e-9.
Matrix eval_closed(const Colligation& col, const MatrixPolyQ& Q, const MatrixTuple& z);

// Scaled Neumann partial sum
//   f_{N,rho}(z) = D I_n + sum_{k=0}^{N} C^ (rho Q^(z) A^)^k (rho Q^(z)) B^.
// With rho = 1 this is the plain partial sum p_N(z).
Matrix eval_neumann(const Colligation& col, const MatrixPolyQ& Q, const MatrixTuple& z, int N,
                    double rho = 1.0);

// The free polynomial equal to f_{N,rho} as a function: symbolic expansion of
// the partial sum over the polynomial ring. Degree <= (N+1)*deg(Q). Throws
// std::length_error when an intermediate exceeds `term_cap` terms.
FreePolynomial synthesize(const Colligation& col, const MatrixPolyQ& Q, int N, double rho = 1.0,
                          std::size_t term_cap = kDefaultWordCap);

// T(N, rho) = ||C|| ||B|| rho^{N+2} / (1 - rho), an upper bound for
// sup_z || f_{N,rho}(z) - f_rho(z) || over the whole domain (requires
// ||A|| <= 1, 0 < rho < 1).
double certified_tail_bound(const Colligation& col, double rho, int N);

// Smallest N with rho * (1 + T(N, rho)) <= 1, so that the scaled partial sum
// rho * f_{N,rho} stays in the closed unit ball on the whole domain.
int find_N0(const Colligation& col, double rho);

} // namespace frokaweil
