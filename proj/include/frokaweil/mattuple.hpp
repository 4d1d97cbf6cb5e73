#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "frokaweil/rng.hpp"

namespace frokaweil {

using Matrix = Eigen::MatrixXcd;

/// A point of the matrix universe at a single level: d complex n x n
/// matrices. Immutable by convention; every operation returns a fresh value.
struct MatrixTuple {
    int d = 0;     // number of coordinates
    int level = 0; // matrix size n
    std::vector<Matrix> mats;

    MatrixTuple(int d_, int level_, std::vector<Matrix> mats_);

    static MatrixTuple zero(int d, int level);

    const Matrix& coord(int j) const { return mats.at(static_cast<std::size_t>(j)); }

    // max_j of the operator norms of the coordinates
    double max_coord_norm() const;
};

// Largest singular value of M, computed from the Hermitian eigenproblem of
// the smaller Gram matrix. `tol` is the guaranteed relative accuracy; the
// dense solver delivers machine precision, so any tol >= 1e-15 is honored.
double spectral_norm(const Matrix& M, double tol = 1e-12);

// sigma_max / sigma_min; +inf when numerically singular
double condition_number(const Matrix& S);

// Block-diagonal join per coordinate: level x.level + y.level.
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

// Direct sum of k copies of x; k = 1 returns x unchanged.
MatrixTuple ampliate(const MatrixTuple& x, int k);

// Coordinate-wise S x_j S^{-1}. Throws on singular S (to tolerance
// 1e-14 * sigma_max). If cond_out is non-null the condition number of S is
// written there; callers should treat values above 1e8 as a warning.
MatrixTuple conjugate(const MatrixTuple& x, const Matrix& S, double* cond_out = nullptr);

struct IntertwineResult {
    bool ok = false;
    double defect = 0.0;
};

// True iff max_j ||alpha x_j - y_j alpha|| <= tol * (1 + ||alpha|| * max_j ||x_j||).
IntertwineResult check_intertwine(const MatrixTuple& x, const MatrixTuple& y,
                                  const Matrix& alpha, double tol);

inline constexpr double kIsometryTol = 1e-10; // absolute, on ||V*V - I||

// Coordinate-wise V* x_j V for an isometry V (n_big x n_small).
MatrixTuple compress(const MatrixTuple& x, const Matrix& V);

// ||V*V - I||; the witness and compression routines require <= kIsometryTol.
double isometry_defect(const Matrix& V);

Matrix random_gaussian(int rows, int cols, Rng& rng);

// Haar-ish unitary via QR of a complex Gaussian matrix, phases fixed so the
// result is deterministic per seed.
Matrix random_unitary(int n, std::uint64_t seed);
Matrix random_unitary(int n, Rng& rng);

// First n_small columns of a random unitary; n_big x n_small isometry.
Matrix random_isometry(int n_big, int n_small, std::uint64_t seed);
Matrix random_isometry(int n_big, int n_small, Rng& rng);

// d i.i.d. complex Gaussian matrices rescaled so max_j ||x_j|| == scale.
MatrixTuple random_tuple(int n, int d, double scale, std::uint64_t seed);
MatrixTuple random_tuple(int n, int d, double scale, Rng& rng);

// Random invertible S with condition number <= max_cond (exactly attained:
// U * diag(interpolated singular values) * W).
Matrix random_similarity(int n, double max_cond, Rng& rng);

} // namespace frokaweil
