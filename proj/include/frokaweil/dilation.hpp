#pragma once

#include <cstdint>
#include <vector>

#include "frokaweil/ncpoly.hpp"

namespace frokaweil {

/// Certificate that a point y dilates to a base x: an isometry V from the
/// level of y into k stacked copies of the level of x, with
/// p(y) = V* p(x)^{(k)} V for every free polynomial p.
struct DilationWitness {
    int k = 0;
    Matrix V; // (k * base_level) x (dilated level)

    DilationWitness(int k_, Matrix V_) : k(k_), V(std::move(V_)) {
        if (k < 1) throw std::invalid_argument("DilationWitness: k must be >= 1");
        if (V.cols() < 1 || V.rows() < V.cols())
            throw std::invalid_argument("DilationWitness: V must be tall with >= 1 column");
    }
};

// The only point compatible with the witness: y_j = V* x_j^{(k)} V. Requires
// V isometric to 1e-10 and k * x.level == V.rows().
MatrixTuple compress_witness(const MatrixTuple& x, const DilationWitness& w);

// Same compression without the isometry gate; used to evaluate corrupted
// witnesses in negative tests.
MatrixTuple compress_witness_unchecked(const MatrixTuple& x, const DilationWitness& w);

struct WordVerdict {
    bool ok = false;
    Word worst_word;
    double defect = 0.0; // normalized, for the worst word
};

// Checks p(y) = V* p(x)^{(k)} V on every word of length <= D (the empty word
// included, which pins the isometry). Defects are normalized by
// 1 + max(||x||, ||y||)^{length}. Linearity extends the verdict to every
// polynomial of degree <= D.
WordVerdict verify_dilation_words(const MatrixTuple& y, const MatrixTuple& x,
                                  const DilationWitness& w, int D, double tol,
                                  std::size_t word_cap = kDefaultWordCap);

struct StructuralVerdict {
    bool ok = false;
    double isometry_defect = 0.0;
    double compression_defect = 0.0; // over degree-1 words, normalized
    double invariance_defect = 0.0;  // of N = M intersect (ran V)-perp, normalized
    int dim_M = 0;
    int dim_N = 0;
};

// Exact finite criterion, no degree cutoff: V isometric, y the compression of
// x^{(k)}, and ran V semi-invariant for the algebra generated by the x_j^{(k)}
// (the smallest invariant M containing ran V has M minus ran V invariant).
// ok is calibrated to the all-degree word verdict at tolerance tol: a
// semi-invariance leakage of size delta shifts word values by delta^2, so the
// invariance defect is accepted up to sqrt(tol).
StructuralVerdict verify_dilation_structural(const MatrixTuple& y, const MatrixTuple& x,
                                             const DilationWitness& w, double tol);

// Orthonormal basis of the smallest subspace containing the seed columns and
// invariant under every coordinate; breadth-first application with
// re-orthonormalization, growth threshold 1e-10 relative.
Matrix krylov_invariant_subspace(const MatrixTuple& x, const Matrix& seeds);

struct HullSample {
    MatrixTuple point;
    DilationWitness witness;
    double structural_defect = 0.0;
};

inline constexpr int kDefaultAmpliationCap = 4;
inline constexpr int kDefaultLiftedLevelCap = 64;

// Certified points of the dilation hull of x. Four strategies are cycled
// deterministically per seed: unitary conjugation, summand extraction from an
// ampliation, restriction to a Krylov-invariant subspace, and quotient
// compression between nested invariant subspaces. Every returned sample
// passes the structural verification at tolerance 1e-9.
std::vector<HullSample> sample_hull(const MatrixTuple& x, int count, std::uint64_t seed);

// Witness transitivity: if w1 certifies y in the hull of x and w2 certifies z
// in the hull of y, the composite certifies z in the hull of x
// (k = k1 * k2, V = (I_{k2} (x) V1) V2).
DilationWitness compose_witness(const DilationWitness& w_y_from_x,
                                const DilationWitness& w_z_from_y, int base_level);

enum class WitnessCorruption { NonIsometry, OffSemiInvariance };

// Perturbs a witness off the isometry manifold, or re-orthonormalizes a
// generically tilted copy so it stays isometric but loses semi-invariance.
// Used for tolerance calibration and negative tests.
DilationWitness corrupt_witness(const DilationWitness& w, WitnessCorruption mode, double epsilon,
                                Rng& rng);

} // namespace frokaweil
