#include "frokaweil/dilation.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace frokaweil {

namespace {

void check_witness_shape(const MatrixTuple& x, const DilationWitness& w) {
    if (w.V.rows() != static_cast<Eigen::Index>(w.k) * x.level)
        throw std::invalid_argument("witness: V must have k * x.level rows");
}

} // namespace

MatrixTuple compress_witness_unchecked(const MatrixTuple& x, const DilationWitness& w) {
    check_witness_shape(x, w);
    const MatrixTuple xk = ampliate(x, w.k);
    std::vector<Matrix> ms;
    ms.reserve(static_cast<std::size_t>(x.d));
    for (int j = 0; j < x.d; ++j)
        ms.push_back(w.V.adjoint() * xk.mats[static_cast<std::size_t>(j)] * w.V);
    return MatrixTuple(x.d, static_cast<int>(w.V.cols()), std::move(ms));
}

MatrixTuple compress_witness(const MatrixTuple& x, const DilationWitness& w) {
    check_witness_shape(x, w);
    const double defect = isometry_defect(w.V);
    if (defect > kIsometryTol)
        throw std::invalid_argument("compress_witness: V is not an isometry to tolerance (defect " +
                                    std::to_string(defect) + ")");
    return compress_witness_unchecked(x, w);
}

WordVerdict verify_dilation_words(const MatrixTuple& y, const MatrixTuple& x,
                                  const DilationWitness& w, int D, double tol,
                                  std::size_t word_cap) {
    check_witness_shape(x, w);
    if (x.d != y.d) throw std::invalid_argument("verify_dilation_words: alphabet mismatch");
    if (y.level != w.V.cols())
        throw std::invalid_argument("verify_dilation_words: y level must match V columns");
    const MatrixTuple xk = ampliate(x, w.k);
    const std::vector<Word> words = words_up_to(x.d, D, word_cap);
    const double scale_base = std::max(x.max_coord_norm(), y.max_coord_norm());

    // parallel prefix walk over both evaluation families
    std::vector<Matrix> ey, ex;
    ey.reserve(words.size());
    ex.reserve(words.size());
    ey.push_back(Matrix::Identity(y.level, y.level));
    ex.push_back(Matrix::Identity(xk.level, xk.level));

    WordVerdict verdict{true, Word{}, 0.0};
    auto record = [&](const Word& word, const Matrix& at_y, const Matrix& at_x) {
        const double growth = 1.0 + std::pow(scale_base, word.degree());
        const double defect = spectral_norm(at_y - w.V.adjoint() * at_x * w.V) / growth;
        if (defect > verdict.defect) {
            verdict.defect = defect;
            verdict.worst_word = word;
        }
    };

    record(words[0], ey[0], ex[0]);
    std::size_t level_begin = 0, level_end = 1, t = 1;
    for (int len = 1; len <= D && t < words.size(); ++len) {
        for (std::size_t parent = level_begin; parent < level_end; ++parent)
            for (int l = 1; l <= x.d; ++l) {
                ey.push_back(ey[parent] * y.mats[static_cast<std::size_t>(l - 1)]);
                ex.push_back(ex[parent] * xk.mats[static_cast<std::size_t>(l - 1)]);
                record(words[t], ey.back(), ex.back());
                ++t;
            }
        level_begin = level_end;
        level_end = ey.size();
    }
    verdict.ok = verdict.defect <= tol;
    return verdict;
}

Matrix krylov_invariant_subspace(const MatrixTuple& x, const Matrix& seeds) {
    if (seeds.rows() != x.level)
        throw std::invalid_argument("krylov_invariant_subspace: seeds must live at x.level");
    const int n = x.level;
    constexpr double kGrowthTol = 1e-10;
    std::vector<Eigen::VectorXcd> basis;

    auto try_add = [&](Eigen::VectorXcd v) -> bool {
        const double orig = v.norm();
        if (orig < 1e-300) return false;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= b.dot(v) * b;
        if (v.norm() <= kGrowthTol * orig) return false;
        v.normalize();
        basis.push_back(std::move(v));
        return true;
    };

    std::deque<std::size_t> pending;
    for (Eigen::Index c = 0; c < seeds.cols(); ++c)
        if (try_add(seeds.col(c))) pending.push_back(basis.size() - 1);

    while (!pending.empty() && static_cast<int>(basis.size()) < n) {
        const std::size_t idx = pending.front();
        pending.pop_front();
        for (int j = 0; j < x.d; ++j) {
            if (try_add(x.mats[static_cast<std::size_t>(j)] * basis[idx]))
                pending.push_back(basis.size() - 1);
        }
    }

    Matrix out(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = basis[c];
    return out;
}

StructuralVerdict verify_dilation_structural(const MatrixTuple& y, const MatrixTuple& x,
                                             const DilationWitness& w, double tol) {
    check_witness_shape(x, w);
    if (x.d != y.d) throw std::invalid_argument("verify_dilation_structural: alphabet mismatch");
    if (y.level != w.V.cols())
        throw std::invalid_argument("verify_dilation_structural: y level must match V columns");
    const MatrixTuple xk = ampliate(x, w.k);
    const double xnorm = x.max_coord_norm();

    StructuralVerdict out;
    out.isometry_defect = isometry_defect(w.V);

    for (int j = 0; j < x.d; ++j) {
        const Matrix diff =
            y.mats[static_cast<std::size_t>(j)] -
            w.V.adjoint() * xk.mats[static_cast<std::size_t>(j)] * w.V;
        out.compression_defect =
            std::max(out.compression_defect, spectral_norm(diff) / (1.0 + xnorm));
    }

    // M = smallest invariant subspace containing ran V. Since the columns of V
    // seed the construction, ran V sits inside M exactly, so
    // dim N = dim M - rank V without any threshold decision.
    const Matrix Mb = krylov_invariant_subspace(xk, w.V);
    out.dim_M = static_cast<int>(Mb.cols());
    const int rank_v = static_cast<int>(w.V.cols());
    out.dim_N = std::max(0, out.dim_M - rank_v);

    if (out.dim_N > 0) {
        const Matrix overlap = w.V.adjoint() * Mb; // rank_v x dim_M
        Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullV);
        const Matrix Nb = Mb * svd.matrixV().rightCols(out.dim_N);
        for (int j = 0; j < x.d; ++j) {
            const Matrix image = xk.mats[static_cast<std::size_t>(j)] * Nb;
            const Matrix residual = image - Nb * (Nb.adjoint() * image);
            out.invariance_defect =
                std::max(out.invariance_defect, spectral_norm(residual) / (1.0 + xnorm));
        }
    }

    // A semi-invariance leakage of size delta perturbs word values by
    // delta^2 (the leakage enters as a Gram square), so the invariance defect
    // is compared against sqrt(tol) to make this verdict equivalent to the
    // all-degree word check at tolerance tol.
    out.ok = out.isometry_defect <= tol && out.compression_defect <= tol &&
             out.invariance_defect * out.invariance_defect <= tol;
    return out;
}

// ---------------------------------------------------------------------------
// hull sampling

namespace {

Matrix orthonormal_complement_within(const Matrix& Mb, const Matrix& Nb) {
    // basis of (span Mb) minus (span Nb); Nb's span is contained in Mb's
    const Matrix proj = Mb - Nb * (Nb.adjoint() * Mb);
    Eigen::JacobiSVD<Matrix> svd(proj, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * (sv(0) > 0 ? sv(0) : 1.0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

// seed of the form u (x) w, which generates a proper invariant subspace of an
// ampliation whenever the cyclic subspace of w is proper or k > 1
Eigen::VectorXcd tensor_seed(int k, int m, Rng& rng) {
    Eigen::VectorXcd u(k), w(m);
    for (int i = 0; i < k; ++i) u(i) = rng.cgaussian();
    for (int i = 0; i < m; ++i) w(i) = rng.cgaussian();
    Eigen::VectorXcd out(k * m);
    for (int i = 0; i < k; ++i) out.segment(i * m, m) = u(i) * w;
    return out;
}

DilationWitness unitary_witness(const MatrixTuple& x, Rng& rng) {
    return DilationWitness(1, random_unitary(x.level, rng));
}

} // namespace

std::vector<HullSample> sample_hull(const MatrixTuple& x, int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_hull: count must be >= 1");
    Rng rng(seed);
    const int m = x.level;
    std::vector<HullSample> out;
    out.reserve(static_cast<std::size_t>(count));

    for (int i = 0; i < count; ++i) {
        const int strategy = i % 4;
        int k = 1 + static_cast<int>(rng.below(kDefaultAmpliationCap));
        while (k > 1 && k * m > kDefaultLiftedLevelCap) --k;

        DilationWitness w(1, Matrix::Identity(m, m));
        bool built = false;
        switch (strategy) {
        case 0: // unitary conjugation
            w = unitary_witness(x, rng);
            built = true;
            break;
        case 1: { // summand extraction from an ampliation
            if (k < 2) k = 2;
            while (k * m > kDefaultLiftedLevelCap && k > 2) --k;
            if (k * m > kDefaultLiftedLevelCap) break;
            const int block = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
            Matrix V = Matrix::Zero(k * m, m);
            V.block(block * m, 0, m, m) = Matrix::Identity(m, m);
            w = DilationWitness(k, std::move(V));
            built = true;
            break;
        }
        case 2: { // restriction to a Krylov-invariant subspace
            const MatrixTuple xk = ampliate(x, k);
            const Matrix Mb = krylov_invariant_subspace(xk, tensor_seed(k, m, rng));
            if (Mb.cols() >= 1) {
                w = DilationWitness(k, Mb);
                built = true;
            }
            break;
        }
        case 3: { // quotient compression between nested invariant subspaces
            const MatrixTuple xk = ampliate(x, k);
            const Eigen::VectorXcd s_inner = tensor_seed(k, m, rng);
            const Matrix Nb = krylov_invariant_subspace(xk, s_inner);
            Matrix both(k * m, 2);
            both.col(0) = tensor_seed(k, m, rng);
            both.col(1) = s_inner;
            const Matrix Mb = krylov_invariant_subspace(xk, both);
            if (Mb.cols() > Nb.cols()) {
                const Matrix V = orthonormal_complement_within(Mb, Nb);
                if (V.cols() >= 1) {
                    w = DilationWitness(k, V);
                    built = true;
                }
            }
            break;
        }
        }
        if (!built) w = unitary_witness(x, rng);

        MatrixTuple y = compress_witness(x, w);
        StructuralVerdict v = verify_dilation_structural(y, x, w, 1e-9);
        if (!v.ok) { // numerically marginal construction; fall back
            w = unitary_witness(x, rng);
            y = compress_witness(x, w);
            v = verify_dilation_structural(y, x, w, 1e-9);
        }
        const double defect =
            std::max({v.isometry_defect, v.compression_defect, v.invariance_defect});
        out.push_back(HullSample{std::move(y), std::move(w), defect});
    }
    return out;
}

DilationWitness compose_witness(const DilationWitness& w_y_from_x,
                                const DilationWitness& w_z_from_y, int base_level) {
    const int k1 = w_y_from_x.k, k2 = w_z_from_y.k;
    const Eigen::Index n1 = w_y_from_x.V.cols();
    if (w_y_from_x.V.rows() != static_cast<Eigen::Index>(k1) * base_level)
        throw std::invalid_argument("compose_witness: first witness shape mismatch");
    if (w_z_from_y.V.rows() != static_cast<Eigen::Index>(k2) * n1)
        throw std::invalid_argument("compose_witness: second witness shape mismatch");
    Matrix lifted = Matrix::Zero(static_cast<Eigen::Index>(k2) * k1 * base_level,
                                 static_cast<Eigen::Index>(k2) * n1);
    for (int c = 0; c < k2; ++c)
        lifted.block(static_cast<Eigen::Index>(c) * k1 * base_level, c * n1, k1 * base_level, n1) =
            w_y_from_x.V;
    return DilationWitness(k1 * k2, lifted * w_z_from_y.V);
}

DilationWitness corrupt_witness(const DilationWitness& w, WitnessCorruption mode, double epsilon,
                                Rng& rng) {
    const Matrix g = random_gaussian(static_cast<int>(w.V.rows()), static_cast<int>(w.V.cols()), rng);
    Matrix perturbed = w.V + (epsilon / std::max(1.0, spectral_norm(g))) * g;
    if (mode == WitnessCorruption::NonIsometry) return DilationWitness(w.k, std::move(perturbed));
    // re-orthonormalize so the result is isometric but generically tilted
    Eigen::HouseholderQR<Matrix> qr(perturbed);
    Matrix V2 = qr.householderQ() * Matrix::Identity(perturbed.rows(), perturbed.cols());
    return DilationWitness(w.k, std::move(V2));
}

} // namespace frokaweil
