#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frokaweil/dilation.hpp"
#include "frokaweil/json_io.hpp"
#include "frokaweil/realization.hpp"
#include "frokaweil/zariski.hpp"

namespace frokaweil {

struct PointRecord {
    std::string id;
    int level = 0;
    double defect = 0.0;
    double norm = 0.0;
    bool pass = false;
};

/// Reproducible experiment output. The serialized report is a pure function
/// of the inputs digest; wall time is kept out of the JSON so that identical
/// invocations produce identical bytes.
struct ExperimentReport {
    std::string name;
    Json inputs; // seeds, dims, tolerances
    std::vector<PointRecord> points;
    Json summary;
    bool pass = false;
    double wall_time_s = 0.0; // console-only
};

Json report_to_json(const ExperimentReport& rep); // schema 1, deterministic
std::string report_to_csv(const ExperimentReport& rep);

// Deterministically rescales x until max over the tuples' Q-norms is at most
// `target`; requires Q to vanish at 0 (no constant terms) for termination.
MatrixTuple scale_into_domain(const MatrixPolyQ& Q, const MatrixTuple& x, double target);

// Random point with ||Q(z)|| <= 1 - margin (strictly inside, scaled toward
// 0.9 * (1 - margin)).
MatrixTuple random_in_domain_point(const MatrixPolyQ& Q, int level, double margin, Rng& rng);

// A (colligation, Q, base point) triple with margin >= 0.05, varied over
// block shapes, auxiliary dimensions and base levels; deterministic per
// (index, seed).
struct RealizationConfig {
    Colligation col;
    MatrixPolyQ Q;
    MatrixTuple base;
};
RealizationConfig make_realization_config(int index, std::uint64_t seed);

// Exact polynomial representation on a dilation hull: interpolate f at the
// base (degree = stabilization degree), then require f(y) = p(y) at every
// certified hull sample. Also records a negative control at a random
// in-domain point outside the truncated vanishing locus.
ExperimentReport okaweil_exact(const Colligation& col, const MatrixPolyQ& Q,
                               const MatrixTuple& base, int hull_count, double tol,
                               std::uint64_t seed);

// Sup error over hull samples of the synthesized partial sums, per N. PASS
// when the errors are nonincreasing and the final error is <= 1e-8.
ExperimentReport uniform_convergence_table(const Colligation& col, const MatrixPolyQ& Q,
                                           const MatrixTuple& base, int hull_count,
                                           const std::vector<int>& N_list, double rho,
                                           std::uint64_t seed);

// For each r in the grid: N0 = find_N0, then the sampled sup of
// ||r f_{N0,r}(z)|| must stay within 1 + 1e-9 and the approximation error at
// a fixed point must shrink as r -> 1.
ExperimentReport scaled_norm_experiment(const Colligation& col, const MatrixPolyQ& Q,
                                        const std::vector<double>& r_list, int sample_count,
                                        std::uint64_t seed);

// Randomized verification of gradedness, direct sums, similarities and
// intertwinings for polynomial evaluation and transfer-function evaluation,
// plus a deliberately non-nc control (entrywise conjugation) that must fail.
ExperimentReport nc_axiom_suite(std::uint64_t seed, int trials);

} // namespace frokaweil
