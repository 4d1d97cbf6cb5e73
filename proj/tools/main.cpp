// frokaweil: workbench CLI for free-polynomial evaluation, transfer-function
// realizations, dilation hulls, vanishing ideals, and the exactness
// experiments built on them.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "frokaweil/experiments.hpp"

using namespace frokaweil;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitExperimentFail = 1;
constexpr int kExitInputError = 2;

struct SharedOpts {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    double tol = 1e-8;
    std::string config_path;
};

void add_shared(CLI::App* cmd, SharedOpts& o) {
    cmd->add_option("--seed", o.seed, "random seed (u64)");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", o.tol, "tolerance");
    cmd->add_option("--config", o.config_path, "JSON config file; flags override its values");
}

// config-file values fill in anything the command line left untouched
void merge_config(CLI::App* cmd, SharedOpts& o) {
    if (o.config_path.empty()) return;
    const Json cfg = load_json_file(o.config_path);
    if (cmd->count("--seed") == 0 && cfg.contains("seed")) o.seed = cfg["seed"].get<std::uint64_t>();
    if (cmd->count("--format") == 0 && cfg.contains("format"))
        o.format = cfg["format"].get<std::string>();
    if (cmd->count("--out") == 0 && cfg.contains("out")) o.out = cfg["out"].get<std::string>();
    if (cmd->count("--tol") == 0 && cfg.contains("tol")) o.tol = cfg["tol"].get<double>();
}

void emit(const std::string& text, const SharedOpts& o) {
    if (o.out.empty())
        std::cout << text << "\n";
    else
        write_text_file(o.out, text + "\n");
}

int emit_report(const ExperimentReport& rep, const SharedOpts& o) {
    emit(o.format == "csv" ? report_to_csv(rep) : report_to_json(rep).dump(2), o);
    std::cerr << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << " (" << rep.wall_time_s
              << " s)\n";
    return rep.pass ? kExitPass : kExitExperimentFail;
}

int emit_report_list(const std::string& name, const std::vector<ExperimentReport>& reps,
                     const SharedOpts& o) {
    bool pass = true;
    double total = 0.0;
    for (const auto& r : reps) {
        pass = pass && r.pass;
        total += r.wall_time_s;
    }
    if (o.format == "csv") {
        std::string csv = "point_id,level,defect,norm,pass\n";
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (const auto& p : reps[i].points)
                csv += "cfg" + std::to_string(i) + "/" + p.id + "," + std::to_string(p.level) +
                       "," + format_double(p.defect) + "," + format_double(p.norm) + "," +
                       (p.pass ? "1" : "0") + "\n";
        emit(csv, o);
    } else {
        Json runs = Json::array();
        for (const auto& r : reps) runs.push_back(report_to_json(r));
        emit(Json{{"schema", 1}, {"name", name}, {"runs", runs}, {"pass", pass}}.dump(2), o);
    }
    std::cerr << name << ": " << (pass ? "PASS" : "FAIL") << " (" << total << " s)\n";
    return pass ? kExitPass : kExitExperimentFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for free polynomials, realizations, and dilation hulls"};
    app.require_subcommand(1);

    // eval
    auto* c_eval = app.add_subcommand("eval", "evaluate a free polynomial at a matrix tuple");
    SharedOpts o_eval;
    std::string eval_poly_text, eval_point_path;
    int eval_d = 0;
    c_eval->add_option("--poly", eval_poly_text, "polynomial text")->required();
    c_eval->add_option("--d", eval_d, "alphabet size")->required();
    c_eval->add_option("--point", eval_point_path, "tuple JSON file")->required();
    add_shared(c_eval, o_eval);

    // realize
    auto* c_real = app.add_subcommand("realize", "closed-form transfer function value");
    SharedOpts o_real;
    std::string real_col, real_q, real_point;
    c_real->add_option("--colligation", real_col, "colligation JSON file")->required();
    c_real->add_option("--q", real_q, "Q JSON file")->required();
    c_real->add_option("--point", real_point, "tuple JSON file")->required();
    add_shared(c_real, o_real);

    // synth
    auto* c_synth = app.add_subcommand("synth", "symbolic Neumann partial sum as a polynomial");
    SharedOpts o_synth;
    std::string synth_col, synth_q;
    int synth_N = 0;
    double synth_r = 1.0;
    std::size_t synth_cap = kDefaultWordCap;
    c_synth->add_option("--colligation", synth_col, "colligation JSON file")->required();
    c_synth->add_option("--q", synth_q, "Q JSON file")->required();
    c_synth->add_option("-N,--order", synth_N, "partial-sum order")->required();
    c_synth->add_option("--r", synth_r, "scaling in (0,1]");
    c_synth->add_option("--term-cap", synth_cap, "term-count cap");
    add_shared(c_synth, o_synth);

    // okaweil
    auto* c_oka = app.add_subcommand("okaweil", "exact polynomial representation on hulls");
    SharedOpts o_oka;
    int oka_configs = 10, oka_hull = 50;
    std::string oka_col, oka_q, oka_point;
    c_oka->add_option("--configs", oka_configs, "number of generated configurations");
    c_oka->add_option("--hull", oka_hull, "hull samples per configuration");
    c_oka->add_option("--colligation", oka_col, "explicit colligation JSON file");
    c_oka->add_option("--q", oka_q, "explicit Q JSON file");
    c_oka->add_option("--point", oka_point, "explicit base tuple JSON file");
    add_shared(c_oka, o_oka);

    // dilate
    auto* c_dil = app.add_subcommand("dilate", "sample certified dilation-hull points");
    SharedOpts o_dil;
    std::string dil_point;
    int dil_count = 20;
    c_dil->add_option("--point", dil_point, "base tuple JSON file")->required();
    c_dil->add_option("--count", dil_count, "number of samples");
    add_shared(c_dil, o_dil);

    // zariski
    auto* c_zar = app.add_subcommand("zariski", "vanishing-ideal basis and stabilization degree");
    SharedOpts o_zar;
    std::string zar_point;
    int zar_degree = -1;
    c_zar->add_option("--point", zar_point, "base tuple JSON file")->required();
    c_zar->add_option("--degree", zar_degree, "degree cutoff (default: stabilization degree)");
    add_shared(c_zar, o_zar);

    // axioms
    auto* c_ax = app.add_subcommand("axioms", "randomized nc-axiom verification");
    SharedOpts o_ax;
    int ax_trials = 100;
    c_ax->add_option("--trials", ax_trials, "trials per axiom");
    add_shared(c_ax, o_ax);

    // scaled
    auto* c_sc = app.add_subcommand("scaled", "scaled partial sums with certified norm bound");
    SharedOpts o_sc;
    std::vector<double> sc_r = {0.5, 0.9, 0.99};
    int sc_samples = 200;
    std::string sc_col, sc_q;
    c_sc->add_option("--r", sc_r, "r grid in (0,1)");
    c_sc->add_option("--samples", sc_samples, "in-domain sample count");
    c_sc->add_option("--colligation", sc_col, "explicit colligation JSON file");
    c_sc->add_option("--q", sc_q, "explicit Q JSON file");
    add_shared(c_sc, o_sc);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_eval->parsed()) {
            merge_config(c_eval, o_eval);
            if (o_eval.format == "csv") throw std::invalid_argument("eval emits JSON only");
            const MatrixTuple z = tuple_from_json(load_json_file(eval_point_path));
            const FreePolynomial p = parse_poly(eval_poly_text, eval_d);
            const Matrix v = eval_poly(p, z);
            emit(Json{{"level", z.level}, {"value", matrix_to_json(v)},
                      {"norm", spectral_norm(v)}}.dump(2),
                 o_eval);
            return kExitPass;
        }
        if (c_real->parsed()) {
            merge_config(c_real, o_real);
            if (o_real.format == "csv") throw std::invalid_argument("realize emits JSON only");
            const Colligation col = colligation_from_json(load_json_file(real_col));
            const MatrixPolyQ Q = q_from_json(load_json_file(real_q));
            const MatrixTuple z = tuple_from_json(load_json_file(real_point));
            const Membership mem = in_DQ(Q, z);
            if (!mem.member)
                throw std::invalid_argument("point is outside the domain (||Q(z)|| = " +
                                            format_double(mem.norm) + ")");
            const Matrix f = eval_closed(col, Q, z);
            emit(Json{{"level", z.level},
                      {"value", matrix_to_json(f)},
                      {"norm", spectral_norm(f)},
                      {"Q_norm", mem.norm}}
                     .dump(2),
                 o_real);
            return kExitPass;
        }
        if (c_synth->parsed()) {
            merge_config(c_synth, o_synth);
            if (o_synth.format == "csv") throw std::invalid_argument("synth emits JSON only");
            const Colligation col = colligation_from_json(load_json_file(synth_col));
            const MatrixPolyQ Q = q_from_json(load_json_file(synth_q));
            const FreePolynomial p = synthesize(col, Q, synth_N, synth_r, synth_cap);
            Json j{{"poly", to_string(p)}, {"terms", p.term_count()}};
            if (auto deg = p.degree()) j["degree"] = *deg;
            emit(j.dump(2), o_synth);
            return kExitPass;
        }
        if (c_oka->parsed()) {
            merge_config(c_oka, o_oka);
            if (!oka_col.empty() || !oka_q.empty() || !oka_point.empty()) {
                if (oka_col.empty() || oka_q.empty() || oka_point.empty())
                    throw std::invalid_argument(
                        "okaweil: --colligation, --q and --point must be given together");
                const Colligation col = colligation_from_json(load_json_file(oka_col));
                const MatrixPolyQ Q = q_from_json(load_json_file(oka_q));
                const MatrixTuple base = tuple_from_json(load_json_file(oka_point));
                return emit_report(okaweil_exact(col, Q, base, oka_hull, o_oka.tol, o_oka.seed),
                                   o_oka);
            }
            std::vector<ExperimentReport> runs;
            for (int i = 0; i < oka_configs; ++i) {
                const RealizationConfig cfg = make_realization_config(i, o_oka.seed);
                runs.push_back(
                    okaweil_exact(cfg.col, cfg.Q, cfg.base, oka_hull, o_oka.tol, o_oka.seed + i));
            }
            return emit_report_list("okaweil_exact_suite", runs, o_oka);
        }
        if (c_dil->parsed()) {
            merge_config(c_dil, o_dil);
            if (o_dil.format == "csv") throw std::invalid_argument("dilate emits JSON only");
            const MatrixTuple base = tuple_from_json(load_json_file(dil_point));
            const auto samples = sample_hull(base, dil_count, o_dil.seed);
            emit(hull_manifest_to_json(samples).dump(2), o_dil);
            return kExitPass;
        }
        if (c_zar->parsed()) {
            merge_config(c_zar, o_zar);
            if (o_zar.format == "csv") throw std::invalid_argument("zariski emits JSON only");
            const MatrixTuple base = tuple_from_json(load_json_file(zar_point));
            const int dstar = stabilization_degree(base);
            const int degree = zar_degree >= 0 ? zar_degree : dstar;
            const IdealBasis basis = ideal_basis(base, degree);
            Json j = ideal_basis_to_json(basis);
            j["stabilization_degree"] = dstar;
            emit(j.dump(2), o_zar);
            return kExitPass;
        }
        if (c_ax->parsed()) {
            merge_config(c_ax, o_ax);
            return emit_report(nc_axiom_suite(o_ax.seed, ax_trials), o_ax);
        }
        if (c_sc->parsed()) {
            merge_config(c_sc, o_sc);
            Colligation col = sc_col.empty()
                                  ? random_colligation(1, 2, 2, o_sc.seed ^ 0xabcdefull,
                                                       ColligationMode::Contractive)
                                  : colligation_from_json(load_json_file(sc_col));
            MatrixPolyQ Q = sc_q.empty() ? make_Q(2, {{"x1", "x2"}})
                                         : q_from_json(load_json_file(sc_q));
            return emit_report(scaled_norm_experiment(col, Q, sc_r, sc_samples, o_sc.seed), o_sc);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
