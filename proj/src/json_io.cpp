#include "frokaweil/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace frokaweil {

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex: expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& M) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(complex_to_json(M(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected non-empty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Matrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw std::invalid_argument("matrix: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) M(i, c) = complex_from_json(j[i][c]);
    }
    return M;
}

Json tuple_to_json(const MatrixTuple& x) {
    Json mats = Json::array();
    for (const auto& m : x.mats) mats.push_back(matrix_to_json(m));
    return Json{{"level", x.level}, {"d", x.d}, {"mats", std::move(mats)}};
}

MatrixTuple tuple_from_json(const Json& j) {
    const int level = j.at("level").get<int>();
    const int d = j.at("d").get<int>();
    std::vector<Matrix> mats;
    for (const auto& mj : j.at("mats")) mats.push_back(matrix_from_json(mj));
    return MatrixTuple(d, level, std::move(mats));
}

Json q_to_json(const MatrixPolyQ& Q) {
    Json grid = Json::array();
    for (int i = 0; i < Q.s; ++i) {
        Json row = Json::array();
        for (int j = 0; j < Q.r; ++j) row.push_back(to_string(Q.at(i, j)));
        grid.push_back(std::move(row));
    }
    return Json{{"s", Q.s}, {"r", Q.r}, {"d", Q.d}, {"entries", std::move(grid)}};
}

MatrixPolyQ q_from_json(const Json& j) {
    const int s = j.at("s").get<int>();
    const int r = j.at("r").get<int>();
    const int d = j.at("d").get<int>();
    const auto& grid = j.at("entries");
    if (static_cast<int>(grid.size()) != s) throw std::invalid_argument("Q: wrong row count");
    std::vector<std::vector<std::string>> rows;
    for (const auto& rj : grid) {
        if (static_cast<int>(rj.size()) != r) throw std::invalid_argument("Q: wrong column count");
        std::vector<std::string> row;
        for (const auto& e : rj) row.push_back(e.get<std::string>());
        rows.push_back(std::move(row));
    }
    return make_Q(d, rows);
}

Json colligation_to_json(const Colligation& col) {
    Matrix dmat(1, 1);
    dmat(0, 0) = col.D;
    return Json{{"s", col.s},
                {"r", col.r},
                {"m", col.m},
                {"A", matrix_to_json(col.A)},
                {"B", matrix_to_json(col.B)},
                {"C", matrix_to_json(col.C)},
                {"D", matrix_to_json(dmat)},
                {"mode", col.unitary ? "unitary" : "contractive"}};
}

Colligation colligation_from_json(const Json& j) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "unitary" && mode != "contractive")
        throw std::invalid_argument("colligation: mode must be 'unitary' or 'contractive'");
    const Matrix dmat = matrix_from_json(j.at("D"));
    if (dmat.rows() != 1 || dmat.cols() != 1)
        throw std::invalid_argument("colligation: D must be a 1 x 1 matrix");
    return Colligation(j.at("s").get<int>(), j.at("r").get<int>(), j.at("m").get<int>(),
                       matrix_from_json(j.at("A")), matrix_from_json(j.at("B")),
                       matrix_from_json(j.at("C")), dmat(0, 0), mode == "unitary");
}

Json witness_to_json(const DilationWitness& w) {
    return Json{{"k", w.k}, {"V", matrix_to_json(w.V)}};
}

DilationWitness witness_from_json(const Json& j) {
    return DilationWitness(j.at("k").get<int>(), matrix_from_json(j.at("V")));
}

Json hull_manifest_to_json(const std::vector<HullSample>& samples) {
    Json out = Json::array();
    for (const auto& s : samples)
        out.push_back(Json{{"tuple", tuple_to_json(s.point)},
                           {"witness", witness_to_json(s.witness)},
                           {"structural_defect", s.structural_defect}});
    return out;
}

Json ideal_basis_to_json(const IdealBasis& basis) {
    Json polys = Json::array();
    for (const auto& p : basis.polys) polys.push_back(to_string(p));
    return Json{{"base", tuple_to_json(basis.base)},
                {"D", basis.D},
                {"rank_tol", basis.rank_tol},
                {"ranks_per_degree", basis.ranks_per_degree},
                {"polys", std::move(polys)}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

} // namespace frokaweil
