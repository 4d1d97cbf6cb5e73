#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "frokaweil/dilation.hpp"
#include "frokaweil/domain.hpp"
#include "frokaweil/realization.hpp"
#include "frokaweil/zariski.hpp"

namespace frokaweil {

using Json = nlohmann::json;

// Shared complex encoding: a complex number is [re, im]; matrices are
// row-major grids of such pairs.
Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const Json& j);

// {"level": n, "d": d, "mats": [matrix per coordinate]}
Json tuple_to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const Json& j);

// {"s": s, "r": r, "d": d, "entries": [[poly string]]}
Json q_to_json(const MatrixPolyQ& Q);
MatrixPolyQ q_from_json(const Json& j);

// {"s","r","m","A","B","C","D","mode"}
Json colligation_to_json(const Colligation& col);
Colligation colligation_from_json(const Json& j);

// {"k": k, "V": matrix}
Json witness_to_json(const DilationWitness& w);
DilationWitness witness_from_json(const Json& j);

// {"tuple","witness","structural_defect"} per sample
Json hull_manifest_to_json(const std::vector<HullSample>& samples);

// {"base","D","rank_tol","ranks_per_degree","polys"}
Json ideal_basis_to_json(const IdealBasis& basis);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace frokaweil
