#include "frokaweil/domain.hpp"

#include <stdexcept>

namespace frokaweil {

MatrixPolyQ::MatrixPolyQ(int s_, int r_, std::vector<FreePolynomial> entries_)
    : s(s_), r(r_), entries(std::move(entries_)) {
    if (s < 1 || r < 1) throw std::invalid_argument("MatrixPolyQ: block dimensions must be positive");
    if (entries.size() != static_cast<std::size_t>(s) * static_cast<std::size_t>(r))
        throw std::invalid_argument("MatrixPolyQ: expected s*r entries");
    d = entries.front().alphabet();
    for (const auto& p : entries)
        if (p.alphabet() != d)
            throw std::invalid_argument("MatrixPolyQ: entries must share one alphabet");
}

int MatrixPolyQ::max_entry_degree() const {
    int deg = 0;
    for (const auto& p : entries)
        if (auto dg = p.degree()) deg = std::max(deg, *dg);
    return deg;
}

MatrixPolyQ make_Q(int d, const std::vector<std::vector<std::string>>& grid) {
    if (grid.empty() || grid.front().empty())
        throw std::invalid_argument("make_Q: empty grid");
    const int s = static_cast<int>(grid.size());
    const int r = static_cast<int>(grid.front().size());
    std::vector<FreePolynomial> entries;
    entries.reserve(static_cast<std::size_t>(s) * static_cast<std::size_t>(r));
    for (const auto& row : grid) {
        if (static_cast<int>(row.size()) != r)
            throw std::invalid_argument("make_Q: ragged grid");
        for (const auto& text : row) entries.push_back(parse_poly(text, d));
    }
    return MatrixPolyQ(s, r, std::move(entries));
}

Matrix eval_Q(const MatrixPolyQ& Q, const MatrixTuple& z) {
    if (Q.d != z.d) throw std::invalid_argument("eval_Q: alphabet mismatch");
    const int n = z.level;
    Matrix out = Matrix::Zero(Q.s * n, Q.r * n);
    for (int i = 0; i < Q.s; ++i)
        for (int j = 0; j < Q.r; ++j) out.block(i * n, j * n, n, n) = eval_poly(Q.at(i, j), z);
    return out;
}

Membership in_DQ(const MatrixPolyQ& Q, const MatrixTuple& z, double margin) {
    const double norm = spectral_norm(eval_Q(Q, z));
    // the set is open: at margin 0 the boundary itself is excluded
    return {norm <= 1.0 - margin && norm < 1.0, norm};
}

} // namespace frokaweil
