#pragma once

#include <vector>

#include "frokaweil/ncpoly.hpp"

namespace frokaweil {

/// An s x r matrix of free polynomials over a common alphabet. Defines the
/// open set { z : ||Q(z)|| < 1 }.
struct MatrixPolyQ {
    int s = 0;
    int r = 0;
    int d = 0;
    std::vector<FreePolynomial> entries; // row-major, s*r of them

    MatrixPolyQ(int s_, int r_, std::vector<FreePolynomial> entries_);

    const FreePolynomial& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(r) +
                       static_cast<std::size_t>(j)];
    }

    // max over entries, 0 when every entry is zero
    int max_entry_degree() const;
};

// convenience: parse a grid of polynomial strings
MatrixPolyQ make_Q(int d, const std::vector<std::vector<std::string>>& grid);

// Block evaluation: (s*n) x (r*n), block (i,j) = entry(i,j) evaluated at z.
// Blocks are laid out row-major with the level index innermost.
Matrix eval_Q(const MatrixPolyQ& Q, const MatrixTuple& z);

struct Membership {
    bool member = false;
    double norm = 0.0;
};

// member iff ||Q(z)|| <= 1 - margin; the norm is always reported
Membership in_DQ(const MatrixPolyQ& Q, const MatrixTuple& z, double margin = 0.0);

} // namespace frokaweil
