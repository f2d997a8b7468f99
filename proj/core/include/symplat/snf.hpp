#pragma once

#include "symplat/matrix.hpp"

namespace symplat {

// Smith normal form U*A*V = D with U, V unimodular and D diagonal,
// diagonal entries non-negative and each dividing the next.
struct SmithResult {
    IMat u, d, v;
    std::vector<Int> divisors;  // the nonzero diagonal of d
};

SmithResult smith_normal_form(const IMat& a);

// Signature (n_plus, n_minus) of a nondegenerate symmetric matrix, by exact
// symmetric pivoting over the rationals. Throws std::domain_error if the
// matrix is degenerate or not symmetric.
std::pair<int, int> symmetric_signature(const QMat& g);

}  // namespace symplat
