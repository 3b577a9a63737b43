#pragma once

#include <gmpxx.h>

#include <vector>

namespace nst {

// All arithmetic in this project is exact: arbitrary-precision integers for
// coordinates and equation coefficients, rationals for elimination and the
// Euler functional. No floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

// gcd of absolute values; 0 for the zero vector.
Int vector_gcd(const std::vector<Int>& v);

// Divide through by the gcd; the zero vector is left unchanged.
void make_primitive(std::vector<Int>& v);

// Exact rank of an integer matrix given as sparse rows over `cols` columns.
int rank_of_sparse(const std::vector<std::vector<std::pair<int, int>>>& rows, int cols);

// Exact rank of a dense rational matrix (destroys its argument).
int rank_of_dense(std::vector<std::vector<Rat>>& m);

} // namespace nst
