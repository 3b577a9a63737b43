#include "nst/exact.hpp"

namespace nst {

Int vector_gcd(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

void make_primitive(std::vector<Int>& v) {
    Int g = vector_gcd(v);
    if (g <= 1)
        return;
    for (Int& x : v)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

int rank_of_dense(std::vector<std::vector<Rat>>& m) {
    if (m.empty())
        return 0;
    const size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[row], m[pivot]);
        for (size_t r = row + 1; r < m.size(); ++r) {
            if (m[r][col] == 0)
                continue;
            Rat factor = m[r][col] / m[row][col];
            for (size_t c = col; c < cols; ++c)
                m[r][c] -= factor * m[row][c];
        }
        ++row;
    }
    return static_cast<int>(row);
}

int rank_of_sparse(const std::vector<std::vector<std::pair<int, int>>>& rows, int cols) {
    std::vector<std::vector<Rat>> dense;
    dense.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<Rat> r(static_cast<size_t>(cols), Rat(0));
        bool nonzero = false;
        for (const auto& [idx, coeff] : row) {
            r[static_cast<size_t>(idx)] += coeff;
            nonzero = true;
        }
        if (nonzero)
            dense.push_back(std::move(r));
    }
    return rank_of_dense(dense);
}

} // namespace nst
