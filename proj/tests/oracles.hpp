// Brute-force reference implementations used only by the test suites.  They
// deliberately avoid the library's enumeration path: ray sets are rebuilt by
// scanning support patterns and solving small rational systems directly.
#pragma once

#include "nst/cone.hpp"
#include "nst/exact.hpp"

#include <optional>
#include <vector>

namespace oracle {

using nst::Int;
using nst::Rat;

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(std::vector<std::vector<Rat>>& m) {
    std::vector<int> pivots;
    if (m.empty())
        return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[r], m[p]);
        Rat inv = 1 / m[r][c];
        for (size_t k = c; k < cols; ++k)
            m[r][k] *= inv;
        for (size_t k = 0; k < rows; ++k) {
            if (k == r || m[k][c] == 0)
                continue;
            Rat f = m[k][c];
            for (size_t j = c; j < cols; ++j)
                m[k][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

inline int rank(std::vector<std::vector<Rat>> m) { return static_cast<int>(rref(m).size()); }

// One-dimensional nullspace generator of the matrix, if the nullspace has
// dimension exactly one.
inline std::optional<std::vector<Rat>> nullspace_1d(std::vector<std::vector<Rat>> m, int cols) {
    std::vector<int> pivots = rref(m);
    if (static_cast<int>(pivots.size()) != cols - 1)
        return std::nullopt;
    // the single free column parameterizes the nullspace
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int p : pivots)
        is_pivot[static_cast<size_t>(p)] = true;
    int free_col = 0;
    while (is_pivot[static_cast<size_t>(free_col)])
        ++free_col;
    std::vector<Rat> x(static_cast<size_t>(cols), Rat(0));
    x[static_cast<size_t>(free_col)] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = -m[r][static_cast<size_t>(free_col)];
    return x;
}

inline std::vector<std::vector<Rat>> dense_rows(const nst::ConeSystem& sys) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& row : sys.rows) {
        std::vector<Rat> r(static_cast<size_t>(sys.dim), Rat(0));
        for (const auto& [idx, coeff] : row)
            r[static_cast<size_t>(idx)] += coeff;
        rows.push_back(std::move(r));
    }
    for (int idx : sys.zero_fixed) {
        std::vector<Rat> r(static_cast<size_t>(sys.dim), Rat(0));
        r[static_cast<size_t>(idx)] = 1;
        rows.push_back(std::move(r));
    }
    return rows;
}

// Enumerate every support pattern, solve for a one-dimensional nullspace on
// the support, keep strictly positive solutions whose active constraints
// (equations plus off-support unit rows) have rank dim - 1.
inline std::vector<nst::Ray> brute_force_extreme_rays(const nst::ConeSystem& sys) {
    const int dim = sys.dim;
    auto rows = dense_rows(sys);
    std::vector<nst::Ray> out;
    for (uint64_t support = 1; support < (uint64_t(1) << dim); ++support) {
        std::vector<int> cols;
        for (int i = 0; i < dim; ++i)
            if (support & (uint64_t(1) << i))
                cols.push_back(i);
        std::vector<std::vector<Rat>> sub;
        for (const auto& row : rows) {
            std::vector<Rat> r;
            r.reserve(cols.size());
            for (int c : cols)
                r.push_back(row[static_cast<size_t>(c)]);
            sub.push_back(std::move(r));
        }
        if (sub.empty())
            sub.push_back(std::vector<Rat>(cols.size(), Rat(0)));
        auto gen = nullspace_1d(sub, static_cast<int>(cols.size()));
        if (!gen)
            continue;
        bool positive = true, negative = true;
        for (const Rat& v : *gen) {
            if (v <= 0)
                positive = false;
            if (v >= 0)
                negative = false;
        }
        if (!positive && !negative)
            continue; // support would shrink or the ray leaves the orthant
        // scale to a primitive integer vector
        Int lcm = 1;
        for (const Rat& v : *gen)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
        std::vector<Int> x(static_cast<size_t>(dim), Int(0));
        for (size_t c = 0; c < cols.size(); ++c) {
            Rat scaled = (*gen)[c] * Rat(lcm) * (positive ? 1 : -1);
            scaled.canonicalize();
            x[static_cast<size_t>(cols[c])] = scaled.get_num();
        }
        nst::make_primitive(x);
        // extremality: active constraints have rank dim - 1
        std::vector<std::vector<Rat>> active = rows;
        for (int i = 0; i < dim; ++i)
            if (x[static_cast<size_t>(i)] == 0) {
                std::vector<Rat> unit(static_cast<size_t>(dim), Rat(0));
                unit[static_cast<size_t>(i)] = 1;
                active.push_back(std::move(unit));
            }
        if (rank(std::move(active)) == dim - 1)
            out.push_back(nst::Ray{std::move(x)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace oracle
