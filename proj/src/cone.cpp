#include "nst/cone.hpp"

#include "nst/error.hpp"

#include <algorithm>
#include <sstream>

namespace nst {

namespace {

// Zero-coordinate sets as packed bitsets.
struct Bits {
    std::vector<uint64_t> words;

    explicit Bits(int dim) : words(static_cast<size_t>((dim + 63) / 64), 0) {}

    void set(int i) { words[static_cast<size_t>(i >> 6)] |= uint64_t(1) << (i & 63); }

    int popcount_and(const Bits& o) const {
        int total = 0;
        for (size_t w = 0; w < words.size(); ++w)
            total += __builtin_popcountll(words[w] & o.words[w]);
        return total;
    }

    // (this & o) subset of z?
    bool and_subset_of(const Bits& o, const Bits& z) const {
        for (size_t w = 0; w < words.size(); ++w)
            if ((words[w] & o.words[w] & ~z.words[w]) != 0)
                return false;
        return true;
    }
};

struct WorkRay {
    std::vector<Int> coords;
    Bits zeros;
    Int slack; // value of the equation currently being inserted

    WorkRay(std::vector<Int> c, int dim) : coords(std::move(c)), zeros(dim) {
        for (int i = 0; i < dim; ++i)
            if (coords[static_cast<size_t>(i)] == 0)
                zeros.set(i);
    }
};

Int row_value(const std::vector<std::pair<int, int>>& row, const std::vector<Int>& x) {
    Int v = 0;
    for (const auto& [idx, coeff] : row)
        v += coeff * x[static_cast<size_t>(idx)];
    return v;
}

// Incremental rank bookkeeping over the rows inserted so far (used to bound
// the dimension of the current cone for the adjacency prefilter).
struct RowSpace {
    std::vector<std::vector<Rat>> reduced; // rows in echelon form
    int dim;

    explicit RowSpace(int d) : dim(d) {}

    // Returns true when the row was independent of the span so far.
    bool add(const std::vector<std::pair<int, int>>& row) {
        std::vector<Rat> r(static_cast<size_t>(dim), Rat(0));
        for (const auto& [idx, coeff] : row)
            r[static_cast<size_t>(idx)] += coeff;
        for (const auto& piv : reduced) {
            size_t lead = 0;
            while (lead < piv.size() && piv[lead] == 0)
                ++lead;
            if (lead < piv.size() && r[lead] != 0) {
                Rat factor = r[lead] / piv[lead];
                for (size_t c = lead; c < r.size(); ++c)
                    r[c] -= factor * piv[c];
            }
        }
        for (const Rat& v : r)
            if (v != 0) {
                reduced.push_back(std::move(r));
                return true;
            }
        return false;
    }

    int rank() const { return static_cast<int>(reduced.size()); }
};

bool violates_pattern(const std::vector<Int>& coords,
                      const std::vector<std::array<int, 3>>& pattern) {
    for (const auto& block : pattern) {
        int nonzero = 0;
        for (int idx : block)
            if (coords[static_cast<size_t>(idx)] != 0)
                ++nonzero;
        if (nonzero > 1)
            return true;
    }
    return false;
}

std::vector<std::vector<std::pair<int, int>>> all_rows(const ConeSystem& sys) {
    std::vector<std::vector<std::pair<int, int>>> rows = sys.rows;
    for (int idx : sys.zero_fixed)
        rows.push_back({{idx, 1}});
    return rows;
}

} // namespace

std::vector<Ray> extreme_rays(const ConeSystem& sys) {
    const int dim = sys.dim;
    if (dim < 1)
        fail(Errc::DimensionMismatch, "cone dimension must be at least 1");
    for (const auto& row : sys.rows)
        for (const auto& [idx, coeff] : row) {
            (void)coeff;
            if (idx < 0 || idx >= dim)
                fail(Errc::DimensionMismatch, "equation index out of range");
        }
    for (int idx : sys.zero_fixed)
        if (idx < 0 || idx >= dim)
            fail(Errc::DimensionMismatch, "pinned coordinate out of range");

    std::vector<WorkRay> rays;
    rays.reserve(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        std::vector<Int> unit(static_cast<size_t>(dim), Int(0));
        unit[static_cast<size_t>(i)] = 1;
        rays.emplace_back(std::move(unit), dim);
    }

    RowSpace span(dim);
    for (const auto& row : all_rows(sys)) {
        for (WorkRay& r : rays)
            r.slack = row_value(row, r.coords);

        std::vector<size_t> pos, neg;
        for (size_t i = 0; i < rays.size(); ++i) {
            int s = sgn(rays[i].slack);
            if (s > 0)
                pos.push_back(i);
            else if (s < 0)
                neg.push_back(i);
        }
        // Two extreme rays of the current cone (dimension dim - rank) are
        // adjacent only if their common zero set pins all but two of those
        // dimensions: a cheap popcount prefilter before the exact
        // combinatorial test against the full ray list.
        const int needed = (dim - span.rank()) - 2;
        span.add(row);
        if (pos.empty() && neg.empty())
            continue; // dependent row, vanishes on the whole cone

        std::vector<WorkRay> created;
        for (size_t ip : pos)
            for (size_t in : neg) {
                const WorkRay& p = rays[ip];
                const WorkRay& q = rays[in];
                if (p.zeros.popcount_and(q.zeros) < needed)
                    continue;
                bool adjacent = true;
                for (size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == ip || k == in)
                        continue;
                    if (p.zeros.and_subset_of(q.zeros, rays[k].zeros))
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                std::vector<Int> combo(static_cast<size_t>(dim));
                for (int c = 0; c < dim; ++c)
                    combo[static_cast<size_t>(c)] =
                        p.slack * q.coords[static_cast<size_t>(c)] -
                        q.slack * p.coords[static_cast<size_t>(c)];
                make_primitive(combo);
                if (sys.prune_quad_violations && violates_pattern(combo, sys.quad_pattern))
                    continue;
                created.emplace_back(std::move(combo), dim);
            }

        std::vector<WorkRay> next;
        next.reserve(rays.size() - pos.size() - neg.size() + created.size());
        for (WorkRay& r : rays)
            if (r.slack == 0)
                next.push_back(std::move(r));
        for (WorkRay& r : created)
            next.push_back(std::move(r));
        rays = std::move(next);
        if (rays.empty())
            break;
    }

    std::vector<Ray> out;
    out.reserve(rays.size());
    for (WorkRay& r : rays)
        out.push_back(Ray{std::move(r.coords)});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());

    if (sys.prune_quad_violations) {
        // Pruning weakens the intermediate adjacency certificates, so confirm
        // each survivor by the exact rank test.
        std::vector<Ray> verified;
        for (Ray& r : out)
            if (is_extreme_ray(sys, r))
                verified.push_back(std::move(r));
        out = std::move(verified);
    }
    return out;
}

bool is_extreme_ray(const ConeSystem& sys, const Ray& x) {
    const int dim = sys.dim;
    if (static_cast<int>(x.coords.size()) != dim)
        fail(Errc::DimensionMismatch, "ray has wrong dimension");
    bool all_zero = true;
    for (const Int& c : x.coords) {
        if (c < 0)
            fail(Errc::NotInCone, "ray has a negative coordinate");
        if (c != 0)
            all_zero = false;
    }
    if (all_zero)
        fail(Errc::NotInCone, "the apex spans no ray");

    auto rows = all_rows(sys);
    for (const auto& row : rows)
        if (row_value(row, x.coords) != 0)
            fail(Errc::NotInCone, "ray violates an equation");

    // Unit rows from zero coordinates knock their columns out directly; the
    // remaining rank is computed on the equation rows restricted to the
    // support columns.
    std::vector<int> support;
    for (int i = 0; i < dim; ++i)
        if (x.coords[static_cast<size_t>(i)] != 0)
            support.push_back(i);
    std::vector<int> col_of(static_cast<size_t>(dim), -1);
    for (size_t c = 0; c < support.size(); ++c)
        col_of[static_cast<size_t>(support[c])] = static_cast<int>(c);

    std::vector<std::vector<Rat>> reduced_rows;
    for (const auto& row : rows) {
        std::vector<Rat> r(support.size(), Rat(0));
        bool nonzero = false;
        for (const auto& [idx, coeff] : row) {
            int c = col_of[static_cast<size_t>(idx)];
            if (c >= 0) {
                r[static_cast<size_t>(c)] += coeff;
                nonzero = true;
            }
        }
        if (nonzero)
            reduced_rows.push_back(std::move(r));
    }
    int zero_columns = dim - static_cast<int>(support.size());
    int rank = zero_columns + rank_of_dense(reduced_rows);
    return rank == dim - 1;
}

std::vector<Ray> filter_admissible(std::vector<Ray> rays,
                                   const std::vector<std::array<int, 3>>& quad_pattern) {
    std::vector<Ray> out;
    out.reserve(rays.size());
    for (Ray& r : rays)
        if (!violates_pattern(r.coords, quad_pattern))
            out.push_back(std::move(r));
    return out;
}

ConeSystem cone_from_matching(const MatchingSystem& m, bool with_quad_pattern) {
    ConeSystem sys;
    sys.dim = m.dim;
    for (const MatchingRow& row : m.rows)
        sys.rows.push_back(row.terms);
    if (with_quad_pattern)
        for (int tet = 0; 7 * tet < m.dim; ++tet)
            sys.quad_pattern.push_back({7 * tet, 7 * tet + 1, 7 * tet + 2});
    return sys;
}

std::string rays_to_text(const std::vector<Ray>& rays) {
    std::ostringstream out;
    for (const Ray& r : rays) {
        for (size_t i = 0; i < r.coords.size(); ++i) {
            if (i)
                out << " ";
            out << r.coords[i].get_str();
        }
        out << "\n";
    }
    return out.str();
}

} // namespace nst
