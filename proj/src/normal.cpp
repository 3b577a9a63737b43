#include "nst/normal.hpp"

#include "nst/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace nst {

int quad_cutting(int v, int f) {
    // The quadrilateral parallel to edge {v,f}: if one endpoint is 0 the type
    // is the other endpoint, otherwise it is the remaining label in {1,2,3}.
    if (v == 0)
        return f;
    if (f == 0)
        return v;
    return 6 - v - f;
}

int disc_arc_cut_vertex(int disc, int face) {
    if (disc >= 3) {
        int v = disc - 3; // triangle linking v
        return v == face ? -1 : v;
    }
    int j = disc + 1; // quadrilateral separating {0,j}
    if (face == 0)
        return j;
    if (face == j)
        return 0;
    // face lies on the opposite pair {1,2,3} \ {j}; the arc cuts off the
    // remaining vertex of that pair.
    return 6 - j - face;
}

namespace {

std::array<int, 3> face_vertices(int f) {
    std::array<int, 3> v{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != f)
            v[static_cast<size_t>(k++)] = i;
    return v;
}

void add_term(std::map<int, int>& terms, int idx, int coeff) {
    terms[idx] += coeff;
    if (terms[idx] == 0)
        terms.erase(idx);
}

} // namespace

MatchingSystem matching_system(const Triangulation& t) {
    MatchingSystem m;
    m.dim = 7 * t.size();
    const auto& gluings = t.gluings();
    for (size_t gi = 0; gi < gluings.size(); ++gi) {
        const Gluing& g = gluings[gi];
        for (int v : face_vertices(g.face)) {
            int v2 = g.perm(v);
            std::map<int, int> terms;
            add_term(terms, 7 * g.tet + 3 + v, 1);
            add_term(terms, 7 * g.tet + quad_cutting(v, g.face) - 1, 1);
            add_term(terms, 7 * g.other_tet + 3 + v2, -1);
            add_term(terms, 7 * g.other_tet + quad_cutting(v2, g.other_face) - 1, -1);
            MatchingRow row;
            row.terms.assign(terms.begin(), terms.end());
            row.gluing = static_cast<int>(gi);
            row.cut_vertex = v;
            m.rows.push_back(std::move(row));
        }
    }
    return m;
}

bool satisfies(const MatchingSystem& m, const std::vector<Int>& x) {
    for (const MatchingRow& row : m.rows) {
        Int sum = 0;
        for (const auto& [idx, coeff] : row.terms)
            sum += coeff * x[static_cast<size_t>(idx)];
        if (sum != 0)
            return false;
    }
    return true;
}

bool is_admissible(const Triangulation& t, const MatchingSystem& m, const NormalVector& x) {
    if (static_cast<int>(x.coords.size()) != 7 * t.size())
        fail(Errc::DimensionMismatch, "expected " + std::to_string(7 * t.size()) + " coordinates");
    for (const Int& c : x.coords)
        if (c < 0)
            return false;
    for (int tet = 0; tet < t.size(); ++tet) {
        int nonzero_quads = 0;
        for (int j = 1; j <= 3; ++j)
            if (x.quad(tet, j) != 0)
                ++nonzero_quads;
        if (nonzero_quads > 1)
            return false;
    }
    return satisfies(m, x.coords);
}

bool is_admissible(const Triangulation& t, const NormalVector& x) {
    return is_admissible(t, matching_system(t), x);
}

EulerFunctional euler_functional(const Triangulation& t) {
    Skeleton s = compute_skeleton(t);
    EulerFunctional f;
    f.weights.assign(static_cast<size_t>(7 * t.size()), Rat(0));

    for (int tet = 0; tet < t.size(); ++tet) {
        for (int disc = 0; disc < kDiscTypes; ++disc) {
            Rat w = 1;
            for (int face = 0; face < 4; ++face) {
                if (disc_arc_cut_vertex(disc, face) < 0)
                    continue;
                int iota = t.gluing_at(tet, face) >= 0 ? 2 : 1;
                w -= Rat(1, iota);
            }
            // Corners: a triangle linking v sits on the edges at v; a
            // quadrilateral sits on the four edges it crosses.
            for (int e = 0; e < 6; ++e) {
                auto [a, b] = edge_vertices(e);
                bool corner;
                if (disc >= 3) {
                    int v = disc - 3;
                    corner = (a == v || b == v);
                } else {
                    int j = disc + 1;
                    bool is_sep = (a == 0 && b == j) || (a != 0 && b != 0 && a != j && b != j);
                    corner = !is_sep;
                }
                if (corner)
                    w += Rat(1, s.edge_degree[static_cast<size_t>(s.edge_class_of(tet, a, b))]);
            }
            w.canonicalize();
            f.weights[static_cast<size_t>(7 * tet + disc)] = w;
        }
    }

    Int scale = 1;
    for (const Rat& w : f.weights)
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), w.get_den().get_mpz_t());
    f.scale = scale;
    f.scaled.reserve(f.weights.size());
    for (const Rat& w : f.weights) {
        Rat scaled = w * Rat(scale);
        scaled.canonicalize();
        f.scaled.push_back(scaled.get_num());
    }
    return f;
}

Rat euler_value(const Triangulation& t, const EulerFunctional& f, const NormalVector& x) {
    if (!is_admissible(t, x))
        fail(Errc::NotAdmissible, "euler_value requires an admissible vector");
    Rat sum = 0;
    for (size_t i = 0; i < f.weights.size(); ++i)
        sum += f.weights[i] * Rat(x.coords[i]);
    sum.canonicalize();
    return sum;
}

NormalVector vertex_link_vector(const Triangulation& t, const Skeleton& s, int vertex_class) {
    NormalVector x = NormalVector::zeros(t.size());
    for (int tet = 0; tet < t.size(); ++tet)
        for (int v = 0; v < 4; ++v)
            if (s.vertex_class_of(tet, v) == vertex_class)
                x.tri(tet, v) += 1;
    return x;
}

NormalVector vertex_link_vector(const Triangulation& t, int vertex_class) {
    return vertex_link_vector(t, compute_skeleton(t), vertex_class);
}

bool is_trivial(const Triangulation& t, const NormalVector& x) {
    if (!is_admissible(t, x))
        fail(Errc::NotAdmissible, "is_trivial requires an admissible vector");
    for (int tet = 0; tet < t.size(); ++tet)
        for (int j = 1; j <= 3; ++j)
            if (x.quad(tet, j) != 0)
                return false;
    Skeleton s = compute_skeleton(t);
    std::vector<Int> value(static_cast<size_t>(s.vertex_count), Int(-1));
    for (int tet = 0; tet < t.size(); ++tet)
        for (int v = 0; v < 4; ++v) {
            Int& val = value[static_cast<size_t>(s.vertex_class_of(tet, v))];
            if (val < 0)
                val = x.tri(tet, v);
            else if (val != x.tri(tet, v))
                return false;
        }
    return true;
}

namespace {

struct PlainUF {
    std::vector<int> parent;

    explicit PlainUF(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }

    void union_sets(int x, int y) { parent[static_cast<size_t>(find(y))] = find(x); }
};

// Whether disc type `disc` has a corner on the tetrahedron edge {a,b}.
bool disc_has_corner(int disc, int a, int b) {
    if (disc >= 3) {
        int v = disc - 3;
        return a == v || b == v;
    }
    int j = disc + 1;
    bool is_sep = (std::min(a, b) == 0 && std::max(a, b) == j) ||
                  (a != 0 && b != 0 && a != j && b != j);
    return !is_sep;
}

// Boundary cycle of a disc: corners (as tetrahedron edge slots) in cyclic
// order, with side i lying between corner i and corner i+1.
struct DiscCycle {
    std::vector<int> corner_edge; // edge slot index 0..5
    std::vector<int> side_face;   // face carrying the side after corner i
};

DiscCycle disc_cycle(int disc) {
    DiscCycle c;
    if (disc >= 3) {
        int v = disc - 3;
        std::array<int, 3> others{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != v)
                others[static_cast<size_t>(k++)] = i;
        for (int i = 0; i < 3; ++i) {
            c.corner_edge.push_back(edge_index(v, others[static_cast<size_t>(i)]));
            c.side_face.push_back(others[static_cast<size_t>((i + 2) % 3)]);
        }
    } else {
        int j = disc + 1;
        std::array<int, 2> q{};
        int k = 0;
        for (int i = 1; i < 4; ++i)
            if (i != j)
                q[static_cast<size_t>(k++)] = i;
        // corners (0,q0) (0,q1) (j,q1) (j,q0); sides in faces j, q0, 0, q1
        c.corner_edge = {edge_index(0, q[0]), edge_index(0, q[1]), edge_index(j, q[1]),
                         edge_index(j, q[0])};
        c.side_face = {j, q[0], 0, q[1]};
    }
    return c;
}

} // namespace

SurfaceInfo surface_complex(const Triangulation& t, const NormalVector& x) {
    const int n = t.size();
    if (static_cast<int>(x.coords.size()) != 7 * n)
        fail(Errc::DimensionMismatch, "expected " + std::to_string(7 * n) + " coordinates");

    std::vector<int> disc(static_cast<size_t>(n), -1);
    for (int tet = 0; tet < n; ++tet) {
        for (int d = 0; d < kDiscTypes; ++d) {
            const Int& c = x.coords[static_cast<size_t>(7 * tet + d)];
            if (c == 0)
                continue;
            if (c != 1 || disc[static_cast<size_t>(tet)] >= 0)
                fail(Errc::UnsupportedVector,
                     "surface_complex handles one elementary disc per tetrahedron");
            disc[static_cast<size_t>(tet)] = d;
        }
        if (disc[static_cast<size_t>(tet)] < 0)
            fail(Errc::UnsupportedVector, "tetrahedron " + std::to_string(tet) + " carries no disc");
    }
    if (!is_admissible(t, x))
        fail(Errc::NotAdmissible, "surface_complex requires an admissible vector");

    // Edges of the complex: one per matched arc pair, one per boundary arc.
    int edges = 0;
    int boundary_sides = 0;
    for (int tet = 0; tet < n; ++tet)
        for (int f = 0; f < 4; ++f) {
            int cut = disc_arc_cut_vertex(disc[static_cast<size_t>(tet)], f);
            if (cut < 0)
                continue;
            int g = t.gluing_at(tet, f);
            if (g < 0) {
                ++edges;
                ++boundary_sides;
            } else {
                const Gluing& gl = t.gluings()[static_cast<size_t>(g)];
                if (gl.tet == tet && gl.face == f)
                    ++edges; // counted once from the canonical side
            }
        }

    // Vertices: corner classes glued around triangulation edges.
    PlainUF corners(static_cast<size_t>(6 * n));
    std::vector<uint8_t> present(static_cast<size_t>(6 * n), 0);
    for (int tet = 0; tet < n; ++tet)
        for (int e = 0; e < 6; ++e) {
            auto [a, b] = edge_vertices(e);
            if (disc_has_corner(disc[static_cast<size_t>(tet)], a, b))
                present[static_cast<size_t>(6 * tet + e)] = 1;
        }
    for (const Gluing& g : t.gluings()) {
        auto fv = face_vertices(g.face);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int a = fv[static_cast<size_t>(i)], b = fv[static_cast<size_t>(j)];
                int s1 = 6 * g.tet + edge_index(a, b);
                int s2 = 6 * g.other_tet + edge_index(g.perm(a), g.perm(b));
                if (present[static_cast<size_t>(s1)] && present[static_cast<size_t>(s2)])
                    corners.union_sets(s1, s2);
            }
    }
    int vertices = 0;
    std::vector<uint8_t> seen(static_cast<size_t>(6 * n), 0);
    for (int slot = 0; slot < 6 * n; ++slot) {
        if (!present[static_cast<size_t>(slot)])
            continue;
        int root = corners.find(slot);
        if (!seen[static_cast<size_t>(root)]) {
            seen[static_cast<size_t>(root)] = 1;
            ++vertices;
        }
    }

    SurfaceInfo info;
    info.euler = vertices - edges + n;

    // Connectivity over discs joined by matched arcs.
    PlainUF comp(static_cast<size_t>(n));
    for (const Gluing& g : t.gluings()) {
        int cut = disc_arc_cut_vertex(disc[static_cast<size_t>(g.tet)], g.face);
        if (cut >= 0)
            comp.union_sets(g.tet, g.other_tet);
    }
    info.connected = true;
    for (int tet = 1; tet < n; ++tet)
        if (comp.find(tet) != comp.find(0))
            info.connected = false;

    // Boundary circles: boundary sides joined at corner classes.
    if (boundary_sides > 0) {
        PlainUF bound(static_cast<size_t>(6 * n));
        for (int tet = 0; tet < n; ++tet)
            for (int f = 0; f < 4; ++f) {
                if (t.gluing_at(tet, f) >= 0)
                    continue;
                int cut = disc_arc_cut_vertex(disc[static_cast<size_t>(tet)], f);
                if (cut < 0)
                    continue;
                auto fv = face_vertices(f);
                std::array<int, 2> ends{};
                int k = 0;
                for (int v : fv)
                    if (v != cut)
                        ends[static_cast<size_t>(k++)] = v;
                int c1 = corners.find(6 * tet + edge_index(cut, ends[0]));
                int c2 = corners.find(6 * tet + edge_index(cut, ends[1]));
                bound.union_sets(c1, c2);
            }
        std::vector<uint8_t> counted(static_cast<size_t>(6 * n), 0);
        for (int tet = 0; tet < n; ++tet)
            for (int f = 0; f < 4; ++f) {
                if (t.gluing_at(tet, f) >= 0)
                    continue;
                int cut = disc_arc_cut_vertex(disc[static_cast<size_t>(tet)], f);
                if (cut < 0)
                    continue;
                auto fv = face_vertices(f);
                for (int v : fv)
                    if (v != cut) {
                        int root = bound.find(corners.find(6 * tet + edge_index(cut, v)));
                        if (!counted[static_cast<size_t>(root)]) {
                            counted[static_cast<size_t>(root)] = 1;
                            ++info.boundary_components;
                        }
                    }
            }
    }

    // Orientability: 2-color disc orientations so that matched sides are
    // traversed in opposite directions.
    std::vector<DiscCycle> cycles(static_cast<size_t>(n));
    for (int tet = 0; tet < n; ++tet)
        cycles[static_cast<size_t>(tet)] = disc_cycle(disc[static_cast<size_t>(tet)]);

    // Directed side of tet's disc in face f: corner edge slots (from, to).
    auto directed_side = [&](int tet, int f) -> std::pair<int, int> {
        const DiscCycle& c = cycles[static_cast<size_t>(tet)];
        for (size_t i = 0; i < c.side_face.size(); ++i)
            if (c.side_face[i] == f)
                return {c.corner_edge[i], c.corner_edge[(i + 1) % c.corner_edge.size()]};
        return {-1, -1};
    };

    std::vector<int> color(static_cast<size_t>(n), 0);
    info.orientable = true;
    std::vector<int> stack;
    for (int start = 0; start < n && info.orientable; ++start) {
        if (color[static_cast<size_t>(start)] != 0)
            continue;
        color[static_cast<size_t>(start)] = 1;
        stack.push_back(start);
        while (!stack.empty() && info.orientable) {
            int tet = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                int cut = disc_arc_cut_vertex(disc[static_cast<size_t>(tet)], f);
                if (cut < 0)
                    continue;
                auto d = t.dest(tet, f);
                if (!d)
                    continue;
                auto [from1, to1] = directed_side(tet, f);
                auto [from2, to2] = directed_side(d->tet, d->face);
                auto [a1, b1] = edge_vertices(from1);
                int mapped_from = edge_index(d->perm(a1), d->perm(b1));
                // Opposite traversal (mapped_from == to2) wants equal colors.
                int relation = (mapped_from == to2) ? 1 : -1;
                int want = relation * color[static_cast<size_t>(tet)];
                int& cur = color[static_cast<size_t>(d->tet)];
                if (cur == 0) {
                    cur = want;
                    stack.push_back(d->tet);
                } else if (cur != want) {
                    info.orientable = false;
                    break;
                }
            }
        }
    }
    return info;
}

// ------------------------------------------------------------------ I/O ----

std::string to_text(const NormalVector& x) {
    std::ostringstream out;
    for (int tet = 0; tet < x.tets(); ++tet) {
        for (int i = 0; i < 7; ++i) {
            if (i)
                out << " ";
            out << x.coords[static_cast<size_t>(7 * tet + i)].get_str();
        }
        out << "\n";
    }
    return out.str();
}

NormalVector normal_vector_from_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<Int> coords;
    std::string word;
    while (in >> word) {
        try {
            coords.emplace_back(word);
        } catch (const std::invalid_argument&) {
            fail(Errc::ParseError, "bad integer: " + word);
        }
    }
    if (coords.empty() || coords.size() % 7 != 0)
        fail(Errc::ParseError, "normal vector length must be a positive multiple of 7");
    return NormalVector(std::move(coords));
}

std::string to_text(const MatchingSystem& m) {
    std::ostringstream out;
    out << "dim " << m.dim << " rows " << m.rows.size() << "\n";
    for (size_t r = 0; r < m.rows.size(); ++r)
        for (const auto& [idx, coeff] : m.rows[r].terms)
            out << r << " " << idx << " " << coeff << "\n";
    return out.str();
}

} // namespace nst
