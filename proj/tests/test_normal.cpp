#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nst/cone.hpp"
#include "nst/error.hpp"
#include "nst/gadgets.hpp"
#include "nst/normal.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

using namespace nst;

namespace {

// All spanning central surfaces of a 2-tetrahedron triangulation, found by
// scanning the 49 disc pairs directly against the matching equations.
std::vector<NormalVector> two_tet_spanning_central(const Triangulation& t) {
    REQUIRE(t.size() == 2);
    MatchingSystem m = matching_system(t);
    std::vector<NormalVector> out;
    for (int d0 = 0; d0 < kDiscTypes; ++d0)
        for (int d1 = 0; d1 < kDiscTypes; ++d1) {
            NormalVector x = NormalVector::zeros(2);
            x.coords[static_cast<size_t>(d0)] = 1;
            x.coords[static_cast<size_t>(7 + d1)] = 1;
            if (is_admissible(t, m, x))
                out.push_back(std::move(x));
        }
    return out;
}

// Arcs on one side of a face, counted straight from the disc definitions.
Int arc_count(const Triangulation& t, const NormalVector& x, int tet, int face, int cut) {
    (void)t;
    Int total = 0;
    for (int d = 0; d < kDiscTypes; ++d)
        if (disc_arc_cut_vertex(d, face) == cut)
            total += x.coords[static_cast<size_t>(7 * tet + d)];
    return total;
}

// A bijection face f1 -> face f2 of one tetrahedron, the off-face vertices
// matched by the given ordering of the three face vertices.
Perm4 self_face_perm(int f1, int f2, const std::array<int, 3>& order) {
    std::array<int, 4> img{};
    img[static_cast<size_t>(f1)] = f2;
    std::array<int, 3> from{}, to{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f1)
            from[static_cast<size_t>(k++)] = v;
    k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f2)
            to[static_cast<size_t>(k++)] = v;
    for (int i = 0; i < 3; ++i)
        img[static_cast<size_t>(from[static_cast<size_t>(i)])] =
            to[static_cast<size_t>(order[static_cast<size_t>(i)])];
    return Perm4(img);
}

} // namespace

TEST_CASE("quad_cutting inverts the arc assignment") {
    for (int f = 0; f < 4; ++f)
        for (int v = 0; v < 4; ++v) {
            if (v == f)
                continue;
            int q = quad_cutting(v, f);
            CHECK(q >= 1);
            CHECK(q <= 3);
            CHECK(disc_arc_cut_vertex(q - 1, f) == v);
        }
    // each disc induces at most one arc per face; triangles miss their own face
    for (int d = 0; d < kDiscTypes; ++d) {
        int arcs = 0;
        for (int f = 0; f < 4; ++f)
            arcs += disc_arc_cut_vertex(d, f) >= 0 ? 1 : 0;
        CHECK(arcs == (d < 3 ? 4 : 3));
    }
}

TEST_CASE("matching system sizes") {
    SUBCASE("pillow: nine equations in dimension 14") {
        MatchingSystem m = matching_system(triangular_pillow());
        CHECK(m.dim == 14);
        CHECK(m.rows.size() == 9);
    }
    SUBCASE("single tetrahedron: no equations") {
        CHECK(matching_system(Triangulation(1)).rows.empty());
    }
    SUBCASE("node gadget: 45 equations in dimension 63") {
        auto [gadget, labels] = node_gadget();
        CHECK(gadget.size() == 9);
        CHECK(gadget.gluings().size() == 15);
        MatchingSystem m = matching_system(gadget);
        CHECK(m.dim == 63);
        CHECK(m.rows.size() == 45);
    }
    SUBCASE("rows are quadruples of unit coefficients, possibly merged") {
        for (const Triangulation& t : {triangular_pillow(), triangular_solid_torus()}) {
            MatchingSystem m = matching_system(t);
            CHECK(m.rows.size() == 3 * t.gluings().size());
            for (const MatchingRow& row : m.rows) {
                int weight = 0;
                for (const auto& [idx, coeff] : row.terms)
                    weight += std::abs(coeff);
                CHECK(weight <= 4);
                CHECK(row.gluing >= 0);
            }
        }
    }
}

TEST_CASE("admissibility") {
    Triangulation pillow = triangular_pillow();
    Skeleton s = compute_skeleton(pillow);

    SUBCASE("vertex link vectors are admissible") {
        for (int cls = 0; cls < s.vertex_count; ++cls)
            CHECK(is_admissible(pillow, vertex_link_vector(pillow, cls)));
    }
    SUBCASE("two distinct quads in one tetrahedron are inadmissible") {
        NormalVector x = NormalVector::zeros(2);
        x.quad(0, 1) = 1;
        x.quad(0, 2) = 1;
        CHECK_FALSE(is_admissible(pillow, x));
    }
    SUBCASE("the zero vector is admissible and trivial") {
        NormalVector x = NormalVector::zeros(2);
        CHECK(is_admissible(pillow, x));
        CHECK(is_trivial(pillow, x));
    }
    SUBCASE("wrong length raises DimensionMismatch") {
        CHECK_THROWS_AS(is_admissible(pillow, NormalVector::zeros(3)), Error);
    }
}

TEST_CASE("euler functional on vertex links: 2 internal, 1 boundary") {
    std::vector<Triangulation> tris{Triangulation(1), triangular_pillow(),
                                    triangular_solid_torus(), node_gadget().first};
    for (const Triangulation& t : tris) {
        Skeleton s = compute_skeleton(t);
        EulerFunctional f = euler_functional(t);
        LinkSummary direct = vertex_links(t);
        Rat total_direct = 0, total_functional = 0;
        for (int cls = 0; cls < s.vertex_count; ++cls) {
            NormalVector link = vertex_link_vector(t, s, cls);
            Rat value = euler_value(t, f, link);
            if (s.vertex_boundary[static_cast<size_t>(cls)])
                CHECK(value == 1);
            else
                CHECK(value == 2);
            CHECK(value == direct.links[static_cast<size_t>(cls)].euler);
            total_direct += direct.links[static_cast<size_t>(cls)].euler;
            total_functional += value;
        }
        CHECK(total_direct == total_functional);
    }
}

TEST_CASE("euler functional: a lone quadrilateral is a disc") {
    Triangulation t(1);
    EulerFunctional f = euler_functional(t);
    for (int j = 1; j <= 3; ++j) {
        NormalVector x = NormalVector::zeros(1);
        x.quad(0, j) = 1;
        CHECK(euler_value(t, f, x) == 1);
    }
    NormalVector bad = NormalVector::zeros(1);
    bad.quad(0, 1) = 1;
    bad.quad(0, 2) = 1;
    CHECK_THROWS_AS(euler_value(t, f, bad), Error);
}

TEST_CASE("scaled euler functional has integral coefficients of the same sign") {
    for (const Triangulation& t : {triangular_pillow(), node_gadget().first}) {
        EulerFunctional f = euler_functional(t);
        CHECK(f.scale > 0);
        for (size_t i = 0; i < f.weights.size(); ++i) {
            Rat scaled = f.weights[i] * Rat(f.scale);
            scaled.canonicalize();
            CHECK(scaled.get_den() == 1);
            CHECK(scaled.get_num() == f.scaled[i]);
        }
    }
}

TEST_CASE("vertex link vectors") {
    SUBCASE("unglued tetrahedron: one triangle coordinate per vertex") {
        Triangulation t(1);
        Skeleton s = compute_skeleton(t);
        for (int cls = 0; cls < s.vertex_count; ++cls) {
            NormalVector x = vertex_link_vector(t, s, cls);
            Int sum = 0;
            for (const Int& c : x.coords)
                sum += c;
            CHECK(sum == 1);
        }
    }
    SUBCASE("pillow internal vertex: its two incident corners, quads zero") {
        Triangulation pillow = triangular_pillow();
        Skeleton s = compute_skeleton(pillow);
        int internal = -1;
        for (int cls = 0; cls < s.vertex_count; ++cls)
            if (!s.vertex_boundary[static_cast<size_t>(cls)])
                internal = cls;
        REQUIRE(internal >= 0);
        // the internal vertex class is D ~ G: vertex 3 of tet 0, vertex 2 of tet 1
        NormalVector expect = NormalVector::zeros(2);
        expect.tri(0, 3) = 1;
        expect.tri(1, 2) = 1;
        CHECK(vertex_link_vector(pillow, s, internal) == expect);
    }
    SUBCASE("a one-vertex triangulation has every triangle coordinate 1") {
        // scan the one-tetrahedron double self-gluings for a valid one-vertex one
        static constexpr std::array<std::array<int, 4>, 3> pairings{
            {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
        int found = 0;
        for (const auto& faces : pairings) {
            std::array<int, 3> o1{0, 1, 2};
            do {
                std::array<int, 3> o2{0, 1, 2};
                do {
                    Triangulation t(1);
                    t = glue(t, Gluing(0, faces[0], 0, faces[1], self_face_perm(faces[0], faces[1], o1)));
                    t = glue(t, Gluing(0, faces[2], 0, faces[3], self_face_perm(faces[2], faces[3], o2)));
                    Skeleton s = compute_skeleton(t);
                    if (!s.valid || s.vertex_count != 1)
                        continue;
                    ++found;
                    NormalVector x = vertex_link_vector(t, s, 0);
                    for (int i = 0; i < 4; ++i)
                        CHECK(x.tri(0, i) == 1);
                    for (int j = 1; j <= 3; ++j)
                        CHECK(x.quad(0, j) == 0);
                } while (std::next_permutation(o2.begin(), o2.end()));
            } while (std::next_permutation(o1.begin(), o1.end()));
        }
        CHECK(found > 0);
    }
}

TEST_CASE("triviality") {
    Triangulation pillow = triangular_pillow();
    Skeleton s = compute_skeleton(pillow);
    for (int cls = 0; cls < s.vertex_count; ++cls)
        CHECK(is_trivial(pillow, vertex_link_vector(pillow, s, cls)));

    // the quad-quad pillow discs are non-trivial
    int quad_discs = 0;
    for (const NormalVector& x : two_tet_spanning_central(pillow)) {
        bool has_quad = false;
        for (int tet = 0; tet < 2; ++tet)
            for (int j = 1; j <= 3; ++j)
                if (x.quad(tet, j) != 0)
                    has_quad = true;
        if (has_quad) {
            ++quad_discs;
            CHECK_FALSE(is_trivial(pillow, x));
        }
    }
    CHECK(quad_discs == 3);
}

TEST_CASE("pillow spanning central surfaces: 3 vertex-link discs, 1 sphere, 3 quad discs") {
    Triangulation pillow = triangular_pillow();
    EulerFunctional f = euler_functional(pillow);
    std::vector<NormalVector> all = two_tet_spanning_central(pillow);
    CHECK(all.size() == 7);

    int spheres = 0, link_discs = 0, quad_discs = 0;
    for (const NormalVector& x : all) {
        SurfaceInfo info = surface_complex(pillow, x);
        CHECK(info.connected);
        CHECK(euler_value(pillow, f, x) == info.euler);
        bool has_quad = false;
        for (int tet = 0; tet < 2; ++tet)
            for (int j = 1; j <= 3; ++j)
                if (x.quad(tet, j) != 0)
                    has_quad = true;
        if (info.boundary_components == 0) {
            ++spheres;
            CHECK(info.euler == 2);
            CHECK(info.orientable);
        } else if (has_quad) {
            ++quad_discs;
            CHECK(info.euler == 1);
            CHECK(info.boundary_components == 1);
            CHECK(info.orientable);
        } else {
            ++link_discs;
            CHECK(info.euler == 1);
            CHECK(info.boundary_components == 1);
        }
    }
    CHECK(spheres == 1);
    CHECK(link_discs == 3);
    CHECK(quad_discs == 3);
}

TEST_CASE("surface_complex rejects vectors outside the one-disc regime") {
    Triangulation pillow = triangular_pillow();
    NormalVector x = NormalVector::zeros(2);
    x.tri(0, 0) = 2;
    x.tri(1, 0) = 2;
    CHECK_THROWS_AS(surface_complex(pillow, x), Error);
    NormalVector y = NormalVector::zeros(2); // no disc in tetrahedron 1
    y.tri(0, 0) = 1;
    CHECK_THROWS_AS(surface_complex(pillow, y), Error);
}

TEST_CASE("arc counts agree from both sides of every internal face") {
    // random admissible vectors assembled from extreme rays of the cone
    std::mt19937 rng(7121729);
    for (const Triangulation& t : {triangular_pillow(), triangular_solid_torus()}) {
        MatchingSystem m = matching_system(t);
        ConeSystem sys = cone_from_matching(m, true);
        std::vector<Ray> rays = filter_admissible(extreme_rays(sys), sys.quad_pattern);
        REQUIRE(!rays.empty());

        std::vector<NormalVector> samples;
        for (const Ray& r : rays)
            samples.push_back(NormalVector(r.coords));
        std::uniform_int_distribution<int> pick(0, static_cast<int>(rays.size()) - 1);
        std::uniform_int_distribution<int> coeff(1, 9);
        int tries = 0;
        while (samples.size() < rays.size() + 20 && tries++ < 1000) {
            const Ray& a = rays[static_cast<size_t>(pick(rng))];
            const Ray& b = rays[static_cast<size_t>(pick(rng))];
            NormalVector x = NormalVector::zeros(t.size());
            Int ca = coeff(rng), cb = coeff(rng);
            for (size_t i = 0; i < x.coords.size(); ++i)
                x.coords[i] = ca * a.coords[i] + cb * b.coords[i];
            if (!is_admissible(t, m, x))
                continue; // the two rays mix quad types in some tetrahedron
            samples.push_back(std::move(x));
        }

        for (const NormalVector& x : samples)
            for (const Gluing& g : t.gluings())
                for (int v = 0; v < 4; ++v) {
                    if (v == g.face)
                        continue;
                    CHECK(arc_count(t, x, g.tet, g.face, v) ==
                          arc_count(t, x, g.other_tet, g.other_face, g.perm(v)));
                }
    }
}

TEST_CASE("matching system export lists sparse triples") {
    MatchingSystem m = matching_system(triangular_pillow());
    std::string text = to_text(m);
    CHECK(text.rfind("dim 14 rows 9", 0) == 0);
    // every term appears as "row index coefficient"
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    int triples = 0;
    int row, idx, coeff;
    while (in >> row >> idx >> coeff) {
        CHECK(row >= 0);
        CHECK(row < 9);
        CHECK(idx >= 0);
        CHECK(idx < 14);
        CHECK(coeff != 0);
        ++triples;
    }
    int expected = 0;
    for (const MatchingRow& r : m.rows)
        expected += static_cast<int>(r.terms.size());
    CHECK(triples == expected);
}

TEST_CASE("normal vector text round-trip") {
    NormalVector x = NormalVector::zeros(2);
    x.quad(0, 2) = 3;
    x.tri(1, 3) = Int("123456789012345678901234567890");
    NormalVector back = normal_vector_from_text(to_text(x));
    CHECK(back == x);
    CHECK_THROWS_AS(normal_vector_from_text("1 2 3"), Error);
    CHECK_THROWS_AS(normal_vector_from_text("1 2 3 x 5 6 7"), Error);
}
