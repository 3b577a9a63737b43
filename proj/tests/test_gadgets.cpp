#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nst/detect.hpp"
#include "nst/error.hpp"
#include "nst/gadgets.hpp"
#include "nst/normal.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace nst;

namespace {

CubicGraph k4() {
    return CubicGraph::validated(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}
CubicGraph prism3() {
    return CubicGraph::validated(6,
                                 {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}
CubicGraph k33() {
    return CubicGraph::validated(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                                     {2, 3}, {2, 4}, {2, 5}});
}
CubicGraph cube_q3() {
    return CubicGraph::validated(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6},
                                     {6, 7}, {4, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
}
CubicGraph petersen() {
    return CubicGraph::validated(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                                      {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8},
                                      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
}

bool is_hamiltonian_cycle(const CubicGraph& g, std::vector<int> cycle) {
    if (static_cast<int>(cycle.size()) != g.nodes)
        return false;
    std::set<int> seen(cycle.begin(), cycle.end());
    if (static_cast<int>(seen.size()) != g.nodes)
        return false;
    std::set<std::pair<int, int>> arcs(g.arcs.begin(), g.arcs.end());
    for (size_t i = 0; i < cycle.size(); ++i) {
        int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
        if (!arcs.count({std::min(u, v), std::max(u, v)}))
            return false;
    }
    return true;
}

// Does the surface have a corner on the given edge class?
bool surface_meets_edge(const Triangulation& t, const Skeleton& s, const DiscChoice& choice,
                        int edge_class) {
    for (int tet = 0; tet < t.size(); ++tet)
        for (int e = 0; e < 6; ++e) {
            if (s.edge_class[static_cast<size_t>(6 * tet + e)] != edge_class)
                continue;
            auto [a, b] = edge_vertices(e);
            int d = choice[static_cast<size_t>(tet)];
            bool corner;
            if (d >= 3) {
                corner = (a == d - 3 || b == d - 3);
            } else {
                int j = d + 1;
                bool sep = (a == 0 && b == j) || (a != 0 && b != 0 && a != j && b != j);
                corner = !sep;
            }
            if (corner)
                return true;
        }
    return false;
}

bool passes_global_checks(const Triangulation& t) {
    Skeleton s = compute_skeleton(t);
    if (!s.valid || !s.boundary_faces.empty())
        return false;
    if (!is_orientable(t))
        return false;
    return is_3manifold(t); // closed: every link must be a sphere
}

} // namespace

TEST_CASE("cubic graph validation") {
    CHECK(k4().arcs.size() == 6);
    CHECK_THROWS_AS(CubicGraph::validated(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), Error); // degree 2
    CHECK_THROWS_AS(CubicGraph::validated(2, {{0, 1}, {0, 1}, {0, 1}}), Error);         // parallel
    CHECK_THROWS_AS(CubicGraph::validated(1, {{0, 0}}), Error);                         // loop
    // two disjoint K4s: cubic but disconnected
    std::vector<std::pair<int, int>> two;
    for (auto [u, v] : k4().arcs) {
        two.emplace_back(u, v);
        two.emplace_back(u + 4, v + 4);
    }
    CHECK_THROWS_AS(CubicGraph::validated(8, two), Error);
}

TEST_CASE("torus labels derived from the skeleton") {
    Triangulation torus = triangular_solid_torus();
    NodeGadgetLabels labels = derive_torus_labels(torus);

    SUBCASE("axis edges, one loop per core tetrahedron") {
        CHECK(labels.axis[0].tet == 0);
        CHECK(labels.axis[1].tet == 1);
        CHECK(labels.axis[2].tet == 2);
        // hand-checked directions under the default convention
        CHECK(labels.axis[0].from == 2);
        CHECK(labels.axis[0].to == 0);
        CHECK(labels.axis[1].from == 1);
        CHECK(labels.axis[1].to == 0);
        CHECK(labels.axis[2].from == 1);
        CHECK(labels.axis[2].to == 3);
    }
    SUBCASE("annuli pair the six boundary triangles") {
        CHECK(labels.annulus[0].plus.tet == 1);
        CHECK(labels.annulus[0].plus.face == 2);
        CHECK(labels.annulus[0].minus.tet == 2);
        CHECK(labels.annulus[0].minus.face == 2);
        CHECK(labels.annulus[1].plus.tet == 2);
        CHECK(labels.annulus[1].plus.face == 0);
        CHECK(labels.annulus[1].minus.tet == 0);
        CHECK(labels.annulus[1].minus.face == 1);
        CHECK(labels.annulus[2].plus.tet == 0);
        CHECK(labels.annulus[2].plus.face == 3);
        CHECK(labels.annulus[2].minus.tet == 1);
        CHECK(labels.annulus[2].minus.face == 3);
    }
    SUBCASE("label invariants: one axis edge per boundary triangle, shared minor/major") {
        Skeleton s = compute_skeleton(torus);
        for (int i = 0; i < 3; ++i) {
            const AnnulusLabels& ann = labels.annulus[i];
            // plus triangle carries axis i+1, minus carries axis i-1
            const DirectedEdgeSlot& ap = labels.axis[(i + 1) % 3];
            const DirectedEdgeSlot& am = labels.axis[(i + 2) % 3];
            CHECK(ann.plus.tet == ap.tet);
            CHECK(ann.minus.tet == am.tet);
            int minor_cls = s.edge_class_of(ann.minor.tet, ann.minor.a, ann.minor.b);
            int major_cls = s.edge_class_of(ann.major.tet, ann.major.a, ann.major.b);
            CHECK(s.edge_degree[static_cast<size_t>(minor_cls)] == 2);
            CHECK(s.edge_degree[static_cast<size_t>(major_cls)] == 3);
        }
    }
    SUBCASE("flipping the convention reverses every axis direction") {
        NodeGadgetLabels flipped = derive_torus_labels(torus, true);
        for (int i = 0; i < 3; ++i) {
            CHECK(flipped.axis[i].from == labels.axis[i].to);
            CHECK(flipped.axis[i].to == labels.axis[i].from);
        }
    }
}

TEST_CASE("pillow discs sit parallel to the boundary edges") {
    Triangulation pillow = triangular_pillow();
    Skeleton s = compute_skeleton(pillow);
    // labelled boundary edges a, b, c
    int ea = s.edge_class_of(0, 0, 1);
    int eb = s.edge_class_of(0, 1, 2);
    int ec = s.edge_class_of(0, 0, 2);
    std::set<int> missed_by_quad_discs;
    int quad_discs = 0;
    for (const NormalVector& x : enumerate_spanning_central(pillow)) {
        DiscChoice choice = *choice_from_vector(x);
        bool has_quad = choice[0] < 3 || choice[1] < 3;
        if (!has_quad)
            continue;
        ++quad_discs;
        int met = 0, missed = -1;
        for (int e : {ea, eb, ec}) {
            if (surface_meets_edge(pillow, s, choice, e))
                ++met;
            else
                missed = e;
        }
        CHECK(met == 2);
        missed_by_quad_discs.insert(missed);
    }
    CHECK(quad_discs == 3);
    CHECK(missed_by_quad_discs == std::set<int>{ea, eb, ec});
}

TEST_CASE("pillow insertion") {
    Triangulation torus = triangular_solid_torus();
    Gluing g = torus.gluings()[0];

    SUBCASE("counts: two more tetrahedra, four more gluings") {
        Triangulation t = insert_pillow(torus, g);
        CHECK(t.size() == 5);
        CHECK(t.gluings().size() == 7);
        CHECK(compute_skeleton(t).valid);
    }
    SUBCASE("replacing a missing gluing fails") {
        Gluing absent(0, 1, 1, 2, Perm4::from_digits("0213"));
        CHECK_THROWS_AS(insert_pillow(torus, absent), Error);
    }
    SUBCASE("normal arcs pass through transparently") {
        // splitting surfaces survive the insertion, pillow by pillow
        Triangulation t = torus;
        bool before = find_splitting_surface(t).has_value();
        for (const Gluing& gl : torus.gluings()) {
            t = insert_pillow(t, gl);
            CHECK(find_splitting_surface(t).has_value() == before);
        }
    }
    SUBCASE("surfaces avoiding the pillow sphere match surfaces through the face, twice over") {
        Triangulation t = insert_pillow(torus, g);
        int through_face = 0;
        for (const NormalVector& x : enumerate_spanning_central(torus)) {
            if (!surface_complex(torus, x).connected)
                continue;
            DiscChoice c = *choice_from_vector(x);
            if (disc_arc_cut_vertex(c[static_cast<size_t>(g.tet)], g.face) >= 0)
                ++through_face;
        }
        int no_sphere = 0;
        for (const NormalVector& x : enumerate_spanning_central(t)) {
            if (!surface_complex(t, x).connected)
                continue;
            DiscChoice c = *choice_from_vector(x);
            // the inserted pillow occupies tetrahedra 3 and 4; a pillow piece
            // with no arc in the attachment face is the internal sphere
            if (disc_arc_cut_vertex(c[3], 3) >= 0)
                ++no_sphere;
        }
        CHECK(no_sphere == 2 * through_face);
    }
}

TEST_CASE("node gadget structure") {
    auto [gadget, labels] = node_gadget();
    CHECK(gadget.size() == 9);
    Skeleton s = compute_skeleton(gadget);
    CHECK(s.valid);

    int internal_vertices = 0;
    for (uint8_t b : s.vertex_boundary)
        internal_vertices += b == 0 ? 1 : 0;
    CHECK(internal_vertices == 3);
    int internal_edges = 0;
    for (uint8_t b : s.edge_boundary)
        internal_edges += b == 0 ? 1 : 0;
    CHECK(internal_edges == 9);

    SUBCASE("exactly 32 connected spanning central surfaces: 24 tubes and 8 Moebius strips") {
        GadgetSurfaceClasses classes = classify_gadget_surfaces(gadget, labels);
        CHECK(classes.tube[0].size() == 8);
        CHECK(classes.tube[1].size() == 8);
        CHECK(classes.tube[2].size() == 8);
        CHECK(classes.moebius.size() == 8);
        CHECK(classes.other.empty());
        for (int m = 0; m < 3; ++m)
            for (const DiscChoice& c : classes.tube[m]) {
                SurfaceInfo info = surface_complex(gadget, vector_from_choice(c));
                CHECK(info.euler == 0);
                CHECK(info.orientable);
            }
        for (const DiscChoice& c : classes.moebius) {
            SurfaceInfo info = surface_complex(gadget, vector_from_choice(c));
            CHECK(info.euler == 0);
            CHECK_FALSE(info.orientable);
        }
    }
    SUBCASE("the Moebius strip meets every axis and major edge and no minor edge") {
        GadgetSurfaceClasses classes = classify_gadget_surfaces(gadget, labels);
        for (const DiscChoice& c : classes.moebius)
            for (int i = 0; i < 3; ++i) {
                const DirectedEdgeSlot& ax = labels.axis[i];
                int axis_cls = s.edge_class_of(ax.tet, ax.from, ax.to);
                CHECK(surface_meets_edge(gadget, s, c, axis_cls));
                const AnnulusLabels& ann = labels.annulus[i];
                int minor_cls = s.edge_class_of(ann.minor.tet, ann.minor.a, ann.minor.b);
                int major_cls = s.edge_class_of(ann.major.tet, ann.major.a, ann.major.b);
                CHECK(surface_meets_edge(gadget, s, c, major_cls));
                CHECK_FALSE(surface_meets_edge(gadget, s, c, minor_cls));
            }
    }
}

TEST_CASE("T_G assembly") {
    SUBCASE("K4: 36 tetrahedra, closed orientable 3-manifold") {
        GraphReduction r = build_t_g(k4());
        CHECK(r.tri.size() == 36);
        CHECK(r.tri.gluings().size() == 72);
        CHECK(passes_global_checks(r.tri));
        // every annulus glued exactly once
        std::set<std::pair<int, int>> used;
        for (const auto& ag : r.arc) {
            CHECK(used.insert({ag.node_a, ag.annulus_a}).second);
            CHECK(used.insert({ag.node_b, ag.annulus_b}).second);
        }
        CHECK(used.size() == 12);
    }
    SUBCASE("Petersen: 90 tetrahedra, closed orientable 3-manifold") {
        GraphReduction r = build_t_g(petersen());
        CHECK(r.tri.size() == 90);
        CHECK(passes_global_checks(r.tri));
    }
    SUBCASE("non-cubic inputs are rejected") {
        CubicGraph bad;
        bad.nodes = 4;
        bad.arcs = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        CHECK_THROWS_AS(build_t_g(bad), Error);
    }
    SUBCASE("the flipped direction convention still builds a 3-manifold") {
        BuildOptions opts;
        opts.flip_axis_convention = true;
        GraphReduction r = build_t_g(k4(), opts);
        CHECK(passes_global_checks(r.tri));
        // and the iff-theorem still holds on it
        CHECK(find_connected_spanning_central(r.tri).has_value());
    }
    SUBCASE("a mismatched direction on one annulus gluing breaks a global check") {
        for (const CubicGraph& g : {k4(), prism3()}) {
            BuildOptions opts;
            opts.mismatch_arc = 0;
            GraphReduction r = build_t_g(g, opts);
            CHECK_FALSE(passes_global_checks(r.tri));
        }
    }
}

TEST_CASE("cycles and surfaces convert both ways") {
    GraphReduction r = build_t_g(k4());

    SUBCASE("surface_from_cycle produces a verifying certificate") {
        NormalVector x = surface_from_cycle(r, {0, 1, 2, 3});
        CHECK(verify_certificate(r.tri, x));
    }
    SUBCASE("the 3-prism cycle found by the oracle converts") {
        GraphReduction rp = build_t_g(prism3());
        auto cycle = hamiltonian_oracle(prism3());
        REQUIRE(cycle.has_value());
        NormalVector x = surface_from_cycle(rp, *cycle);
        CHECK(verify_certificate(rp.tri, x));
    }
    SUBCASE("non-cycles are rejected") {
        CHECK_THROWS_AS(surface_from_cycle(r, {0, 1, 2}), Error);
        CHECK_THROWS_AS(surface_from_cycle(r, {0, 1, 2, 2}), Error);
        GraphReduction rp = build_t_g(prism3());
        // visits every node once but 0-2 is an arc while 2-4 is not
        CHECK_THROWS_AS(surface_from_cycle(rp, {0, 2, 4, 1, 3, 5}), Error);
    }
    SUBCASE("extract inverts build up to rotation and reflection") {
        std::vector<int> cycle{0, 1, 2, 3};
        std::vector<int> back = extract_cycle(r, surface_from_cycle(r, cycle));
        CHECK(is_hamiltonian_cycle(r.graph, back));
        // same cyclic sequence: rotate/reflect to start at 0
        CHECK(back.size() == cycle.size());
        CHECK(back[0] == 0);
        bool same = back == std::vector<int>{0, 1, 2, 3} || back == std::vector<int>{0, 3, 2, 1};
        CHECK(same);
    }
    SUBCASE("any detector witness on T_G(K4) extracts to a Hamiltonian cycle") {
        auto found = find_connected_spanning_central(r.tri);
        REQUIRE(found.has_value());
        std::vector<int> cycle = extract_cycle(r, *found);
        CHECK(is_hamiltonian_cycle(r.graph, cycle));
    }
    SUBCASE("a hand-built vector with a Moebius piece is rejected at verification") {
        auto found = find_connected_spanning_central(r.tri);
        REQUIRE(found.has_value());
        auto [gadget, labels] = node_gadget();
        GadgetSurfaceClasses classes = classify_gadget_surfaces(gadget, labels);
        NormalVector broken = *found;
        for (int t = 0; t < 9; ++t)
            for (int d = 0; d < kDiscTypes; ++d)
                broken.coords[static_cast<size_t>(7 * t + d)] =
                    d == classes.moebius[0][static_cast<size_t>(t)] ? 1 : 0;
        CHECK_FALSE(verify_certificate(r.tri, broken));
        CHECK_THROWS_AS(extract_cycle(r, broken), Error);
    }
}

TEST_CASE("hamiltonian oracle") {
    CHECK(hamiltonian_oracle(k4()).has_value());
    CHECK(hamiltonian_oracle(prism3()).has_value());
    CHECK(hamiltonian_oracle(k33()).has_value());
    CHECK(hamiltonian_oracle(cube_q3()).has_value());
    CHECK_FALSE(hamiltonian_oracle(petersen()).has_value());
    auto cycle = hamiltonian_oracle(prism3());
    REQUIRE(cycle.has_value());
    CHECK(is_hamiltonian_cycle(prism3(), *cycle));
    CHECK_THROWS_AS(hamiltonian_oracle(petersen(), 8), Error);
}

TEST_CASE("end-to-end: detection on T_G agrees with Hamiltonicity") {
    for (const CubicGraph& g : {k4(), prism3(), k33(), cube_q3(), petersen()}) {
        CAPTURE(g.nodes);
        GraphReduction r = build_t_g(g);
        CHECK(passes_global_checks(r.tri));
        auto cycle = hamiltonian_oracle(g);
        auto surface = find_connected_spanning_central(r.tri);
        CHECK(cycle.has_value() == surface.has_value());
        if (surface) {
            CHECK(verify_certificate(r.tri, *surface));
            std::vector<int> extracted = extract_cycle(r, *surface);
            CHECK(is_hamiltonian_cycle(g, extracted));
        }
    }
}

TEST_CASE("graph and label files") {
    CubicGraph g = prism3();
    CubicGraph back = graph_from_text(to_text(g));
    CHECK(back.nodes == g.nodes);
    CHECK(back.arcs == g.arcs);
    CHECK_THROWS_AS(graph_from_text("3"), Error);
    CHECK_THROWS_AS(graph_from_text("4 1\n0"), Error);

    GraphReduction r = build_t_g(g);
    std::string sidecar = labels_to_text(r);
    CHECK(sidecar.find("nodes 6") == 0);
    CHECK(sidecar.find("axis 0 0") != std::string::npos);
    CHECK(sidecar.find("arc 8") != std::string::npos);
}
