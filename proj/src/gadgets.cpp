#include "nst/gadgets.hpp"

#include "nst/error.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace nst {

// ----------------------------------------------------------- CubicGraph ----

CubicGraph CubicGraph::validated(int nodes, std::vector<std::pair<int, int>> arcs) {
    for (auto& [u, v] : arcs) {
        if (u == v)
            fail(Errc::NotCubic, "loop at node " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        if (u < 0 || v >= nodes)
            fail(Errc::NotCubic, "arc endpoint out of range");
    }
    std::sort(arcs.begin(), arcs.end());
    if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end())
        fail(Errc::NotCubic, "parallel arcs are not allowed");

    std::vector<int> degree(static_cast<size_t>(nodes), 0);
    for (const auto& [u, v] : arcs) {
        degree[static_cast<size_t>(u)]++;
        degree[static_cast<size_t>(v)]++;
    }
    for (int u = 0; u < nodes; ++u)
        if (degree[static_cast<size_t>(u)] != 3)
            fail(Errc::NotCubic, "node " + std::to_string(u) + " has degree " +
                                     std::to_string(degree[static_cast<size_t>(u)]));

    std::vector<int> parent(static_cast<size_t>(nodes));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x)
            x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (const auto& [u, v] : arcs)
        parent[static_cast<size_t>(find(u))] = find(v);
    for (int u = 1; u < nodes; ++u)
        if (find(u) != find(0))
            fail(Errc::Disconnected, "graph is not connected");

    CubicGraph g;
    g.nodes = nodes;
    g.arcs = std::move(arcs);
    return g;
}

std::vector<std::vector<int>> CubicGraph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(nodes));
    for (const auto& [u, v] : arcs) {
        adj[static_cast<size_t>(u)].push_back(v);
        adj[static_cast<size_t>(v)].push_back(u);
    }
    return adj;
}

// -------------------------------------------------------- constructions ----

Triangulation triangular_solid_torus() {
    // Three tetrahedra stacked in a cycle; vertex letters ABCD / EFGH / IJKL
    // become labels 0-3 per tetrahedron, identifications ABD<->GFH,
    // EGH<->IKJ, BCD<->IKL.
    Triangulation t(3);
    t = glue(t, Gluing(0, 2, 1, 0, Perm4({2, 1, 0, 3})));
    t = glue(t, Gluing(1, 1, 2, 3, Perm4({0, 3, 2, 1})));
    t = glue(t, Gluing(0, 0, 2, 1, Perm4({1, 0, 2, 3})));
    return t;
}

Triangulation triangular_pillow() {
    // ABD<->EFG, ACD<->EHG, BCD<->FHG; every identification is the single
    // permutation swapping the last two labels.
    Triangulation t(2);
    Perm4 swap23({0, 1, 3, 2});
    t = glue(t, Gluing(0, 2, 1, 3, swap23));
    t = glue(t, Gluing(0, 1, 1, 1, swap23));
    t = glue(t, Gluing(0, 0, 1, 0, swap23));
    t.labels["edge:0:0:1"] = "a";
    t.labels["edge:0:1:2"] = "b";
    t.labels["edge:0:0:2"] = "c";
    t.labels["face:0:3"] = "pillow-bdry-0";
    t.labels["face:1:2"] = "pillow-bdry-1";
    return t;
}

Triangulation insert_pillow(const Triangulation& t, const Gluing& g) {
    auto it = std::find(t.gluings().begin(), t.gluings().end(), g);
    if (it == t.gluings().end())
        fail(Errc::NotAGluing, "the identification to replace is not present");

    const int p0 = t.size(), p1 = t.size() + 1;
    Triangulation out(t.size() + 2);
    out.labels = t.labels;
    for (const Gluing& other : t.gluings())
        if (!(other == g))
            out = glue(out, other);

    Perm4 swap23({0, 1, 3, 2});
    out = glue(out, Gluing(p0, 2, p1, 3, swap23));
    out = glue(out, Gluing(p0, 1, p1, 1, swap23));
    out = glue(out, Gluing(p0, 0, p1, 0, swap23));

    // Face vertices of g.face in ascending order map to pillow labels 0,1,2;
    // the opposite pillow face then carries g's permutation so that the arc
    // correspondence through the pillow equals the one removed.
    std::array<int, 3> fv{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != g.face)
            fv[static_cast<size_t>(k++)] = v;

    std::array<int, 4> tau1{};
    tau1[static_cast<size_t>(g.face)] = 3;
    for (int i = 0; i < 3; ++i)
        tau1[static_cast<size_t>(fv[static_cast<size_t>(i)])] = i;
    out = glue(out, Gluing(g.tet, g.face, p0, 3, Perm4(tau1)));

    // Pillow boundary correspondence: vertices 0,1,2 of the first boundary
    // face match vertices 0,1,3 of the second.
    std::array<int, 4> tau2{};
    tau2[0] = g.perm(fv[0]);
    tau2[1] = g.perm(fv[1]);
    tau2[3] = g.perm(fv[2]);
    tau2[2] = g.other_face;
    out = glue(out, Gluing(p1, 2, g.other_tet, g.other_face, Perm4(tau2)));
    return out;
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

// Boundary orientation of face f induced by a tetrahedron of the given sign:
// the ascending vertex triple, cyclically, reversed when sign * (-1)^f < 0.
std::array<int, 3> induced_cycle(int f, int sign) {
    auto fv = face_vertices(f);
    bool positive = (sign > 0) == (f % 2 == 0);
    if (!positive)
        std::swap(fv[1], fv[2]);
    return fv;
}

// The directed occurrence of the unordered pair {a,b} in a 3-cycle.
std::pair<int, int> directed_occurrence(const std::array<int, 3>& cycle, int a, int b) {
    for (int i = 0; i < 3; ++i) {
        int u = cycle[static_cast<size_t>(i)], v = cycle[static_cast<size_t>((i + 1) % 3)];
        if ((u == a && v == b) || (u == b && v == a))
            return {u, v};
    }
    assert(false && "edge not on face");
    return {-1, -1};
}

int third_face_vertex(int face, int a, int b) {
    for (int v : face_vertices(face))
        if (v != a && v != b)
            return v;
    assert(false);
    return -1;
}

} // namespace

NodeGadgetLabels derive_torus_labels(const Triangulation& torus, bool flip) {
    Skeleton s = compute_skeleton(torus);
    NodeGadgetLabels out;

    // Axis edges: the degree-1 classes, one per core tetrahedron.
    std::array<UndirectedEdgeSlot, 3> axis_slot;
    std::array<int, 3> axis_class{-1, -1, -1};
    for (int tet = 0; tet < 3; ++tet)
        for (int e = 0; e < 6; ++e) {
            int cls = s.edge_class[static_cast<size_t>(6 * tet + e)];
            if (s.edge_degree[static_cast<size_t>(cls)] != 1)
                continue;
            auto [a, b] = edge_vertices(e);
            assert(axis_class[static_cast<size_t>(tet)] == -1);
            axis_class[static_cast<size_t>(tet)] = cls;
            axis_slot[static_cast<size_t>(tet)] = UndirectedEdgeSlot{tet, a, b};
        }
    for (int i = 0; i < 3; ++i)
        assert(axis_class[static_cast<size_t>(i)] >= 0);

    // Vertex i sits on axis edge i.
    for (int i = 0; i < 3; ++i) {
        const auto& slot = axis_slot[static_cast<size_t>(i)];
        int va = s.vertex_class_of(slot.tet, slot.a);
        int vb = s.vertex_class_of(slot.tet, slot.b);
        assert(va == vb && "axis edges close up through one vertex");
        out.vertex[static_cast<size_t>(i)] = {slot.tet, slot.a};
        (void)va;
        (void)vb;
    }

    // Boundary triangles keyed by their (minor, major) edge classes; the two
    // faces of an annulus share both.
    struct BdryFace {
        FaceSlot slot;
        int axis = -1, minor_cls = -1, major_cls = -1;
        UndirectedEdgeSlot minor, major;
    };
    std::vector<BdryFace> faces;
    for (const auto& [tet, f] : s.boundary_faces) {
        BdryFace bf;
        bf.slot = FaceSlot{tet, f};
        auto fv = face_vertices(f);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int a = fv[static_cast<size_t>(i)], b = fv[static_cast<size_t>(j)];
                int cls = s.edge_class_of(tet, a, b);
                int deg = s.edge_degree[static_cast<size_t>(cls)];
                if (deg == 1) {
                    assert(bf.axis == -1);
                    bf.axis = tet; // axis index == core tetrahedron index
                } else if (deg == 2) {
                    bf.minor_cls = cls;
                    bf.minor = UndirectedEdgeSlot{tet, a, b};
                } else {
                    assert(deg == 3);
                    bf.major_cls = cls;
                    bf.major = UndirectedEdgeSlot{tet, a, b};
                }
            }
        assert(bf.axis >= 0 && bf.minor_cls >= 0 && bf.major_cls >= 0);
        faces.push_back(bf);
    }
    assert(faces.size() == 6);

    for (int i = 0; i < 3; ++i) {
        int plus_axis = (i + 1) % 3, minus_axis = (i + 2) % 3;
        const BdryFace* plus = nullptr;
        const BdryFace* minus = nullptr;
        for (const BdryFace& a : faces) {
            if (a.axis != plus_axis)
                continue;
            for (const BdryFace& b : faces) {
                if (b.axis != minus_axis)
                    continue;
                if (a.minor_cls == b.minor_cls && a.major_cls == b.major_cls) {
                    assert(!plus && "annulus pairing must be unique");
                    plus = &a;
                    minus = &b;
                }
            }
        }
        assert(plus && minus);
        AnnulusLabels& ann = out.annulus[static_cast<size_t>(i)];
        ann.plus = plus->slot;
        ann.minus = minus->slot;
        ann.minor = plus->minor;
        ann.major = plus->major;
    }

    // Axis directions: walk axis edge i so that the annulus-(i+1) triangle
    // containing it (its "minus" triangle) is traversed forwards, i.e. lies
    // on the walker's left under the induced boundary orientation.
    auto signs = orientation_signs(torus);
    assert(signs && "the torus core is orientable");
    for (int i = 0; i < 3; ++i) {
        FaceSlot fm = out.annulus[static_cast<size_t>((i + 1) % 3)].minus;
        assert(fm.tet == i);
        int sign = (*signs)[static_cast<size_t>(fm.tet)] * (flip ? -1 : 1);
        auto cycle = induced_cycle(fm.face, sign);
        const auto& slot = axis_slot[static_cast<size_t>(i)];
        auto [u, v] = directed_occurrence(cycle, slot.a, slot.b);
        out.axis[static_cast<size_t>(i)] = DirectedEdgeSlot{i, u, v};
    }
    return out;
}

std::pair<Triangulation, NodeGadgetLabels> node_gadget() {
    Triangulation torus = triangular_solid_torus();
    NodeGadgetLabels labels = derive_torus_labels(torus, false);
    Triangulation t = torus;
    // Insert a pillow along each internal face of the torus core; boundary
    // labelling lives entirely in the core and is untouched.
    std::vector<Gluing> originals = torus.gluings();
    for (const Gluing& g : originals)
        t = insert_pillow(t, g);
    return {t, labels};
}

GadgetSurfaceClasses classify_gadget_surfaces(const Triangulation& gadget,
                                              const NodeGadgetLabels& labels) {
    GadgetSurfaceClasses out;
    for (const NormalVector& x : enumerate_spanning_central(gadget)) {
        SurfaceInfo info = surface_complex(gadget, x);
        if (!info.connected)
            continue;
        DiscChoice choice = *choice_from_vector(x);
        int met_mask = 0;
        for (int i = 0; i < 3; ++i) {
            const AnnulusLabels& ann = labels.annulus[static_cast<size_t>(i)];
            bool p = disc_arc_cut_vertex(choice[static_cast<size_t>(ann.plus.tet)], ann.plus.face) >= 0;
            bool m = disc_arc_cut_vertex(choice[static_cast<size_t>(ann.minus.tet)], ann.minus.face) >= 0;
            if (p || m)
                met_mask |= 1 << i;
        }
        int met = __builtin_popcount(static_cast<unsigned>(met_mask));
        if (met == 3 && info.euler == 0 && !info.orientable) {
            out.moebius.push_back(std::move(choice));
        } else if (met == 2 && info.euler == 0 && info.orientable) {
            int missing = 0;
            while (met_mask & (1 << missing))
                ++missing;
            out.tube[static_cast<size_t>(missing)].push_back(std::move(choice));
        } else {
            out.other.push_back(std::move(choice));
        }
    }
    return out;
}

// -------------------------------------------------------------- assembly ----

namespace {

NodeGadgetLabels shift_labels(const NodeGadgetLabels& labels, int offset) {
    NodeGadgetLabels out = labels;
    for (auto& a : out.axis)
        a.tet += offset;
    for (auto& v : out.vertex)
        v.first += offset;
    for (auto& ann : out.annulus) {
        ann.plus.tet += offset;
        ann.minus.tet += offset;
        ann.minor.tet += offset;
        ann.major.tet += offset;
    }
    return out;
}

// Identify two boundary triangles so that the given directed axis edges
// match up (from->from, to->to) and third vertex maps to third vertex.
Gluing annulus_triangle_gluing(const FaceSlot& fa, const DirectedEdgeSlot& axis_a,
                               const FaceSlot& fb, const DirectedEdgeSlot& axis_b,
                               bool reverse) {
    assert(fa.tet == axis_a.tet && fb.tet == axis_b.tet);
    int wa = third_face_vertex(fa.face, axis_a.from, axis_a.to);
    int wb = third_face_vertex(fb.face, axis_b.from, axis_b.to);
    std::array<int, 4> img{};
    img[static_cast<size_t>(axis_a.from)] = reverse ? axis_b.to : axis_b.from;
    img[static_cast<size_t>(axis_a.to)] = reverse ? axis_b.from : axis_b.to;
    img[static_cast<size_t>(wa)] = wb;
    img[static_cast<size_t>(fa.face)] = fb.face;
    return Gluing(fa.tet, fa.face, fb.tet, fb.face, Perm4(img));
}

} // namespace

GraphReduction build_t_g(const CubicGraph& g, const BuildOptions& opts) {
    CubicGraph graph = CubicGraph::validated(g.nodes, g.arcs);

    Triangulation torus = triangular_solid_torus();
    NodeGadgetLabels base_labels = derive_torus_labels(torus, opts.flip_axis_convention);
    Triangulation gadget = torus;
    for (const Gluing& gl : torus.gluings())
        gadget = insert_pillow(gadget, gl);

    Triangulation tri(9 * graph.nodes);
    std::vector<NodeGadgetLabels> gadgets;
    for (int k = 0; k < graph.nodes; ++k) {
        gadgets.push_back(shift_labels(base_labels, 9 * k));
        for (const Gluing& gl : gadget.gluings())
            tri = glue(tri, Gluing(gl.tet + 9 * k, gl.face, gl.other_tet + 9 * k, gl.other_face,
                                   gl.perm));
    }

    std::vector<GraphReduction::ArcGluing> arc_gluings;
    std::vector<int> next_annulus(static_cast<size_t>(graph.nodes), 0);
    for (size_t ai = 0; ai < graph.arcs.size(); ++ai) {
        auto [u, v] = graph.arcs[ai];
        int i = next_annulus[static_cast<size_t>(u)]++;
        int j = next_annulus[static_cast<size_t>(v)]++;
        const NodeGadgetLabels& lu = gadgets[static_cast<size_t>(u)];
        const NodeGadgetLabels& lv = gadgets[static_cast<size_t>(v)];
        bool reverse = opts.mismatch_arc == static_cast<int>(ai);

        // T+_{u,i} <-> T-_{v,j} matching axis directions e_{u,i+1} ~ e_{v,j-1},
        // and T-_{u,i} <-> T+_{v,j} matching e_{u,i-1} ~ e_{v,j+1}.
        tri = glue(tri, annulus_triangle_gluing(lu.annulus[static_cast<size_t>(i)].plus,
                                                lu.axis[static_cast<size_t>((i + 1) % 3)],
                                                lv.annulus[static_cast<size_t>(j)].minus,
                                                lv.axis[static_cast<size_t>((j + 2) % 3)], reverse));
        tri = glue(tri, annulus_triangle_gluing(lu.annulus[static_cast<size_t>(i)].minus,
                                                lu.axis[static_cast<size_t>((i + 2) % 3)],
                                                lv.annulus[static_cast<size_t>(j)].plus,
                                                lv.axis[static_cast<size_t>((j + 1) % 3)], false));
        arc_gluings.push_back(GraphReduction::ArcGluing{u, i, v, j});
    }
    return GraphReduction{std::move(graph), std::move(tri), std::move(gadgets),
                          std::move(arc_gluings)};
}

NormalVector surface_from_cycle(const GraphReduction& r, const std::vector<int>& cycle) {
    const int n = r.graph.nodes;
    if (static_cast<int>(cycle.size()) != n)
        fail(Errc::NotHamiltonian, "cycle must visit every node exactly once");
    std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
    for (int node : cycle) {
        if (node < 0 || node >= n || seen[static_cast<size_t>(node)])
            fail(Errc::NotHamiltonian, "cycle must visit every node exactly once");
        seen[static_cast<size_t>(node)] = 1;
    }

    // Arc lookup and the annulus each arc consumes on each side.
    std::map<std::pair<int, int>, size_t> arc_index;
    for (size_t ai = 0; ai < r.graph.arcs.size(); ++ai)
        arc_index[r.graph.arcs[ai]] = ai;

    std::vector<std::vector<int>> met(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) {
        int u = cycle[static_cast<size_t>(m)];
        int v = cycle[static_cast<size_t>((m + 1) % n)];
        auto it = arc_index.find({std::min(u, v), std::max(u, v)});
        if (it == arc_index.end())
            fail(Errc::NotHamiltonian, "consecutive cycle nodes are not joined by an arc");
        const auto& ag = r.arc[it->second];
        met[static_cast<size_t>(ag.node_a)].push_back(ag.annulus_a);
        met[static_cast<size_t>(ag.node_b)].push_back(ag.annulus_b);
    }

    auto [gadget, labels] = node_gadget();
    GadgetSurfaceClasses classes = classify_gadget_surfaces(gadget, labels);

    // Restrict each gadget to the tube family that meets the two annuli the
    // cycle uses; the pillow variants are resolved by the arc-consistency
    // search over the restricted choice sets.
    std::vector<uint8_t> allowed(static_cast<size_t>(9 * n), 0);
    for (int k = 0; k < n; ++k) {
        const auto& pair = met[static_cast<size_t>(k)];
        assert(pair.size() == 2 && pair[0] != pair[1]);
        int missing = 3 - pair[0] - pair[1];
        for (const DiscChoice& choice : classes.tube[static_cast<size_t>(missing)])
            for (int t = 0; t < 9; ++t)
                allowed[static_cast<size_t>(9 * k + t)] |=
                    static_cast<uint8_t>(1 << choice[static_cast<size_t>(t)]);
    }

    std::optional<DiscChoice> found;
    scan_spanning_central(r.tri, allowed, DetectOptions{}, [&](const DiscChoice& choice) {
        found = choice;
        return false;
    });
    if (!found)
        throw std::logic_error("tube assembly failed for a Hamiltonian cycle");
    NormalVector x = vector_from_choice(*found);
    if (!verify_certificate(r.tri, x))
        throw std::logic_error("tube assembly produced an invalid certificate");
    return x;
}

std::vector<int> extract_cycle(const GraphReduction& r, const NormalVector& x) {
    const int n = r.graph.nodes;
    if (!verify_certificate(r.tri, x))
        fail(Errc::CertificateInvalid, "not a connected spanning central surface");
    DiscChoice choice = *choice_from_vector(x);

    // Which annuli the surface meets in each gadget.
    std::vector<std::vector<int>> met(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < 3; ++i) {
            const AnnulusLabels& ann = r.gadget[static_cast<size_t>(k)].annulus[static_cast<size_t>(i)];
            bool p = disc_arc_cut_vertex(choice[static_cast<size_t>(ann.plus.tet)], ann.plus.face) >= 0;
            bool m = disc_arc_cut_vertex(choice[static_cast<size_t>(ann.minus.tet)], ann.minus.face) >= 0;
            if (p != m)
                fail(Errc::CertificateInvalid,
                     "surface crosses only one triangle of an annulus in gadget " +
                         std::to_string(k));
            if (p)
                met[static_cast<size_t>(k)].push_back(i);
        }
    for (int k = 0; k < n; ++k) {
        if (met[static_cast<size_t>(k)].size() == 3)
            fail(Errc::LocalMoebiusFound,
                 "gadget " + std::to_string(k) + " carries a Moebius piece");
        if (met[static_cast<size_t>(k)].size() != 2)
            fail(Errc::CertificateInvalid,
                 "gadget " + std::to_string(k) + " does not carry a tube");
    }

    // Annulus adjacency: neighbours of a node are the partners of its two
    // met annuli; the result must be a single n-cycle.
    std::map<std::pair<int, int>, std::pair<int, int>> partner; // (node, annulus) -> (node, annulus)
    for (const auto& ag : r.arc) {
        partner[{ag.node_a, ag.annulus_a}] = {ag.node_b, ag.annulus_b};
        partner[{ag.node_b, ag.annulus_b}] = {ag.node_a, ag.annulus_a};
    }
    std::vector<std::array<int, 2>> nbr(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int s = 0; s < 2; ++s) {
            auto it = partner.find({k, met[static_cast<size_t>(k)][static_cast<size_t>(s)]});
            assert(it != partner.end());
            int other = it->second.first;
            bool other_met = std::find(met[static_cast<size_t>(other)].begin(),
                                       met[static_cast<size_t>(other)].end(),
                                       it->second.second) != met[static_cast<size_t>(other)].end();
            if (!other_met)
                fail(Errc::CertificateInvalid, "annulus crossing is one-sided");
            nbr[static_cast<size_t>(k)][static_cast<size_t>(s)] = other;
        }

    std::vector<int> cycle{0};
    int prev = -1, cur = 0;
    for (int step = 0; step < n - 1; ++step) {
        int next = nbr[static_cast<size_t>(cur)][0] == prev ? nbr[static_cast<size_t>(cur)][1]
                                                            : nbr[static_cast<size_t>(cur)][0];
        prev = cur;
        cur = next;
        if (cur == 0 || std::find(cycle.begin(), cycle.end(), cur) != cycle.end())
            fail(Errc::CertificateInvalid, "tube adjacency is not a single Hamiltonian cycle");
        cycle.push_back(cur);
    }
    int last = cycle.back();
    if (nbr[static_cast<size_t>(last)][0] != 0 && nbr[static_cast<size_t>(last)][1] != 0)
        fail(Errc::CertificateInvalid, "tube adjacency does not close up");
    return cycle;
}

std::optional<std::vector<int>> hamiltonian_oracle(const CubicGraph& g, int max_nodes) {
    if (g.nodes > max_nodes)
        fail(Errc::TooLarge, "graph exceeds the oracle bound of " + std::to_string(max_nodes));
    auto adj = g.adjacency();
    std::vector<int> path{0};
    std::vector<uint8_t> used(static_cast<size_t>(g.nodes), 0);
    used[0] = 1;

    std::function<bool()> extend = [&]() {
        if (static_cast<int>(path.size()) == g.nodes) {
            for (int nb : adj[static_cast<size_t>(path.back())])
                if (nb == 0)
                    return true;
            return false;
        }
        for (int nb : adj[static_cast<size_t>(path.back())]) {
            if (used[static_cast<size_t>(nb)])
                continue;
            used[static_cast<size_t>(nb)] = 1;
            path.push_back(nb);
            if (extend())
                return true;
            path.pop_back();
            used[static_cast<size_t>(nb)] = 0;
        }
        return false;
    };
    if (extend())
        return path;
    return std::nullopt;
}

// ------------------------------------------------------------------ I/O ----

CubicGraph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    int n = 0, m = 0;
    if (!(in >> n >> m))
        fail(Errc::ParseError, "expected 'n m' header");
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v))
            fail(Errc::ParseError, "expected " + std::to_string(m) + " arcs");
        arcs.emplace_back(u, v);
    }
    return CubicGraph::validated(n, std::move(arcs));
}

std::string to_text(const CubicGraph& g) {
    std::ostringstream out;
    out << g.nodes << " " << g.arcs.size() << "\n";
    for (const auto& [u, v] : g.arcs)
        out << u << " " << v << "\n";
    return out.str();
}

std::string labels_to_text(const GraphReduction& r) {
    std::ostringstream out;
    out << "nodes " << r.graph.nodes << "\n";
    for (int k = 0; k < r.graph.nodes; ++k) {
        const NodeGadgetLabels& l = r.gadget[static_cast<size_t>(k)];
        for (int i = 0; i < 3; ++i) {
            const auto& ax = l.axis[static_cast<size_t>(i)];
            out << "axis " << k << " " << i << " tet " << ax.tet << " dir " << ax.from << " "
                << ax.to << "\n";
        }
        for (int i = 0; i < 3; ++i) {
            const AnnulusLabels& ann = l.annulus[static_cast<size_t>(i)];
            out << "annulus " << k << " " << i << " plus " << ann.plus.tet << " " << ann.plus.face
                << " minus " << ann.minus.tet << " " << ann.minus.face << " minor " << ann.minor.tet
                << " " << ann.minor.a << " " << ann.minor.b << " major " << ann.major.tet << " "
                << ann.major.a << " " << ann.major.b << "\n";
        }
    }
    for (size_t ai = 0; ai < r.arc.size(); ++ai) {
        const auto& ag = r.arc[ai];
        out << "arc " << ai << " " << ag.node_a << " " << ag.annulus_a << " " << ag.node_b << " "
            << ag.annulus_b << "\n";
    }
    return out.str();
}

} // namespace nst
