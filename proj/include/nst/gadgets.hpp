#pragma once

#include "nst/detect.hpp"
#include "nst/normal.hpp"
#include "nst/triangulation.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nst {

// A connected simple 3-regular graph.  Graph vertices are "nodes" and graph
// edges are "arcs" to keep them apart from triangulation vertices and edges.
struct CubicGraph {
    int nodes = 0;
    std::vector<std::pair<int, int>> arcs; // u < v, sorted

    // Throws NotCubic (loops, repeats, wrong degrees) or Disconnected.
    static CubicGraph validated(int nodes, std::vector<std::pair<int, int>> arcs);

    std::vector<std::vector<int>> adjacency() const;
};

struct FaceSlot {
    int tet = -1, face = -1;
};
struct DirectedEdgeSlot {
    int tet = -1, from = -1, to = -1;
};
struct UndirectedEdgeSlot {
    int tet = -1, a = -1, b = -1; // a < b
};

// Boundary bookkeeping for one node gadget (or the bare triangular solid
// torus).  Annulus i excludes core tetrahedron i; its triangle `plus`
// contains axis edge i+1 and `minus` contains axis edge i-1 (mod 3).  Axis
// edge i is the degree-1 boundary edge meeting core tetrahedron i, stored
// with its assigned direction; vertex i is the boundary vertex on axis i.
struct AnnulusLabels {
    FaceSlot plus, minus;
    UndirectedEdgeSlot minor, major;
};

struct NodeGadgetLabels {
    std::array<DirectedEdgeSlot, 3> axis;
    std::array<std::pair<int, int>, 3> vertex; // representative (tet, vertex) slot
    std::array<AnnulusLabels, 3> annulus;
};

// Three tetrahedra stacked in a cycle; nine boundary edges of degrees
// {1,1,1,2,2,2,3,3,3} forming three boundary annuli.
Triangulation triangular_solid_torus();

// Two tetrahedra glued along three faces; one internal vertex (sphere link)
// and three boundary vertices.  Boundary edges are labelled a, b, c.
Triangulation triangular_pillow();

// Replaces the identification g by routing it through a fresh pillow, so the
// induced normal-arc correspondence is unchanged.  Throws NotAGluing unless
// g is currently one of t's gluings.
Triangulation insert_pillow(const Triangulation& t, const Gluing& g);

// Derives axis/minor/major edges, annuli and axis directions from the
// skeleton of the bare torus.  flip reverses the global direction convention.
NodeGadgetLabels derive_torus_labels(const Triangulation& torus, bool flip = false);

// Torus with a pillow inserted along each of its three internal faces: nine
// tetrahedra, the boundary labelling carried over from the torus core.
std::pair<Triangulation, NodeGadgetLabels> node_gadget();

// The connected spanning central surfaces of one node gadget, grouped by the
// boundary annuli they meet: three tube families (indexed by the annulus
// they miss) and one Moebius family.
struct GadgetSurfaceClasses {
    std::array<std::vector<DiscChoice>, 3> tube;
    std::vector<DiscChoice> moebius;
    std::vector<DiscChoice> other; // connected surfaces fitting neither shape
};
GadgetSurfaceClasses classify_gadget_surfaces(const Triangulation& gadget,
                                              const NodeGadgetLabels& labels);

// The assembled reduction: one node gadget per graph node (tetrahedra
// [9k, 9k+9) for node k), annuli glued in pairs along the arcs of the graph.
struct GraphReduction {
    CubicGraph graph;
    Triangulation tri;
    std::vector<NodeGadgetLabels> gadget; // per node, tets already offset

    struct ArcGluing {
        int node_a = -1, annulus_a = -1;
        int node_b = -1, annulus_b = -1;
    };
    std::vector<ArcGluing> arc; // aligned with graph.arcs
};

struct BuildOptions {
    bool flip_axis_convention = false; // reverse the direction convention globally
    int mismatch_arc = -1;             // test hook: reverse one identification
};

// Throws NotCubic / Disconnected.
GraphReduction build_t_g(const CubicGraph& g, const BuildOptions& opts = {});

// The connected spanning central surface assembled from the tubes along a
// Hamiltonian cycle (node sequence, wrap implied).  Throws NotHamiltonian.
NormalVector surface_from_cycle(const GraphReduction& r, const std::vector<int>& cycle);

// Reads the Hamiltonian cycle back off a connected spanning central surface.
// Throws CertificateInvalid / LocalMoebiusFound.
std::vector<int> extract_cycle(const GraphReduction& r, const NormalVector& x);

// Exhaustive backtracking; nullopt when no Hamiltonian cycle exists.
// Throws TooLarge beyond max_nodes.
std::optional<std::vector<int>> hamiltonian_oracle(const CubicGraph& g, int max_nodes = 20);

// Graph file: first line "n m", then m lines "u v" (0-based).
CubicGraph graph_from_text(const std::string& text);
std::string to_text(const CubicGraph& g);

// Structured text sidecar with the per-gadget annulus/axis/direction tables
// and the arc-to-annulus assignment.
std::string labels_to_text(const GraphReduction& r);

} // namespace nst
