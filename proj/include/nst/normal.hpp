#pragma once

#include "nst/exact.hpp"
#include "nst/triangulation.hpp"

#include <string>
#include <vector>

namespace nst {

// Standard normal coordinates.  Each tetrahedron owns seven coordinates laid
// out as [q1 q2 q3 t0 t1 t2 t3]: quadrilateral j separates the vertex pair
// {0,j} from the opposite pair, and triangle i links vertex i.
struct NormalVector {
    std::vector<Int> coords;

    NormalVector() = default;
    explicit NormalVector(std::vector<Int> c) : coords(std::move(c)) {}
    static NormalVector zeros(int tets) {
        return NormalVector(std::vector<Int>(static_cast<size_t>(7 * tets), Int(0)));
    }

    int tets() const { return static_cast<int>(coords.size() / 7); }

    Int& quad(int tet, int j) { return coords[static_cast<size_t>(7 * tet + j - 1)]; }
    Int& tri(int tet, int i) { return coords[static_cast<size_t>(7 * tet + 3 + i)]; }
    const Int& quad(int tet, int j) const { return coords[static_cast<size_t>(7 * tet + j - 1)]; }
    const Int& tri(int tet, int i) const { return coords[static_cast<size_t>(7 * tet + 3 + i)]; }

    bool operator==(const NormalVector&) const = default;
};

// Elementary disc types within one tetrahedron, in search preference order:
// ids 0,1,2 are quadrilaterals 1..3 and ids 3..6 are triangles 0..3.  The id
// doubles as the coordinate offset within the tetrahedron's block of seven.
constexpr int kDiscTypes = 7;

// The quadrilateral type (1..3) whose normal arc in face f cuts off vertex v;
// equivalently, the quadrilateral parallel to the tetrahedron edge {v,f}.
int quad_cutting(int v, int f);

// The vertex of face `face` cut off by disc `disc`'s normal arc in that face,
// or -1 when the disc induces no arc there (a triangle meeting its own face).
int disc_arc_cut_vertex(int disc, int face);

// One homogeneous matching equation, stored sparsely with summed coefficients.
struct MatchingRow {
    std::vector<std::pair<int, int>> terms; // (coordinate index, coefficient), index-sorted
    int gluing = -1;                        // index into Triangulation::gluings(), -1 = abstract
    int cut_vertex = -1;                    // face vertex (first side) whose arcs this row counts
};

struct MatchingSystem {
    int dim = 0;
    std::vector<MatchingRow> rows;
};

// Three equations per gluing: for each vertex v of the glued face, the discs
// cutting off v on one side must balance those cutting off perm(v) opposite.
MatchingSystem matching_system(const Triangulation& t);

bool satisfies(const MatchingSystem& m, const std::vector<Int>& x);

// Non-negative, matching-satisfied, and at most one non-zero quadrilateral
// coordinate per tetrahedron.  Throws DimensionMismatch on a bad length.
bool is_admissible(const Triangulation& t, const NormalVector& x);
bool is_admissible(const Triangulation& t, const MatchingSystem& m, const NormalVector& x);

// A linear functional evaluating to the Euler characteristic of the realized
// surface: each disc contributes 1, minus 1/2 per side on an internal face
// (1 per boundary side), plus 1/deg(e) per corner on the triangulation edge e.
struct EulerFunctional {
    std::vector<Rat> weights;
    Int scale;                // positive L with L*weights integral
    std::vector<Int> scaled;  // L*weights
};

EulerFunctional euler_functional(const Triangulation& t);

// Sum of weights * coordinates.  Throws NotAdmissible unless x is admissible.
Rat euler_value(const Triangulation& t, const EulerFunctional& f, const NormalVector& x);

// The link of a vertex class as a normal surface: triangle coordinate (tet, i)
// counts the corners of `tet` at vertex i identified into the class.
NormalVector vertex_link_vector(const Triangulation& t, int vertex_class);
NormalVector vertex_link_vector(const Triangulation& t, const Skeleton& s, int vertex_class);

// True iff x is a non-negative integer combination of vertex link vectors:
// all quadrilaterals zero and triangle coordinates constant on each vertex
// class.  The zero vector counts as trivial (the empty combination).
bool is_trivial(const Triangulation& t, const NormalVector& x);

struct SurfaceInfo {
    int euler = 0;
    bool orientable = true;
    int boundary_components = 0;
    bool connected = true;
};

// Builds the disc/arc/corner cell complex of a one-disc-per-tetrahedron
// surface and reports its Euler characteristic, orientability, connectivity
// and boundary circle count.  Throws UnsupportedVector unless every
// coordinate is 0/1 with exactly one disc per tetrahedron, NotAdmissible if
// the matching equations fail.
SurfaceInfo surface_complex(const Triangulation& t, const NormalVector& x);

// Text format: one line of "q1 q2 q3 t0 t1 t2 t3" per tetrahedron.
std::string to_text(const NormalVector& x);
NormalVector normal_vector_from_text(const std::string& text);

// Sparse triples "row coordinate coefficient" for debugging.
std::string to_text(const MatchingSystem& m);

} // namespace nst
