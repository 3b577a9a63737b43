#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nst {

// Permutation of the vertex labels {0,1,2,3} of a tetrahedron.
class Perm4 {
public:
    Perm4() : img_{0, 1, 2, 3} {}
    explicit Perm4(std::array<int, 4> img); // throws MalformedPermutation unless a bijection

    static Perm4 from_digits(const std::string& s); // "2103" -> 0->2, 1->1, 2->0, 3->3

    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }

    Perm4 inverse() const;
    Perm4 then(const Perm4& p) const; // apply *this first, then p
    bool odd() const;
    std::string digits() const;

    bool operator==(const Perm4&) const = default;

private:
    std::array<int, 4> img_;
};

// One face identification.  Face f of a tetrahedron is the triangle opposite
// vertex f; perm maps vertex labels of `tet` to vertex labels of `other_tet`
// and must satisfy perm(face) == other_face.  Stored canonically with the
// lexicographically smaller (tet, face) first.
struct Gluing {
    int tet = 0;
    int face = 0;
    int other_tet = 0;
    int other_face = 0;
    Perm4 perm;

    Gluing() = default;
    Gluing(int t, int f, int t2, int f2, Perm4 p); // validates and canonicalizes

    bool operator==(const Gluing&) const = default;
};

// A generalized triangulation: n tetrahedra plus face identifications.
// Immutable after construction; glue() returns a new triangulation.
class Triangulation {
public:
    explicit Triangulation(int n); // n >= 1

    int size() const { return n_; }
    const std::vector<Gluing>& gluings() const { return gluings_; }

    // Index into gluings() for the identification covering (tet, face), or -1.
    int gluing_at(int tet, int face) const;

    struct Dest {
        int tet;
        int face;
        Perm4 perm; // vertex labels of the source tet -> labels of `tet`
    };
    // Where (tet, face) is glued to, oriented away from the given slot.
    std::optional<Dest> dest(int tet, int face) const;

    int boundary_face_count() const { return 4 * n_ - 2 * static_cast<int>(gluings_.size()); }

    // Free-form tags on tetrahedra/faces/edges, keyed by strings such as
    // "tet:0" or "edge:1:2:3"; serialized with the triangulation.
    std::map<std::string, std::string> labels;

private:
    int n_;
    std::vector<Gluing> gluings_;              // sorted by (tet, face)
    std::vector<std::array<int, 4>> by_slot_;  // gluing index per (tet, face), -1 if open

    friend Triangulation glue(const Triangulation& t, const Gluing& g);
};

// Returns t with g added.  Throws SlotAlreadyGlued if either side is taken.
Triangulation glue(const Triangulation& t, const Gluing& g);

// Tetrahedron edge slots: index 0..5 for the unordered pairs
// {0,1},{0,2},{0,3},{1,2},{1,3},{2,3} in that order.
int edge_index(int a, int b);
std::pair<int, int> edge_vertices(int index); // ascending

// The 1- and 0-skeleton of a triangulation, computed by closing the gluing
// relation over edge and vertex slots.  Edge orientation is tracked so that
// edges identified with themselves in reverse are flagged invalid.
struct Skeleton {
    int tets = 0;
    int edge_count = 0;
    int vertex_count = 0;

    std::vector<int> edge_class;   // 6n slots -> class id
    std::vector<int> vertex_class; // 4n slots -> class id

    std::vector<int> edge_degree;           // per edge class
    std::vector<uint8_t> edge_boundary;     // per edge class
    std::vector<uint8_t> edge_invalid;      // per edge class
    std::vector<uint8_t> vertex_boundary;   // per vertex class
    std::vector<int> vertex_slot_count;     // per vertex class

    int internal_face_count = 0;
    std::vector<std::pair<int, int>> boundary_faces; // open (tet, face) slots, sorted

    bool valid = true; // no invalid edges

    int edge_class_of(int tet, int a, int b) const {
        return edge_class[static_cast<size_t>(6 * tet + edge_index(a, b))];
    }
    int vertex_class_of(int tet, int v) const {
        return vertex_class[static_cast<size_t>(4 * tet + v)];
    }
};

Skeleton compute_skeleton(const Triangulation& t);

enum class LinkType { Sphere, Disc, Other };

struct VertexLink {
    int euler = 0;
    bool connected = true;
    bool closed = false;
    LinkType classification = LinkType::Other;
};

// Per vertex class, aligned with Skeleton vertex class ids.
struct LinkSummary {
    std::vector<VertexLink> links;
};

// Builds every vertex link from the corner triangles surrounding the vertex.
// Throws InvalidEdgePresent when the skeleton has an invalid edge.
LinkSummary vertex_links(const Triangulation& t);

// True iff there are no invalid edges and every vertex link is a sphere
// (internal vertex) or a disc (boundary vertex).
bool is_3manifold(const Triangulation& t);

bool is_connected(const Triangulation& t);

// +1/-1 per tetrahedron making every gluing orientation-reversing, or
// nullopt when no such labeling exists.  Requires a connected triangulation.
std::optional<std::vector<int>> orientation_signs(const Triangulation& t);

// Throws Disconnected when t is not connected.
bool is_orientable(const Triangulation& t);

// Text format: "tri <n>" header, one "g t f t' f' p0p1p2p3" line per gluing
// in canonical order, then sorted "label <key> <value>" lines.  Round-trips
// bit-exactly on canonical form.
std::string to_text(const Triangulation& t);
Triangulation triangulation_from_text(const std::string& text);

} // namespace nst
