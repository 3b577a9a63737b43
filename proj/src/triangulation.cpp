#include "nst/triangulation.hpp"

#include "nst/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nst {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::SlotAlreadyGlued: return "SlotAlreadyGlued";
    case Errc::MalformedPermutation: return "MalformedPermutation";
    case Errc::SelfFaceGluing: return "SelfFaceGluing";
    case Errc::InvalidEdgePresent: return "InvalidEdgePresent";
    case Errc::Disconnected: return "Disconnected";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::UnsupportedVector: return "UnsupportedVector";
    case Errc::NotInCone: return "NotInCone";
    case Errc::RoleViolation: return "RoleViolation";
    case Errc::TooFewClauses: return "TooFewClauses";
    case Errc::IncompatibleM: return "IncompatibleM";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::AssignmentDoesNotSatisfy: return "AssignmentDoesNotSatisfy";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::BadCoordinate: return "BadCoordinate";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotAGluing: return "NotAGluing";
    case Errc::NotCubic: return "NotCubic";
    case Errc::NotHamiltonian: return "NotHamiltonian";
    case Errc::CertificateInvalid: return "CertificateInvalid";
    case Errc::LocalMoebiusFound: return "LocalMoebiusFound";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

// ---------------------------------------------------------------- Perm4 ----

Perm4::Perm4(std::array<int, 4> img) : img_(img) {
    int seen = 0;
    for (int i : img_) {
        if (i < 0 || i > 3)
            fail(Errc::MalformedPermutation, "image out of range");
        seen |= 1 << i;
    }
    if (seen != 0b1111)
        fail(Errc::MalformedPermutation, "not a bijection of {0,1,2,3}");
}

Perm4 Perm4::from_digits(const std::string& s) {
    if (s.size() != 4)
        fail(Errc::MalformedPermutation, "expected 4 digits, got '" + s + "'");
    std::array<int, 4> img{};
    for (int i = 0; i < 4; ++i)
        img[static_cast<size_t>(i)] = s[static_cast<size_t>(i)] - '0';
    return Perm4(img);
}

Perm4 Perm4::inverse() const {
    std::array<int, 4> img{};
    for (int i = 0; i < 4; ++i)
        img[static_cast<size_t>(img_[static_cast<size_t>(i)])] = i;
    return Perm4(img);
}

Perm4 Perm4::then(const Perm4& p) const {
    std::array<int, 4> img{};
    for (int i = 0; i < 4; ++i)
        img[static_cast<size_t>(i)] = p(img_[static_cast<size_t>(i)]);
    return Perm4(img);
}

bool Perm4::odd() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (img_[static_cast<size_t>(i)] > img_[static_cast<size_t>(j)])
                ++inversions;
    return (inversions & 1) != 0;
}

std::string Perm4::digits() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i)
        s[static_cast<size_t>(i)] = static_cast<char>('0' + img_[static_cast<size_t>(i)]);
    return s;
}

// --------------------------------------------------------------- Gluing ----

Gluing::Gluing(int t, int f, int t2, int f2, Perm4 p)
    : tet(t), face(f), other_tet(t2), other_face(f2), perm(p) {
    if (t < 0 || t2 < 0 || f < 0 || f > 3 || f2 < 0 || f2 > 3)
        fail(Errc::MalformedPermutation, "face index out of range");
    if (t == t2 && f == f2)
        fail(Errc::SelfFaceGluing, "cannot identify a face with itself");
    if (perm(face) != other_face)
        fail(Errc::MalformedPermutation, "perm(face) != other_face");
    if (std::pair(other_tet, other_face) < std::pair(tet, face)) {
        std::swap(tet, other_tet);
        std::swap(face, other_face);
        perm = perm.inverse();
    }
}

// -------------------------------------------------------- Triangulation ----

Triangulation::Triangulation(int n) : n_(n) {
    if (n < 1)
        fail(Errc::MalformedPermutation, "triangulation needs at least one tetrahedron");
    by_slot_.assign(static_cast<size_t>(n), {-1, -1, -1, -1});
}

int Triangulation::gluing_at(int tet, int face) const {
    return by_slot_[static_cast<size_t>(tet)][static_cast<size_t>(face)];
}

std::optional<Triangulation::Dest> Triangulation::dest(int tet, int face) const {
    int g = gluing_at(tet, face);
    if (g < 0)
        return std::nullopt;
    const Gluing& gl = gluings_[static_cast<size_t>(g)];
    if (gl.tet == tet && gl.face == face)
        return Dest{gl.other_tet, gl.other_face, gl.perm};
    return Dest{gl.tet, gl.face, gl.perm.inverse()};
}

Triangulation glue(const Triangulation& t, const Gluing& g) {
    if (g.tet >= t.size() || g.other_tet >= t.size())
        fail(Errc::MalformedPermutation, "tetrahedron index out of range");
    if (t.gluing_at(g.tet, g.face) >= 0 || t.gluing_at(g.other_tet, g.other_face) >= 0)
        fail(Errc::SlotAlreadyGlued, "face slot already identified");
    Triangulation out = t;
    out.gluings_.push_back(g);
    std::sort(out.gluings_.begin(), out.gluings_.end(),
              [](const Gluing& a, const Gluing& b) {
                  return std::pair(a.tet, a.face) < std::pair(b.tet, b.face);
              });
    for (auto& row : out.by_slot_)
        row = {-1, -1, -1, -1};
    for (size_t i = 0; i < out.gluings_.size(); ++i) {
        const Gluing& gl = out.gluings_[i];
        out.by_slot_[static_cast<size_t>(gl.tet)][static_cast<size_t>(gl.face)] = static_cast<int>(i);
        out.by_slot_[static_cast<size_t>(gl.other_tet)][static_cast<size_t>(gl.other_face)] =
            static_cast<int>(i);
    }
    return out;
}

int edge_index(int a, int b) {
    if (a > b)
        std::swap(a, b);
    static constexpr int table[4][4] = {
        {-1, 0, 1, 2},
        {0, -1, 3, 4},
        {1, 3, -1, 5},
        {2, 4, 5, -1},
    };
    return table[a][b];
}

std::pair<int, int> edge_vertices(int index) {
    static constexpr std::pair<int, int> table[6] = {
        {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
    };
    return table[index];
}

namespace {

// Union-find with a parity bit per element, tracking orientation relative to
// the class representative.  union_sets returns false when the merge clashes
// with an existing parity (an identification reversing an edge on itself).
struct ParityUF {
    std::vector<int> parent;
    std::vector<uint8_t> parity; // relative to parent

    explicit ParityUF(size_t n) : parent(n), parity(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::pair<int, int> find(int x) {
        if (parent[static_cast<size_t>(x)] == x)
            return {x, 0};
        auto [root, par] = find(parent[static_cast<size_t>(x)]);
        parent[static_cast<size_t>(x)] = root;
        parity[static_cast<size_t>(x)] = static_cast<uint8_t>(parity[static_cast<size_t>(x)] ^ par);
        return {root, parity[static_cast<size_t>(x)]};
    }

    // Merge with x ~ y at relative parity p; false on parity conflict.
    bool union_sets(int x, int y, int p) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry)
            return ((px ^ py) & 1) == p;
        parent[static_cast<size_t>(ry)] = rx;
        parity[static_cast<size_t>(ry)] = static_cast<uint8_t>(px ^ py ^ p);
        return true;
    }
};

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

// The three vertices of face f, ascending.
std::array<int, 3> face_vertices(int f) {
    std::array<int, 3> v{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != f)
            v[static_cast<size_t>(k++)] = i;
    return v;
}

} // namespace

Skeleton compute_skeleton(const Triangulation& t) {
    const int n = t.size();
    Skeleton s;
    s.tets = n;

    ParityUF edges(static_cast<size_t>(6 * n));
    PlainUF verts(static_cast<size_t>(4 * n));
    std::vector<uint8_t> invalid_root(static_cast<size_t>(6 * n), 0);

    for (const Gluing& g : t.gluings()) {
        auto fv = face_vertices(g.face);
        for (int v : fv)
            verts.union_sets(4 * g.tet + v, 4 * g.other_tet + g.perm(v));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int a = fv[static_cast<size_t>(i)], b = fv[static_cast<size_t>(j)];
                int a2 = g.perm(a), b2 = g.perm(b);
                int slot1 = 6 * g.tet + edge_index(a, b);
                int slot2 = 6 * g.other_tet + edge_index(a2, b2);
                int parity = ((a < b) != (a2 < b2)) ? 1 : 0;
                if (!edges.union_sets(slot1, slot2, parity))
                    invalid_root[static_cast<size_t>(edges.find(slot1).first)] = 1;
            }
    }

    // Densify class ids.
    std::vector<int> edge_id(static_cast<size_t>(6 * n), -1);
    s.edge_class.resize(static_cast<size_t>(6 * n));
    for (int slot = 0; slot < 6 * n; ++slot) {
        int root = edges.find(slot).first;
        if (edge_id[static_cast<size_t>(root)] < 0) {
            edge_id[static_cast<size_t>(root)] = s.edge_count++;
            s.edge_degree.push_back(0);
            s.edge_boundary.push_back(0);
            s.edge_invalid.push_back(invalid_root[static_cast<size_t>(root)]);
        }
        int cls = edge_id[static_cast<size_t>(root)];
        s.edge_class[static_cast<size_t>(slot)] = cls;
        s.edge_degree[static_cast<size_t>(cls)]++;
    }

    std::vector<int> vert_id(static_cast<size_t>(4 * n), -1);
    s.vertex_class.resize(static_cast<size_t>(4 * n));
    for (int slot = 0; slot < 4 * n; ++slot) {
        int root = verts.find(slot);
        if (vert_id[static_cast<size_t>(root)] < 0) {
            vert_id[static_cast<size_t>(root)] = s.vertex_count++;
            s.vertex_boundary.push_back(0);
            s.vertex_slot_count.push_back(0);
        }
        int cls = vert_id[static_cast<size_t>(root)];
        s.vertex_class[static_cast<size_t>(slot)] = cls;
        s.vertex_slot_count[static_cast<size_t>(cls)]++;
    }

    s.internal_face_count = static_cast<int>(t.gluings().size());
    for (int tet = 0; tet < n; ++tet)
        for (int f = 0; f < 4; ++f) {
            if (t.gluing_at(tet, f) >= 0)
                continue;
            s.boundary_faces.emplace_back(tet, f);
            for (int v : face_vertices(f)) {
                s.vertex_boundary[static_cast<size_t>(s.vertex_class_of(tet, v))] = 1;
            }
            auto fv = face_vertices(f);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int cls = s.edge_class_of(tet, fv[static_cast<size_t>(i)], fv[static_cast<size_t>(j)]);
                    s.edge_boundary[static_cast<size_t>(cls)] = 1;
                }
        }

    for (uint8_t inv : s.edge_invalid)
        if (inv)
            s.valid = false;
    return s;
}

LinkSummary vertex_links(const Triangulation& t) {
    Skeleton s = compute_skeleton(t);
    if (!s.valid)
        fail(Errc::InvalidEdgePresent, "vertex links are undefined with invalid edges");

    const int n = t.size();

    // Corners of corner triangles: (tet, v, w) with w != v is the corner of
    // the triangle linking v inside `tet` that sits on the edge {v,w}.
    auto corner_id = [](int tet, int v, int w) {
        return 12 * tet + 3 * v + (w > v ? w - 1 : w);
    };
    PlainUF corners(static_cast<size_t>(12 * n));
    for (const Gluing& g : t.gluings()) {
        auto fv = face_vertices(g.face);
        for (int v : fv)
            for (int w : fv) {
                if (v == w)
                    continue;
                corners.union_sets(corner_id(g.tet, v, w),
                                   corner_id(g.other_tet, g.perm(v), g.perm(w)));
            }
    }

    LinkSummary out;
    out.links.resize(static_cast<size_t>(s.vertex_count));

    // F: one corner triangle per vertex slot.
    std::vector<int> faces(static_cast<size_t>(s.vertex_count), 0);
    std::vector<int> boundary_sides(static_cast<size_t>(s.vertex_count), 0);
    std::vector<int> internal_side_slots(static_cast<size_t>(s.vertex_count), 0);
    for (int tet = 0; tet < n; ++tet)
        for (int v = 0; v < 4; ++v) {
            int cls = s.vertex_class_of(tet, v);
            faces[static_cast<size_t>(cls)]++;
            for (int f = 0; f < 4; ++f) {
                if (f == v)
                    continue;
                if (t.gluing_at(tet, f) >= 0)
                    internal_side_slots[static_cast<size_t>(cls)]++;
                else
                    boundary_sides[static_cast<size_t>(cls)]++;
            }
        }

    // V: corner classes, attributed to the vertex class of their triangle.
    std::vector<int> corner_classes(static_cast<size_t>(s.vertex_count), 0);
    std::vector<uint8_t> seen(static_cast<size_t>(12 * n), 0);
    for (int tet = 0; tet < n; ++tet)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w) {
                if (v == w)
                    continue;
                int root = corners.find(corner_id(tet, v, w));
                if (seen[static_cast<size_t>(root)])
                    continue;
                seen[static_cast<size_t>(root)] = 1;
                corner_classes[static_cast<size_t>(s.vertex_class_of(tet, v))]++;
            }

    for (int cls = 0; cls < s.vertex_count; ++cls) {
        VertexLink& link = out.links[static_cast<size_t>(cls)];
        int F = faces[static_cast<size_t>(cls)];
        int E = internal_side_slots[static_cast<size_t>(cls)] / 2 +
                boundary_sides[static_cast<size_t>(cls)];
        int V = corner_classes[static_cast<size_t>(cls)];
        link.euler = V - E + F;
        link.closed = boundary_sides[static_cast<size_t>(cls)] == 0;
        // The vertex class is by construction the connected closure of the
        // corner-triangle adjacency, so its link is connected.
        link.connected = true;
        if (link.closed && link.euler == 2)
            link.classification = LinkType::Sphere;
        else if (!link.closed && link.euler == 1)
            link.classification = LinkType::Disc;
        else
            link.classification = LinkType::Other;
    }
    return out;
}

bool is_3manifold(const Triangulation& t) {
    Skeleton s = compute_skeleton(t);
    if (!s.valid)
        return false;
    LinkSummary links = vertex_links(t);
    for (int cls = 0; cls < s.vertex_count; ++cls) {
        const VertexLink& link = links.links[static_cast<size_t>(cls)];
        bool boundary = s.vertex_boundary[static_cast<size_t>(cls)] != 0;
        if (boundary && link.classification != LinkType::Disc)
            return false;
        if (!boundary && link.classification != LinkType::Sphere)
            return false;
    }
    return true;
}

bool is_connected(const Triangulation& t) {
    PlainUF uf(static_cast<size_t>(t.size()));
    for (const Gluing& g : t.gluings())
        uf.union_sets(g.tet, g.other_tet);
    int root = uf.find(0);
    for (int i = 1; i < t.size(); ++i)
        if (uf.find(i) != root)
            return false;
    return true;
}

std::optional<std::vector<int>> orientation_signs(const Triangulation& t) {
    if (!is_connected(t))
        fail(Errc::Disconnected, "orientation requires a connected triangulation");
    // Two tetrahedra glued along a face carry consistent orientations exactly
    // when the gluing permutation is odd; propagate signs and look for a clash.
    std::vector<int> sign(static_cast<size_t>(t.size()), 0);
    std::vector<int> queue{0};
    sign[0] = 1;
    while (!queue.empty()) {
        int tet = queue.back();
        queue.pop_back();
        for (int f = 0; f < 4; ++f) {
            auto d = t.dest(tet, f);
            if (!d)
                continue;
            int want = d->perm.odd() ? sign[static_cast<size_t>(tet)]
                                     : -sign[static_cast<size_t>(tet)];
            int& cur = sign[static_cast<size_t>(d->tet)];
            if (cur == 0) {
                cur = want;
                queue.push_back(d->tet);
            } else if (cur != want) {
                return std::nullopt;
            }
        }
    }
    return sign;
}

bool is_orientable(const Triangulation& t) {
    return orientation_signs(t).has_value();
}

// ------------------------------------------------------------------ I/O ----

std::string to_text(const Triangulation& t) {
    std::ostringstream out;
    out << "tri " << t.size() << "\n";
    for (const Gluing& g : t.gluings())
        out << "g " << g.tet << " " << g.face << " " << g.other_tet << " " << g.other_face << " "
            << g.perm.digits() << "\n";
    for (const auto& [key, value] : t.labels)
        out << "label " << key << " " << value << "\n";
    return out.str();
}

Triangulation triangulation_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    if (!(in >> word) || word != "tri")
        fail(Errc::ParseError, "expected 'tri <n>' header");
    int n = 0;
    if (!(in >> n) || n < 1)
        fail(Errc::ParseError, "bad tetrahedron count");
    Triangulation t(n);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        ls >> word;
        if (word == "g") {
            int tet, face, tet2, face2;
            std::string digits;
            if (!(ls >> tet >> face >> tet2 >> face2 >> digits))
                fail(Errc::ParseError, "bad gluing line: " + line);
            t = glue(t, Gluing(tet, face, tet2, face2, Perm4::from_digits(digits)));
        } else if (word == "label") {
            std::string key;
            if (!(ls >> key))
                fail(Errc::ParseError, "bad label line: " + line);
            std::string value;
            std::getline(ls, value);
            if (!value.empty() && value.front() == ' ')
                value.erase(value.begin());
            t.labels[key] = value;
        } else {
            fail(Errc::ParseError, "unknown directive: " + word);
        }
    }
    return t;
}

} // namespace nst
