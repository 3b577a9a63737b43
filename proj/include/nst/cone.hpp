#pragma once

#include "nst/exact.hpp"
#include "nst/normal.hpp"

#include <array>
#include <string>
#include <vector>

namespace nst {

// A homogeneous cone {x >= 0, Ax = 0} with optional quadrilateral grouping
// (three-coordinate blocks used for admissibility filtering) and coordinates
// pinned to zero.  Pinned coordinates are realized as extra unit equations so
// that indexing stays stable.
struct ConeSystem {
    int dim = 0;
    std::vector<std::vector<std::pair<int, int>>> rows; // sparse integer equations
    std::vector<std::array<int, 3>> quad_pattern;       // disjoint coordinate triples
    std::vector<int> zero_fixed;                        // coordinates forced to 0

    // Optional: drop rays violating the quadrilateral pattern during the
    // incremental construction.  Off by default; when enabled the output is
    // exactly the admissible extreme rays (each end-verified by rank).
    bool prune_quad_violations = false;
};

struct Ray {
    std::vector<Int> coords; // non-negative, not all zero, gcd 1

    bool operator==(const Ray&) const = default;
    bool operator<(const Ray& o) const { return coords < o.coords; }
};

// The complete set of primitive extreme rays, enumerated by the incremental
// double description method with exact arithmetic; output sorted
// lexicographically.  An empty cone yields an empty set.
std::vector<Ray> extreme_rays(const ConeSystem& sys);

// Rank test: x spans an extreme ray iff the equation rows together with the
// unit rows of its zero coordinates have rank dim - 1.  Throws NotInCone if
// x does not lie in the cone.
bool is_extreme_ray(const ConeSystem& sys, const Ray& x);

// Keeps rays with at most one non-zero coordinate per quadrilateral block.
std::vector<Ray> filter_admissible(std::vector<Ray> rays,
                                   const std::vector<std::array<int, 3>>& quad_pattern);

// The standard solution cone of a triangulation's matching system.
ConeSystem cone_from_matching(const MatchingSystem& m, bool with_quad_pattern = true);

// One ray per line, space-separated integers, lexicographically sorted.
std::string rays_to_text(const std::vector<Ray>& rays);

} // namespace nst
