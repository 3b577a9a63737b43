#pragma once

#include "nst/normal.hpp"
#include "nst/triangulation.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace nst {

// One elementary disc per tetrahedron (or -1 while unset); induces a 0/1
// normal vector with exactly one disc per tetrahedron when complete.
using DiscChoice = std::vector<int8_t>;

NormalVector vector_from_choice(const DiscChoice& choice);
// nullopt unless x is 0/1 with exactly one disc per tetrahedron.
std::optional<DiscChoice> choice_from_vector(const NormalVector& x);

struct DetectOptions {
    long long budget = 100000000; // search nodes before BudgetExceeded
    int threads = 1;              // root disc choices explored in parallel
    long long* nodes_out = nullptr; // search nodes actually spent, if wanted
};

// The polynomial-time splitting surface search: for each of the three
// quadrilateral choices in tetrahedron 0, breadth-first propagate the forced
// quadrilateral across gluings; the first globally consistent choice wins.
// Throws Disconnected when t is not connected.
std::optional<NormalVector> find_splitting_surface(const Triangulation& t);

// All spanning central surfaces (connected or not), by backtracking over
// tetrahedra with per-face arc consistency.  Deterministic order: tetrahedra
// breadth-first from 0, discs quad1 < quad2 < quad3 < tri0 < ... < tri3.
std::vector<NormalVector> enumerate_spanning_central(const Triangulation& t,
                                                     const DetectOptions& opts = {});

// First connected spanning central surface in the deterministic order, or
// nullopt.  Throws Disconnected / BudgetExceeded.
std::optional<NormalVector> find_connected_spanning_central(const Triangulation& t,
                                                            const DetectOptions& opts = {});

// Polynomial-time certificate check: 0/1 coordinates, one disc per
// tetrahedron, admissible, and connected via breadth-first search over disc
// adjacency.  Never enumerates.
bool verify_certificate(const Triangulation& t, const NormalVector& x);

// Internal search hook shared with the gadget assembly: enumerate complete
// arc-consistent choices whose per-tetrahedron discs lie in `allowed`
// (bitmask over the seven disc types), invoking the callback until it
// returns false.  Returns false when the node budget ran out.
bool scan_spanning_central(const Triangulation& t, const std::vector<uint8_t>& allowed,
                           const DetectOptions& opts,
                           const std::function<bool(const DiscChoice&)>& on_solution);

} // namespace nst
