#pragma once

#include "nst/cone.hpp"
#include "nst/exact.hpp"
#include "nst/triangulation.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nst {

// A coordinate of an abstract tetrahedron: block index plus position 1..7,
// where 1..3 are quadrilateral coordinates and 4..7 triangle coordinates.
struct CoordRef {
    int block = 0;
    int idx = 0;

    bool quad_role() const { return idx >= 1 && idx <= 3; }
    bool triangle_role() const { return idx >= 4 && idx <= 7; }
    int flat() const { return 7 * block + idx - 1; }

    bool operator==(const CoordRef&) const = default;
};

// q + t = q' + t' with quadrilateral/triangle roles enforced; a coordinate
// appearing on both sides counts as two occurrences.
struct AbstractEquation {
    CoordRef q, t, q2, t2;
};

struct ClauseSet {
    std::vector<std::array<std::string, 3>> clauses; // distinct variables per clause

    int size() const { return static_cast<int>(clauses.size()); }
    std::vector<std::string> variables() const; // sorted, unique
};

// An instance of the abstract optimisation problem: p abstract tetrahedra, a
// compatible equation collection, an integer objective and one triangle
// coordinate pinned to zero.
struct AbstractInstance {
    int blocks = 0;
    std::vector<AbstractEquation> equations;
    std::vector<Int> chi; // 7 * blocks coefficients
    CoordRef fixed_zero;  // triangle role
};

struct CompatibilityReport {
    bool compatible = false;
    std::vector<int> occurrences; // per flat coordinate
    bool at_capacity = false;     // |M| == 6p
    bool saturated = false;       // every triangle appears 3 times, every quad 4
};

// Throws RoleViolation on malformed equations.
CompatibilityReport check_compatible(int blocks, const std::vector<AbstractEquation>& m);

// Block layout used by the clause reduction: S_1..S_{n-1}, T_1..T_n,
// U_1..U_{n-1}; k is 1-based as in the construction.
int s_block(int n, int k);
int t_block(int n, int k);
int u_block(int n, int k);

// Ties the quadrilateral coordinates of co-occurring variables together via
// the S tetrahedra: per k < n the triangle-levelling equations (a)-(c), plus
// one linking equation (d) per occurrence found by the sequential scan.
std::vector<AbstractEquation> build_m1(const ClauseSet& c);

// Propagates the per-clause quadrilateral sums through the U tetrahedra:
// equation (a) for k <= n-2 and equations (b)-(h) for k <= n-1, so that
// pinning y_{1,5} = 0 levels x_{k,1}+x_{k,2}+x_{k,3} across all clauses.
// Throws TooFewClauses when n < 2.
std::vector<AbstractEquation> build_m2(int n);

// p = 3n-2 tetrahedra, M = M1 cup M2, chi = sum of the T-block
// quadrilaterals, fixed coordinate y_{1,5}.  Throws TooFewClauses.
AbstractInstance reduce_sat(const ClauseSet& c);

struct DecideResult {
    bool satisfiable = false;
    std::optional<Ray> witness;
};

// Enumerates the vertex solutions of the instance's cone and accepts iff an
// admissible one has positive objective.  Throws IncompatibleM.
DecideResult decide_instance(const AbstractInstance& inst);

using Assignment = std::map<std::string, bool>;

// Exhaustive scan over the 2^|V| truth assignments.  Throws TooManyVariables.
std::optional<Assignment> brute_force_sat(const ClauseSet& c, int max_vars = 24);

// The canonical M-admissible point of a satisfying assignment: w = y = 0,
// x_{k,i} the truth value, triangle coordinates filled in so that every
// matching equation holds.  Throws AssignmentDoesNotSatisfy.
std::vector<Int> construct_witness(const ClauseSet& c, const Assignment& a);

// Reads the assignment back off an M-admissible vector with positive
// objective and fixed coordinate zero.  Throws PreconditionViolated.
Assignment extract_assignment(const ClauseSet& c, const std::vector<Int>& x);

// True iff x is non-negative, satisfies the quadrilateral constraints per
// block, and satisfies every equation.
bool is_m_admissible(int blocks, const std::vector<AbstractEquation>& m,
                     const std::vector<Int>& x);

Int chi_value(const AbstractInstance& inst, const std::vector<Int>& x);

struct ConcreteDecision {
    bool satisfiable = false;
    std::optional<NormalVector> witness;
};

// The concrete decision problem: does t admit an admissible vector with the
// given triangle coordinate zero and positive Euler characteristic?  Throws
// BadCoordinate.
ConcreteDecision decide_concrete(const Triangulation& t, int tet, int tri);

// Clause file: one clause per line, three whitespace-separated names.
ClauseSet clauses_from_text(const std::string& text);
std::string to_text(const ClauseSet& c);

// Instance file: "instance <p>", equation lines
// "eq q <block> <idx> t <block> <idx> = q <block> <idx> t <block> <idx>",
// one "chi <flat>:<coeff> ..." line, one "fixed <block> <idx>" line.
AbstractInstance instance_from_text(const std::string& text);
std::string to_text(const AbstractInstance& inst);

} // namespace nst
