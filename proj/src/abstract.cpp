#include "nst/abstract.hpp"

#include "nst/error.hpp"
#include "nst/normal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nst {

std::vector<std::string> ClauseSet::variables() const {
    std::set<std::string> vars;
    for (const auto& clause : clauses)
        for (const auto& v : clause)
            vars.insert(v);
    return std::vector<std::string>(vars.begin(), vars.end());
}

namespace {

void check_roles(const AbstractEquation& eq, int blocks) {
    auto check = [&](const CoordRef& c, bool quad) {
        if (c.block < 0 || c.block >= blocks)
            fail(Errc::RoleViolation, "coordinate block out of range");
        if (quad && !c.quad_role())
            fail(Errc::RoleViolation, "expected a quadrilateral coordinate");
        if (!quad && !c.triangle_role())
            fail(Errc::RoleViolation, "expected a triangle coordinate");
    };
    check(eq.q, true);
    check(eq.t, false);
    check(eq.q2, true);
    check(eq.t2, false);
}

std::vector<std::pair<int, int>> equation_row(const AbstractEquation& eq) {
    std::map<int, int> terms;
    auto add = [&](int idx, int coeff) {
        terms[idx] += coeff;
        if (terms[idx] == 0)
            terms.erase(idx);
    };
    add(eq.q.flat(), 1);
    add(eq.t.flat(), 1);
    add(eq.q2.flat(), -1);
    add(eq.t2.flat(), -1);
    return {terms.begin(), terms.end()};
}

} // namespace

CompatibilityReport check_compatible(int blocks, const std::vector<AbstractEquation>& m) {
    CompatibilityReport report;
    report.occurrences.assign(static_cast<size_t>(7 * blocks), 0);
    for (const AbstractEquation& eq : m) {
        check_roles(eq, blocks);
        for (const CoordRef* c : {&eq.q, &eq.t, &eq.q2, &eq.t2})
            report.occurrences[static_cast<size_t>(c->flat())]++;
    }
    report.compatible = true;
    report.saturated = true;
    for (int b = 0; b < blocks; ++b)
        for (int i = 1; i <= 7; ++i) {
            int count = report.occurrences[static_cast<size_t>(7 * b + i - 1)];
            int cap = i <= 3 ? 4 : 3;
            if (count > cap)
                report.compatible = false;
            if (count != cap)
                report.saturated = false;
        }
    report.at_capacity = static_cast<int>(m.size()) == 6 * blocks;
    return report;
}

int s_block(int, int k) { return k - 1; }
int t_block(int n, int k) { return (n - 1) + (k - 1); }
int u_block(int n, int k) { return (2 * n - 1) + (k - 1); }

std::vector<AbstractEquation> build_m1(const ClauseSet& c) {
    const int n = c.size();
    std::vector<AbstractEquation> m1;
    auto w = [&](int k, int i) { return CoordRef{s_block(n, k), i}; };
    auto x = [&](int k, int i) { return CoordRef{t_block(n, k), i}; };

    // (a)-(c): level the four triangle coordinates of each S tetrahedron.
    for (int k = 1; k <= n - 1; ++k) {
        m1.push_back({w(k, 1), w(k, 4), w(k, 1), w(k, 5)});
        m1.push_back({w(k, 2), w(k, 4), w(k, 2), w(k, 7)});
        m1.push_back({w(k, 3), w(k, 6), w(k, 3), w(k, 7)});
    }
    // (d): for each occurrence u_{k,i} with k < n, link to the first later
    // occurrence of the same variable.
    for (int k = 1; k <= n - 1; ++k)
        for (int i = 1; i <= 3; ++i) {
            const std::string& var = c.clauses[static_cast<size_t>(k - 1)][static_cast<size_t>(i - 1)];
            bool added = false;
            for (int l = k + 1; l <= n && !added; ++l)
                for (int j = 1; j <= 3 && !added; ++j)
                    if (c.clauses[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)] == var) {
                        m1.push_back({x(k, i), w(k, i + 3), x(l, j), w(k, i + 4)});
                        added = true;
                    }
        }
    return m1;
}

std::vector<AbstractEquation> build_m2(int n) {
    if (n < 2)
        fail(Errc::TooFewClauses, "the U-chain needs at least two clauses");
    std::vector<AbstractEquation> m2;
    auto x = [&](int k, int i) { return CoordRef{t_block(n, k), i}; };
    auto y = [&](int k, int i) { return CoordRef{u_block(n, k), i}; };

    for (int k = 1; k <= n - 2; ++k)
        m2.push_back({y(k, 2), y(k, 6), y(k + 1, 1), y(k + 1, 5)}); // (a)
    for (int k = 1; k <= n - 1; ++k) {
        m2.push_back({y(k, 1), y(k, 4), y(k, 2), y(k, 4)});         // (b)
        m2.push_back({y(k, 3), y(k, 5), y(k, 3), y(k, 6)});         // (c)
        m2.push_back({y(k, 1), x(k, 4), x(k, 3), y(k, 5)});         // (d)
        m2.push_back({y(k, 1), x(k + 1, 6), x(k + 1, 3), y(k, 6)}); // (e)
        m2.push_back({y(k, 2), x(k, 5), x(k, 2), x(k, 4)});         // (f)
        m2.push_back({y(k, 2), x(k + 1, 7), x(k + 1, 2), x(k + 1, 6)}); // (g)
        m2.push_back({x(k, 1), x(k, 5), x(k + 1, 1), x(k + 1, 7)}); // (h)
    }
    return m2;
}

AbstractInstance reduce_sat(const ClauseSet& c) {
    const int n = c.size();
    if (n < 2)
        fail(Errc::TooFewClauses, "the reduction needs at least two clauses");
    for (const auto& clause : c.clauses)
        if (clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2])
            fail(Errc::RoleViolation, "clause variables must be distinct");

    AbstractInstance inst;
    inst.blocks = 3 * n - 2;
    inst.equations = build_m1(c);
    auto m2 = build_m2(n);
    inst.equations.insert(inst.equations.end(), m2.begin(), m2.end());
    inst.chi.assign(static_cast<size_t>(7 * inst.blocks), Int(0));
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= 3; ++i)
            inst.chi[static_cast<size_t>(CoordRef{t_block(n, k), i}.flat())] = 1;
    inst.fixed_zero = CoordRef{u_block(n, 1), 5};
    return inst;
}

Int chi_value(const AbstractInstance& inst, const std::vector<Int>& x) {
    Int sum = 0;
    for (size_t i = 0; i < inst.chi.size(); ++i)
        sum += inst.chi[i] * x[i];
    return sum;
}

bool is_m_admissible(int blocks, const std::vector<AbstractEquation>& m,
                     const std::vector<Int>& x) {
    for (const Int& v : x)
        if (v < 0)
            return false;
    for (int b = 0; b < blocks; ++b) {
        int nonzero = 0;
        for (int i = 0; i < 3; ++i)
            if (x[static_cast<size_t>(7 * b + i)] != 0)
                ++nonzero;
        if (nonzero > 1)
            return false;
    }
    for (const AbstractEquation& eq : m) {
        Int sum = 0;
        for (const auto& [idx, coeff] : equation_row(eq))
            sum += coeff * x[static_cast<size_t>(idx)];
        if (sum != 0)
            return false;
    }
    return true;
}

DecideResult decide_instance(const AbstractInstance& inst) {
    CompatibilityReport report = check_compatible(inst.blocks, inst.equations);
    if (!report.compatible)
        fail(Errc::IncompatibleM, "the equation collection is not compatible");
    if (!inst.fixed_zero.triangle_role() || inst.fixed_zero.block < 0 ||
        inst.fixed_zero.block >= inst.blocks)
        fail(Errc::RoleViolation, "fixed coordinate must be a triangle coordinate");
    if (static_cast<int>(inst.chi.size()) != 7 * inst.blocks)
        fail(Errc::DimensionMismatch, "objective must have one coefficient per coordinate");

    ConeSystem sys;
    sys.dim = 7 * inst.blocks;
    for (const AbstractEquation& eq : inst.equations)
        sys.rows.push_back(equation_row(eq));
    sys.zero_fixed.push_back(inst.fixed_zero.flat());
    for (int b = 0; b < inst.blocks; ++b)
        sys.quad_pattern.push_back({7 * b, 7 * b + 1, 7 * b + 2});
    // Only vertex solutions obeying the quadrilateral constraints can decide
    // the instance, so the enumeration may discard violating rays early.
    sys.prune_quad_violations = true;

    DecideResult result;
    for (Ray& ray : filter_admissible(extreme_rays(sys), sys.quad_pattern)) {
        Int value = 0;
        for (size_t i = 0; i < inst.chi.size(); ++i)
            value += inst.chi[i] * ray.coords[i];
        if (value > 0) {
            result.satisfiable = true;
            result.witness = std::move(ray);
            break;
        }
    }
    return result;
}

std::optional<Assignment> brute_force_sat(const ClauseSet& c, int max_vars) {
    std::vector<std::string> vars = c.variables();
    if (static_cast<int>(vars.size()) > max_vars)
        fail(Errc::TooManyVariables,
             std::to_string(vars.size()) + " variables exceed the bound of " +
                 std::to_string(max_vars));
    std::map<std::string, int> index;
    for (size_t i = 0; i < vars.size(); ++i)
        index[vars[i]] = static_cast<int>(i);

    for (uint64_t bits = 0; bits < (uint64_t(1) << vars.size()); ++bits) {
        bool ok = true;
        for (const auto& clause : c.clauses) {
            int trues = 0;
            for (const auto& v : clause)
                trues += (bits >> index[v]) & 1;
            if (trues != 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            Assignment a;
            for (size_t i = 0; i < vars.size(); ++i)
                a[vars[i]] = ((bits >> i) & 1) != 0;
            return a;
        }
    }
    return std::nullopt;
}

std::vector<Int> construct_witness(const ClauseSet& c, const Assignment& a) {
    const int n = c.size();
    if (n < 2)
        fail(Errc::TooFewClauses, "the reduction needs at least two clauses");
    for (const auto& clause : c.clauses) {
        int trues = 0;
        for (const auto& v : clause) {
            auto it = a.find(v);
            if (it == a.end())
                fail(Errc::AssignmentDoesNotSatisfy, "variable " + v + " is unassigned");
            trues += it->second ? 1 : 0;
        }
        if (trues != 1)
            fail(Errc::AssignmentDoesNotSatisfy, "a clause does not have exactly one true variable");
    }

    std::vector<Int> x(static_cast<size_t>(7 * (3 * n - 2)), Int(0));
    auto set = [&](CoordRef ref, const Int& v) { x[static_cast<size_t>(ref.flat())] = v; };
    for (int k = 1; k <= n; ++k) {
        const auto& clause = c.clauses[static_cast<size_t>(k - 1)];
        for (int i = 1; i <= 3; ++i)
            set({t_block(n, k), i}, a.at(clause[static_cast<size_t>(i - 1)]) ? 1 : 0);
        Int x2 = x[static_cast<size_t>(CoordRef{t_block(n, k), 2}.flat())];
        Int x3 = x[static_cast<size_t>(CoordRef{t_block(n, k), 3}.flat())];
        set({t_block(n, k), 4}, x3);
        set({t_block(n, k), 6}, x3);
        set({t_block(n, k), 5}, x2 + x3);
        set({t_block(n, k), 7}, x2 + x3);
    }
    return x;
}

Assignment extract_assignment(const ClauseSet& c, const std::vector<Int>& x) {
    AbstractInstance inst = reduce_sat(c);
    if (static_cast<int>(x.size()) != 7 * inst.blocks)
        fail(Errc::PreconditionViolated, "vector has the wrong dimension");
    if (!is_m_admissible(inst.blocks, inst.equations, x))
        fail(Errc::PreconditionViolated, "vector is not M-admissible");
    if (chi_value(inst, x) <= 0)
        fail(Errc::PreconditionViolated, "objective is not positive");
    if (x[static_cast<size_t>(inst.fixed_zero.flat())] != 0)
        fail(Errc::PreconditionViolated, "fixed coordinate is not zero");

    const int n = c.size();
    Assignment a;
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= 3; ++i) {
            bool value = x[static_cast<size_t>(CoordRef{t_block(n, k), i}.flat())] != 0;
            const std::string& var = c.clauses[static_cast<size_t>(k - 1)][static_cast<size_t>(i - 1)];
            auto [it, inserted] = a.emplace(var, value);
            if (!inserted && it->second != value)
                fail(Errc::PreconditionViolated, "occurrences of " + var + " disagree");
        }
    for (const auto& clause : c.clauses) {
        int trues = 0;
        for (const auto& v : clause)
            trues += a.at(v) ? 1 : 0;
        if (trues != 1)
            fail(Errc::PreconditionViolated, "extracted assignment does not satisfy the clauses");
    }
    return a;
}

ConcreteDecision decide_concrete(const Triangulation& t, int tet, int tri) {
    if (tet < 0 || tet >= t.size() || tri < 0 || tri > 3)
        fail(Errc::BadCoordinate, "triangle coordinate out of range");

    MatchingSystem m = matching_system(t);
    ConeSystem sys = cone_from_matching(m, true);
    sys.zero_fixed.push_back(7 * tet + 3 + tri);
    sys.prune_quad_violations = true;
    EulerFunctional chi = euler_functional(t);

    ConcreteDecision result;
    for (Ray& ray : filter_admissible(extreme_rays(sys), sys.quad_pattern)) {
        Int value = 0;
        for (size_t i = 0; i < chi.scaled.size(); ++i)
            value += chi.scaled[i] * ray.coords[i];
        if (value > 0) {
            result.satisfiable = true;
            result.witness = NormalVector(std::move(ray.coords));
            break;
        }
    }
    return result;
}

// ------------------------------------------------------------------ I/O ----

ClauseSet clauses_from_text(const std::string& text) {
    std::istringstream in(text);
    ClauseSet c;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::array<std::string, 3> clause;
        if (!(ls >> clause[0]))
            continue; // blank line
        if (!(ls >> clause[1] >> clause[2]))
            fail(Errc::ParseError, "clause needs three variables: " + line);
        std::string extra;
        if (ls >> extra)
            fail(Errc::ParseError, "clause has more than three variables: " + line);
        if (clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2])
            fail(Errc::ParseError, "clause variables must be distinct: " + line);
        c.clauses.push_back(std::move(clause));
    }
    return c;
}

std::string to_text(const ClauseSet& c) {
    std::ostringstream out;
    for (const auto& clause : c.clauses)
        out << clause[0] << " " << clause[1] << " " << clause[2] << "\n";
    return out.str();
}

AbstractInstance instance_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    if (!(in >> word) || word != "instance")
        fail(Errc::ParseError, "expected 'instance <p>' header");
    AbstractInstance inst;
    if (!(in >> inst.blocks) || inst.blocks < 1)
        fail(Errc::ParseError, "bad block count");
    inst.chi.assign(static_cast<size_t>(7 * inst.blocks), Int(0));
    bool have_fixed = false;

    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        ls >> word;
        if (word == "eq") {
            AbstractEquation eq;
            std::string role, equals;
            auto read = [&](CoordRef& ref, const char* want) {
                if (!(ls >> role >> ref.block >> ref.idx) || role != want)
                    fail(Errc::ParseError, "bad equation line: " + line);
            };
            read(eq.q, "q");
            read(eq.t, "t");
            if (!(ls >> equals) || equals != "=")
                fail(Errc::ParseError, "bad equation line: " + line);
            read(eq.q2, "q");
            read(eq.t2, "t");
            check_roles(eq, inst.blocks);
            inst.equations.push_back(eq);
        } else if (word == "chi") {
            std::string pair;
            while (ls >> pair) {
                auto colon = pair.find(':');
                if (colon == std::string::npos)
                    fail(Errc::ParseError, "bad chi entry: " + pair);
                int idx = std::stoi(pair.substr(0, colon));
                if (idx < 0 || idx >= 7 * inst.blocks)
                    fail(Errc::ParseError, "chi index out of range: " + pair);
                inst.chi[static_cast<size_t>(idx)] = Int(pair.substr(colon + 1));
            }
        } else if (word == "fixed") {
            if (!(ls >> inst.fixed_zero.block >> inst.fixed_zero.idx))
                fail(Errc::ParseError, "bad fixed line: " + line);
            if (!inst.fixed_zero.triangle_role())
                fail(Errc::ParseError, "fixed coordinate must have triangle role");
            have_fixed = true;
        } else {
            fail(Errc::ParseError, "unknown directive: " + word);
        }
    }
    if (!have_fixed)
        fail(Errc::ParseError, "missing 'fixed <block> <idx>' line");
    return inst;
}

std::string to_text(const AbstractInstance& inst) {
    std::ostringstream out;
    out << "instance " << inst.blocks << "\n";
    for (const AbstractEquation& eq : inst.equations)
        out << "eq q " << eq.q.block << " " << eq.q.idx << " t " << eq.t.block << " " << eq.t.idx
            << " = q " << eq.q2.block << " " << eq.q2.idx << " t " << eq.t2.block << " "
            << eq.t2.idx << "\n";
    out << "chi";
    for (size_t i = 0; i < inst.chi.size(); ++i)
        if (inst.chi[i] != 0)
            out << " " << i << ":" << inst.chi[i].get_str();
    out << "\n";
    out << "fixed " << inst.fixed_zero.block << " " << inst.fixed_zero.idx << "\n";
    return out.str();
}

} // namespace nst
