#include "nst/detect.hpp"

#include "nst/error.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <queue>
#include <string>
#include <thread>
#include <unordered_set>

namespace nst {

NormalVector vector_from_choice(const DiscChoice& choice) {
    NormalVector x = NormalVector::zeros(static_cast<int>(choice.size()));
    for (size_t tet = 0; tet < choice.size(); ++tet)
        x.coords[7 * tet + static_cast<size_t>(choice[tet])] = 1;
    return x;
}

std::optional<DiscChoice> choice_from_vector(const NormalVector& x) {
    DiscChoice choice(static_cast<size_t>(x.tets()), -1);
    for (int tet = 0; tet < x.tets(); ++tet)
        for (int d = 0; d < kDiscTypes; ++d) {
            const Int& c = x.coords[static_cast<size_t>(7 * tet + d)];
            if (c == 0)
                continue;
            if (c != 1 || choice[static_cast<size_t>(tet)] >= 0)
                return std::nullopt;
            choice[static_cast<size_t>(tet)] = static_cast<int8_t>(d);
        }
    for (int8_t d : choice)
        if (d < 0)
            return std::nullopt;
    return choice;
}

namespace {

// Per-gluing compatibility: ok[a][b] says discs a (first side) and b (second
// side) induce identical arc sets in the identified face.
struct FaceRule {
    int tet_a, tet_b;
    uint8_t mask_b_given_a[kDiscTypes]; // allowed discs of tet_b when tet_a holds a
};

struct SearchPlan {
    int n = 0;
    std::vector<int> order;                  // tetrahedra breadth-first from 0
    std::vector<std::vector<int>> checks;    // per order position: rules to earlier tets
    std::vector<FaceRule> rules;             // one per gluing
    std::vector<uint8_t> self_mask;          // per tet: discs surviving self-gluings
    std::vector<std::pair<int, int>> adjacency; // (tet, tet) per gluing, for connectivity
};

bool discs_compatible(const Gluing& g, int da, int db) {
    for (int v = 0; v < 4; ++v) {
        if (v == g.face)
            continue;
        int cut_a = -1, cut_b = -1;
        if (disc_arc_cut_vertex(da, g.face) == v)
            cut_a = v;
        if (disc_arc_cut_vertex(db, g.other_face) == g.perm(v))
            cut_b = v;
        if ((cut_a >= 0) != (cut_b >= 0))
            return false;
    }
    return true;
}

SearchPlan make_plan(const Triangulation& t) {
    SearchPlan plan;
    plan.n = t.size();
    plan.self_mask.assign(static_cast<size_t>(plan.n), 0x7f);

    for (const Gluing& g : t.gluings()) {
        if (g.tet == g.other_tet) {
            uint8_t mask = 0;
            for (int d = 0; d < kDiscTypes; ++d)
                if (discs_compatible(g, d, d))
                    mask |= static_cast<uint8_t>(1 << d);
            plan.self_mask[static_cast<size_t>(g.tet)] &= mask;
            plan.adjacency.emplace_back(g.tet, g.other_tet);
            continue;
        }
        FaceRule rule;
        rule.tet_a = g.tet;
        rule.tet_b = g.other_tet;
        for (int da = 0; da < kDiscTypes; ++da) {
            uint8_t mask = 0;
            for (int db = 0; db < kDiscTypes; ++db)
                if (discs_compatible(g, da, db))
                    mask |= static_cast<uint8_t>(1 << db);
            rule.mask_b_given_a[da] = mask;
        }
        plan.rules.push_back(rule);
        plan.adjacency.emplace_back(g.tet, g.other_tet);
    }

    // Maximum-cardinality order over the face-pairing graph: always take the
    // unvisited tetrahedron with the most visited neighbours (lowest index on
    // ties).  Constraints then close as early as possible, which is what the
    // arc-consistency and connectivity pruning feed on.
    std::vector<std::vector<int>> nbr(static_cast<size_t>(plan.n));
    for (const auto& [a, b] : plan.adjacency)
        if (a != b) {
            nbr[static_cast<size_t>(a)].push_back(b);
            nbr[static_cast<size_t>(b)].push_back(a);
        }
    std::vector<int> position(static_cast<size_t>(plan.n), -1);
    std::vector<int> weight(static_cast<size_t>(plan.n), 0);
    for (int step = 0; step < plan.n; ++step) {
        int best = -1;
        for (int tet = 0; tet < plan.n; ++tet) {
            if (position[static_cast<size_t>(tet)] >= 0)
                continue;
            if (best < 0 || weight[static_cast<size_t>(tet)] > weight[static_cast<size_t>(best)])
                best = tet;
        }
        position[static_cast<size_t>(best)] = step;
        plan.order.push_back(best);
        for (int nb : nbr[static_cast<size_t>(best)])
            weight[static_cast<size_t>(nb)]++;
    }

    plan.checks.resize(static_cast<size_t>(plan.n));
    for (size_t ri = 0; ri < plan.rules.size(); ++ri) {
        const FaceRule& rule = plan.rules[ri];
        int pa = position[static_cast<size_t>(rule.tet_a)];
        int pb = position[static_cast<size_t>(rule.tet_b)];
        plan.checks[static_cast<size_t>(std::max(pa, pb))].push_back(static_cast<int>(ri));
    }
    return plan;
}

// Depth-first over the plan's order; calls on_solution at complete choices,
// stopping when it returns false.  Returns false when the budget ran out.
bool run_search(const SearchPlan& plan, const std::vector<uint8_t>& allowed, long long budget,
                const std::function<bool(const DiscChoice&)>& on_solution,
                long long* nodes_out = nullptr) {
    const int n = plan.n;
    DiscChoice choice(static_cast<size_t>(n), -1);
    std::vector<int> disc_at(static_cast<size_t>(n), -1); // next disc to try per depth
    long long nodes = 0;
    int depth = 0;
    bool keep_going = true;

    auto fits = [&](int depth_pos, int disc) {
        int tet = plan.order[static_cast<size_t>(depth_pos)];
        if ((plan.self_mask[static_cast<size_t>(tet)] & (1 << disc)) == 0)
            return false;
        for (int ri : plan.checks[static_cast<size_t>(depth_pos)]) {
            const FaceRule& rule = plan.rules[static_cast<size_t>(ri)];
            int da, db;
            if (rule.tet_a == tet) {
                da = disc;
                db = choice[static_cast<size_t>(rule.tet_b)];
                if (db < 0)
                    continue;
                if ((rule.mask_b_given_a[da] & (1 << db)) == 0)
                    return false;
            } else {
                db = disc;
                da = choice[static_cast<size_t>(rule.tet_a)];
                if (da < 0)
                    continue;
                if ((rule.mask_b_given_a[da] & (1 << db)) == 0)
                    return false;
            }
        }
        return true;
    };

    while (depth >= 0 && keep_going) {
        if (depth == n) {
            keep_going = on_solution(choice);
            --depth;
            continue;
        }
        int tet = plan.order[static_cast<size_t>(depth)];
        int disc = disc_at[static_cast<size_t>(depth)] + 1;
        bool advanced = false;
        for (; disc < kDiscTypes; ++disc) {
            if ((allowed[static_cast<size_t>(tet)] & (1 << disc)) == 0)
                continue;
            if (++nodes > budget) {
                if (nodes_out)
                    *nodes_out = nodes;
                return false;
            }
            if (fits(depth, disc)) {
                disc_at[static_cast<size_t>(depth)] = disc;
                choice[static_cast<size_t>(tet)] = static_cast<int8_t>(disc);
                ++depth;
                if (depth < n)
                    disc_at[static_cast<size_t>(depth)] = -1;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            disc_at[static_cast<size_t>(depth)] = -1;
            choice[static_cast<size_t>(tet)] = -1;
            --depth;
        }
    }
    if (nodes_out)
        *nodes_out = nodes;
    return true;
}

// Backtracking specialised to connected surfaces: tracks components of the
// partial surface with a rollback union-find and an "open arc slot" count
// per component (arcs crossing internal faces into unassigned tetrahedra).
// A component with no open slots before the assignment completes can never
// join the rest, so the branch is abandoned.
class ConnectedSearch {
public:
    ConnectedSearch(const Triangulation& t, const SearchPlan& plan,
                    const std::vector<uint8_t>& allowed, long long budget)
        : plan_(plan), allowed_(allowed), budget_(budget), initial_budget_(budget),
          n_(t.size()), choice_(static_cast<size_t>(t.size()), -1),
          parent_(static_cast<size_t>(t.size()), -1),
          size_(static_cast<size_t>(t.size()), 0),
          open_(static_cast<size_t>(t.size()), 0) {
        // internal faces only, self-gluings excluded from the open counting
        faces_.resize(static_cast<size_t>(n_));
        for (const Gluing& g : t.gluings()) {
            if (g.tet == g.other_tet)
                continue;
            faces_[static_cast<size_t>(g.tet)].push_back({g.face, g.other_tet});
            faces_[static_cast<size_t>(g.other_tet)].push_back({g.other_face, g.tet});
        }

        // With a static order, the subtree below a depth is determined by the
        // discs and component labels of the assigned tets that still face
        // unassigned ones.  Failed frontier states are cached and skipped.
        std::vector<int> position(static_cast<size_t>(n_), 0);
        for (int d = 0; d < n_; ++d)
            position[static_cast<size_t>(plan.order[static_cast<size_t>(d)])] = d;
        frontier_.resize(static_cast<size_t>(n_) + 1);
        for (int tet = 0; tet < n_; ++tet) {
            int last = position[static_cast<size_t>(tet)];
            for (const FaceTo& ft : faces_[static_cast<size_t>(tet)])
                last = std::max(last, position[static_cast<size_t>(ft.other_tet)]);
            // tet is on the frontier of depths (pos, last]
            for (int d = position[static_cast<size_t>(tet)] + 1; d <= last; ++d)
                frontier_[static_cast<size_t>(d)].push_back(tet);
        }
    }

    // Returns the first connected solution in preference order, if any;
    // sets exhausted() false when the node budget ran out first.
    std::optional<DiscChoice> run() {
        found_.reset();
        exhausted_ = descend(0);
        return found_;
    }

    bool exhausted() const { return exhausted_; }
    long long nodes_spent() const { return initial_budget_ - budget_; }

private:
    struct FaceTo {
        int face;
        int other_tet;
    };

    int find(int x) const {
        while (parent_[static_cast<size_t>(x)] != x)
            x = parent_[static_cast<size_t>(x)];
        return x;
    }

    bool fits(int depth_pos, int tet, int disc) const {
        if ((plan_.self_mask[static_cast<size_t>(tet)] & (1 << disc)) == 0)
            return false;
        for (int ri : plan_.checks[static_cast<size_t>(depth_pos)]) {
            const FaceRule& rule = plan_.rules[static_cast<size_t>(ri)];
            int da = rule.tet_a == tet ? disc : choice_[static_cast<size_t>(rule.tet_a)];
            int db = rule.tet_b == tet ? disc : choice_[static_cast<size_t>(rule.tet_b)];
            if (da < 0 || db < 0)
                continue;
            if ((rule.mask_b_given_a[da] & (1 << db)) == 0)
                return false;
        }
        return true;
    }

    std::string frontier_key(int depth) const {
        const std::vector<int>& front = frontier_[static_cast<size_t>(depth)];
        std::string key;
        key.reserve(2 * front.size() + 2);
        key.push_back(static_cast<char>(depth & 0xff));
        key.push_back(static_cast<char>(depth >> 8));
        int next_label = 0;
        std::vector<std::pair<int, int>> labels; // (root, label)
        for (int tet : front) {
            int root = find(tet);
            int label = -1;
            for (const auto& [r, l] : labels)
                if (r == root)
                    label = l;
            if (label < 0) {
                label = next_label++;
                labels.emplace_back(root, label);
            }
            key.push_back(static_cast<char>(choice_[static_cast<size_t>(tet)]));
            key.push_back(static_cast<char>(label));
        }
        return key;
    }

    // true when fully explored, false when the budget ran out
    bool descend(int depth) {
        if (found_)
            return true;
        if (depth == n_) {
            if (size_[static_cast<size_t>(find(plan_.order[0]))] == n_)
                found_ = choice_;
            return true;
        }
        std::string key = frontier_key(depth);
        if (failed_.count(key))
            return true;
        int tet = plan_.order[static_cast<size_t>(depth)];
        bool complete = true;
        for (int disc = 0; disc < kDiscTypes && complete; ++disc) {
            if ((allowed_[static_cast<size_t>(tet)] & (1 << disc)) == 0)
                continue;
            if (--budget_ < 0)
                return false;
            if (!fits(depth, tet, disc))
                continue;
            if (!attach(tet, disc, depth + 1 == n_)) {
                detach();
                continue;
            }
            choice_[static_cast<size_t>(tet)] = static_cast<int8_t>(disc);
            complete = descend(depth + 1);
            choice_[static_cast<size_t>(tet)] = -1;
            detach();
            if (found_)
                return true;
        }
        if (complete)
            failed_.insert(std::move(key));
        return complete;
    }

    // Install the disc into the component structure; false when its
    // component seals off with tetrahedra still unassigned.  Every node
    // mutation is snapshot so detach restores the exact previous state.
    bool attach(int tet, int disc, bool last) {
        log_.emplace_back();
        std::vector<Snapshot>& ops = log_.back();
        auto touch = [&](int idx) {
            ops.push_back({idx, parent_[static_cast<size_t>(idx)], size_[static_cast<size_t>(idx)],
                           open_[static_cast<size_t>(idx)]});
        };
        touch(tet);
        parent_[static_cast<size_t>(tet)] = tet;
        size_[static_cast<size_t>(tet)] = 1;
        open_[static_cast<size_t>(tet)] = 0;
        for (const FaceTo& ft : faces_[static_cast<size_t>(tet)]) {
            if (disc_arc_cut_vertex(disc, ft.face) < 0)
                continue;
            if (choice_[static_cast<size_t>(ft.other_tet)] < 0) {
                int r = find(tet);
                touch(r);
                open_[static_cast<size_t>(r)] += 1;
                continue;
            }
            int ra = find(tet), rb = find(ft.other_tet);
            if (ra == rb) {
                touch(ra);
                open_[static_cast<size_t>(ra)] -= 1; // a cycle closed inside
                continue;
            }
            if (size_[static_cast<size_t>(ra)] < size_[static_cast<size_t>(rb)])
                std::swap(ra, rb);
            touch(ra);
            touch(rb);
            parent_[static_cast<size_t>(rb)] = ra;
            size_[static_cast<size_t>(ra)] += size_[static_cast<size_t>(rb)];
            // the partner's slot toward this tetrahedron is consumed
            open_[static_cast<size_t>(ra)] += open_[static_cast<size_t>(rb)] - 1;
        }
        return last || open_[static_cast<size_t>(find(tet))] > 0;
    }

    void detach() {
        const std::vector<Snapshot>& ops = log_.back();
        for (auto rit = ops.rbegin(); rit != ops.rend(); ++rit) {
            parent_[static_cast<size_t>(rit->idx)] = rit->parent;
            size_[static_cast<size_t>(rit->idx)] = rit->size;
            open_[static_cast<size_t>(rit->idx)] = rit->open;
        }
        log_.pop_back();
    }

    struct Snapshot {
        int idx, parent, size, open;
    };

    const SearchPlan& plan_;
    const std::vector<uint8_t>& allowed_;
    long long budget_;
    long long initial_budget_;
    int n_;
    DiscChoice choice_;
    std::vector<int> parent_, size_, open_;
    std::vector<std::vector<FaceTo>> faces_;
    std::vector<std::vector<int>> frontier_;
    std::unordered_set<std::string> failed_;
    std::vector<std::vector<Snapshot>> log_;
    std::optional<DiscChoice> found_;
    bool exhausted_ = true;
};

bool choice_connected(const Triangulation& t, const DiscChoice& choice) {
    std::vector<int> parent(static_cast<size_t>(t.size()));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const Gluing& g : t.gluings())
        if (disc_arc_cut_vertex(choice[static_cast<size_t>(g.tet)], g.face) >= 0)
            parent[static_cast<size_t>(find(g.other_tet))] = find(g.tet);
    int root = find(0);
    for (int tet = 1; tet < t.size(); ++tet)
        if (find(tet) != root)
            return false;
    return true;
}

} // namespace

bool scan_spanning_central(const Triangulation& t, const std::vector<uint8_t>& allowed,
                           const DetectOptions& opts,
                           const std::function<bool(const DiscChoice&)>& on_solution) {
    return run_search(make_plan(t), allowed, opts.budget, on_solution, opts.nodes_out);
}

std::optional<NormalVector> find_splitting_surface(const Triangulation& t) {
    if (!is_connected(t))
        fail(Errc::Disconnected, "splitting surface search requires a connected triangulation");
    const int n = t.size();

    for (int q0 = 1; q0 <= 3; ++q0) {
        std::vector<int> quad(static_cast<size_t>(n), 0); // quadrilateral type or 0
        quad[0] = q0;
        std::queue<int> queue;
        queue.push(0);
        bool ok = true;
        while (!queue.empty() && ok) {
            int tet = queue.front();
            queue.pop();
            for (int f = 0; f < 4 && ok; ++f) {
                auto d = t.dest(tet, f);
                if (!d)
                    continue;
                // A quadrilateral's arc in this face forces the neighbour's
                // quadrilateral: quad types never share arc types.
                int cut = disc_arc_cut_vertex(quad[static_cast<size_t>(tet)] - 1, f);
                int forced = quad_cutting(d->perm(cut), d->face);
                int& other = quad[static_cast<size_t>(d->tet)];
                if (other == 0) {
                    other = forced;
                    queue.push(d->tet);
                } else if (other != forced) {
                    ok = false;
                }
            }
        }
        if (!ok)
            continue;
        DiscChoice choice(static_cast<size_t>(n));
        for (int tet = 0; tet < n; ++tet)
            choice[static_cast<size_t>(tet)] = static_cast<int8_t>(quad[static_cast<size_t>(tet)] - 1);
        return vector_from_choice(choice);
    }
    return std::nullopt;
}

std::vector<NormalVector> enumerate_spanning_central(const Triangulation& t,
                                                     const DetectOptions& opts) {
    std::vector<NormalVector> out;
    std::vector<uint8_t> allowed(static_cast<size_t>(t.size()), 0x7f);
    bool completed = scan_spanning_central(t, allowed, opts, [&](const DiscChoice& choice) {
        out.push_back(vector_from_choice(choice));
        return true;
    });
    if (!completed)
        fail(Errc::BudgetExceeded, "spanning central enumeration exceeded the node budget");
    std::sort(out.begin(), out.end(),
              [](const NormalVector& a, const NormalVector& b) { return a.coords < b.coords; });
    return out;
}

std::optional<NormalVector> find_connected_spanning_central(const Triangulation& t,
                                                            const DetectOptions& opts) {
    if (!is_connected(t))
        fail(Errc::Disconnected, "surface detection requires a connected triangulation");

    SearchPlan plan = make_plan(t);
    int root = plan.order[0];

    auto search_with_roots = [&](uint8_t root_mask, long long budget,
                                 std::optional<DiscChoice>& found) -> bool {
        std::vector<uint8_t> allowed(static_cast<size_t>(t.size()), 0x7f);
        allowed[static_cast<size_t>(root)] = root_mask;
        ConnectedSearch search(t, plan, allowed, budget);
        found = search.run();
        if (opts.nodes_out)
            *opts.nodes_out += search.nodes_spent();
        return search.exhausted();
    };

    int threads = std::max(1, opts.threads);
    std::optional<DiscChoice> found;
    bool completed = true;
    if (threads == 1) {
        completed = search_with_roots(0x7f, opts.budget, found);
    } else {
        // Split the root disc choices across workers; results merge by the
        // fixed preference order, so the outcome matches the serial search.
        std::array<std::optional<DiscChoice>, kDiscTypes> results;
        std::array<bool, kDiscTypes> complete{};
        std::atomic<int> next{0};
        long long slice = std::max<long long>(1, opts.budget / kDiscTypes);
        auto worker = [&]() {
            for (int d = next.fetch_add(1); d < kDiscTypes; d = next.fetch_add(1))
                complete[static_cast<size_t>(d)] = search_with_roots(
                    static_cast<uint8_t>(1 << d), slice, results[static_cast<size_t>(d)]);
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < std::min(threads, kDiscTypes); ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
        for (int d = 0; d < kDiscTypes && !found; ++d) {
            if (results[static_cast<size_t>(d)])
                found = results[static_cast<size_t>(d)];
            else if (!complete[static_cast<size_t>(d)])
                completed = false;
        }
    }
    if (found)
        return vector_from_choice(*found);
    if (!completed)
        fail(Errc::BudgetExceeded, "spanning central search exceeded the node budget");
    return std::nullopt;
}

bool verify_certificate(const Triangulation& t, const NormalVector& x) {
    if (static_cast<int>(x.coords.size()) != 7 * t.size())
        return false;
    auto choice = choice_from_vector(x);
    if (!choice)
        return false;
    if (!is_admissible(t, x))
        return false;
    return choice_connected(t, *choice);
}

} // namespace nst
