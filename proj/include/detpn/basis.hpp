#pragma once

// Minimal explanations, minimal e-vectors, the basis-marking set and the
// consistency machinery over labeled Petri nets with an acyclic
// unobservable subnet.

#include <deque>
#include <map>
#include <set>

#include "detpn/petri.hpp"

namespace detpn {

/// Parikh vector over the unobservable transitions (in T_u order).
using EVector = std::vector<int>;

/// One minimal explanation: a firable unobservable witness sequence and
/// its e-vector. The witness is the lexicographically smallest sequence
/// (by transition id) realizing the vector.
struct Explanation {
    std::vector<TransitionId> sequence;  // ids into the full net
    EVector evector;                     // indexed by T_u position
    friend bool operator==(const Explanation&, const Explanation&) = default;
};

namespace detail {

inline bool dominates(const EVector& a, const EVector& b) {
    // a >= b componentwise and a != b
    bool strict = false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strict = true;
    }
    return strict;
}

}  // namespace detail

/// All Parikh-minimal unobservable sequences whose firing at m enables t.
/// May be empty (t not explainable) or carry several incomparable vectors
/// (backward conflict). Requires t observable and an acyclic T_u-subnet.
inline std::vector<Explanation> minimal_explanations(const LabeledPetriNet& lpn,
                                                     const Marking& m, TransitionId t,
                                                     long node_budget = kDefaultNodeBudget) {
    lpn.net.check_transition(t);
    if (lpn.labels[t].empty())
        throw StructuralError("minimal_explanations: transition " +
                              lpn.net.transition_names[t] + " is unobservable");
    if (!is_acyclic(tu_induced_subnet(lpn)))
        throw UnsupportedStructureError(
            "minimal_explanations requires an acyclic T_u-induced subnet");

    const std::vector<TransitionId> tu = lpn.unobservable();
    const size_t nu = tu.size();

    auto target_enabled = [&](const Marking& cur) {
        for (PlaceId p = 0; p < lpn.net.num_places(); ++p)
            if (cur[p] < lpn.net.pre[p][t]) return false;
        return true;
    };

    // BFS over unobservable firings carrying (marking, e-vector, witness).
    // A branch stops as soon as t is enabled: any extension strictly
    // dominates. Candidates are filtered to the Parikh-minimal ones at the
    // end; visited (marking, vector) pairs are not re-expanded.
    struct Node {
        Marking m;
        EVector vec;
        std::vector<TransitionId> seq;
    };
    std::deque<Node> queue;
    std::set<std::pair<Marking, EVector>> visited;
    std::vector<Explanation> candidates;
    long explored = 0;
    queue.push_back({m, EVector(nu, 0), {}});
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        if (!visited.insert({node.m, node.vec}).second) continue;
        if (++explored > node_budget)
            throw OverBudgetError("minimal_explanations exceeded budget of " +
                                  std::to_string(node_budget));
        if (target_enabled(node.m)) {
            candidates.push_back({node.seq, node.vec});
            continue;
        }
        bool dominated = false;
        for (const Explanation& c : candidates) {
            if (detail::dominates(node.vec, c.evector)) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        for (size_t i = 0; i < nu; ++i) {
            if (!enabled(lpn.net, node.m, tu[i])) continue;
            Node next;
            next.m = fire(lpn.net, node.m, tu[i]);
            next.vec = node.vec;
            ++next.vec[i];
            next.seq = node.seq;
            next.seq.push_back(tu[i]);
            queue.push_back(std::move(next));
        }
    }

    // keep minimal vectors; one witness per vector (lexicographically
    // smallest transition-id sequence; BFS yields shortest first, ties by
    // explicit comparison)
    std::vector<Explanation> result;
    for (const Explanation& c : candidates) {
        bool minimal = true;
        for (const Explanation& other : candidates)
            if (detail::dominates(c.evector, other.evector)) { minimal = false; break; }
        if (!minimal) continue;
        bool merged = false;
        for (Explanation& r : result) {
            if (r.evector == c.evector) {
                if (c.sequence < r.sequence) r.sequence = c.sequence;
                merged = true;
                break;
            }
        }
        if (!merged) result.push_back(c);
    }
    std::sort(result.begin(), result.end(),
              [](const Explanation& a, const Explanation& b) { return a.evector < b.evector; });
    return result;
}

/// Edge of the basis closure: from basis marking, via observable t and
/// minimal e-vector y_u, to the successor basis marking.
struct BasisEdge {
    Marking from;
    TransitionId transition;
    EVector evector;
    Marking to;
};

struct BasisMarkingSet {
    std::vector<Marking> markings;  // sorted
    std::vector<BasisEdge> edges;   // BFS discovery order, label-sorted expansion

    bool contains(const Marking& m) const {
        return std::binary_search(markings.begin(), markings.end(), m);
    }
};

/// Least fixpoint closure of the basis-marking definition: m0 plus every
/// M + C(.,t) + C_u*y_u over observable t and minimal e-vectors y_u.
inline BasisMarkingSet basis_marking_set(const LabeledPetriNet& lpn,
                                         long node_budget = kDefaultNodeBudget) {
    if (!is_acyclic(tu_induced_subnet(lpn)))
        throw UnsupportedStructureError("basis_marking_set requires an acyclic T_u-subnet");
    const std::vector<TransitionId> to = lpn.observable();
    BasisMarkingSet out;
    std::set<Marking> seen{lpn.m0};
    std::deque<Marking> queue{lpn.m0};
    while (!queue.empty()) {
        Marking m = std::move(queue.front());
        queue.pop_front();
        for (TransitionId t : to) {
            for (const Explanation& exp : minimal_explanations(lpn, m, t, node_budget)) {
                Marking reached = fire_sequence(lpn.net, m, exp.sequence);
                Marking next = fire(lpn.net, reached, t);
                out.edges.push_back({m, t, exp.evector, next});
                if (seen.insert(next).second) {
                    if (static_cast<long>(seen.size()) > node_budget)
                        throw OverBudgetError("basis_marking_set exceeded budget of " +
                                              std::to_string(node_budget));
                    queue.push_back(next);
                }
            }
        }
    }
    out.markings.assign(seen.begin(), seen.end());
    return out;
}

/// Forward closure over unobservable firings: all markings m_b + C_u*y_u
/// with y_u realizable by firing (equals the nonnegative-solution set of
/// the state equation under acyclicity).
inline std::vector<Marking> unobservable_reach(const LabeledPetriNet& lpn, const Marking& mb,
                                               long node_budget = kDefaultNodeBudget) {
    if (!is_acyclic(tu_induced_subnet(lpn)))
        throw UnsupportedStructureError("unobservable_reach requires an acyclic T_u-subnet");
    const std::vector<TransitionId> tu = lpn.unobservable();
    std::set<Marking> seen{mb};
    std::deque<Marking> queue{mb};
    while (!queue.empty()) {
        Marking m = std::move(queue.front());
        queue.pop_front();
        for (TransitionId t : tu) {
            if (!enabled(lpn.net, m, t)) continue;
            Marking m2 = fire(lpn.net, m, t);
            if (seen.insert(m2).second) {
                if (static_cast<long>(seen.size()) > node_budget)
                    throw OverBudgetError("unobservable_reach exceeded budget");
                queue.push_back(m2);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

namespace detail {

inline void check_word(const LabeledPetriNet& lpn, const std::vector<std::string>& w) {
    for (const std::string& s : w)
        if (!lpn.has_symbol(s))
            throw StructuralError("word symbol '" + s + "' is not in the alphabet");
}

}  // namespace detail

/// C(w) by direct semantics: markings reachable via some sequence whose
/// observation is exactly w (epsilon-closure stepping over full markings).
inline std::vector<Marking> consistent_markings_rg(const LabeledPetriNet& lpn,
                                                   const std::vector<std::string>& w,
                                                   long node_budget = kDefaultNodeBudget) {
    detail::check_word(lpn, w);
    auto closure = [&](std::set<Marking> s) {
        std::deque<Marking> queue(s.begin(), s.end());
        while (!queue.empty()) {
            Marking m = std::move(queue.front());
            queue.pop_front();
            for (TransitionId t : lpn.unobservable()) {
                if (!enabled(lpn.net, m, t)) continue;
                Marking m2 = fire(lpn.net, m, t);
                if (s.insert(m2).second) {
                    if (static_cast<long>(s.size()) > node_budget)
                        throw OverBudgetError("consistent_markings exceeded budget");
                    queue.push_back(m2);
                }
            }
        }
        return s;
    };
    std::set<Marking> cur = closure({lpn.m0});
    for (const std::string& sym : w) {
        std::set<Marking> next;
        for (const Marking& m : cur)
            for (TransitionId t : lpn.observable())
                if (lpn.labels[t] == sym && enabled(lpn.net, m, t))
                    next.insert(fire(lpn.net, m, t));
        cur = closure(std::move(next));
    }
    return {cur.begin(), cur.end()};
}

/// C(w) via basis markings: run the basis edge relation along w, then take
/// the union of unobservable reaches (the Prop. 1(2) form).
inline std::vector<Marking> consistent_markings_basis(const LabeledPetriNet& lpn,
                                                      const std::vector<std::string>& w,
                                                      long node_budget = kDefaultNodeBudget) {
    detail::check_word(lpn, w);
    BasisMarkingSet basis = basis_marking_set(lpn, node_budget);
    std::set<Marking> cur{lpn.m0};
    for (const std::string& sym : w) {
        std::set<Marking> next;
        for (const BasisEdge& e : basis.edges)
            if (lpn.labels[e.transition] == sym && cur.count(e.from)) next.insert(e.to);
        cur = std::move(next);
    }
    std::set<Marking> all;
    for (const Marking& mb : cur)
        for (const Marking& m : unobservable_reach(lpn, mb, node_budget)) all.insert(m);
    return {all.begin(), all.end()};
}

/// C(w): both routes are computed and must agree.
inline std::vector<Marking> consistent_markings(const LabeledPetriNet& lpn,
                                                const std::vector<std::string>& w,
                                                long node_budget = kDefaultNodeBudget) {
    std::vector<Marking> a = consistent_markings_rg(lpn, w, node_budget);
    std::vector<Marking> b = consistent_markings_basis(lpn, w, node_budget);
    if (a != b)
        throw NetError("consistent_markings: RG filter and basis-union routes disagree");
    return a;
}

}  // namespace detpn
