#pragma once

// Basis reachability graph of a verifier net: basis markings decorated with
// the alpha flag (nonempty unobservable continuation exists) and the
// diagonal-equality flag.

#include "detpn/basis.hpp"
#include "detpn/verifier.hpp"

namespace detpn {

struct BrgState {
    Marking basis_marking;  // shape [M_b'; M_b]
    int alpha = 0;          // 1 iff a nonzero realizable unobservable vector exists
    bool diag_equal = true; // M_b' == M_b
    friend bool operator==(const BrgState&, const BrgState&) = default;
};

struct BrgEdge {
    int from = 0;
    std::string symbol;
    int to = 0;
    friend auto operator<=>(const BrgEdge&, const BrgEdge&) = default;
};

/// Labeled directed multigraph over BRG states. The transition structure is
/// a relation: distinct minimal explanations of same-labeled VN transitions
/// may reach distinct basis markings.
struct Brg {
    std::vector<BrgState> states;  // sorted by basis marking
    std::vector<std::string> alphabet;
    std::vector<BrgEdge> edges;    // deduplicated, sorted
    int initial = 0;

    int index_of(const Marking& m) const {
        auto cmp = [](const BrgState& s, const Marking& key) { return s.basis_marking < key; };
        auto it = std::lower_bound(states.begin(), states.end(), m, cmp);
        if (it == states.end() || it->basis_marking != m) return -1;
        return static_cast<int>(it - states.begin());
    }
};

/// Alpha flag via the enabledness shortcut: some unobservable VN transition
/// is enabled at m_b. Equivalent to the state-equation reading under an
/// acyclic unobservable subnet.
inline int alpha_flag(const VerifierNet& vn, const Marking& mb) {
    if (!is_acyclic(tu_induced_subnet(vn.lpn)))
        throw UnsupportedStructureError("alpha_flag requires an acyclic T_u-subnet");
    for (TransitionId t : vn.lpn.unobservable())
        if (enabled(vn.lpn.net, mb, t)) return 1;
    return 0;
}

/// Alpha flag via the state-equation semantics: search for a nonzero
/// nonnegative integer vector y_u, realizable as a firable unobservable
/// sequence, with m_b + C_u * y_u >= 0. Independent route kept for the
/// equivalence property; agrees with alpha_flag under acyclicity.
inline int alpha_flag_state_equation(const VerifierNet& vn, const Marking& mb,
                                     long node_budget = kDefaultNodeBudget) {
    if (!is_acyclic(tu_induced_subnet(vn.lpn)))
        throw UnsupportedStructureError("alpha_flag requires an acyclic T_u-subnet");
    const std::vector<TransitionId> tu = vn.lpn.unobservable();
    const InducedSubnet sub = tu_induced_subnet(vn.lpn);
    // exhaust unobservable runs, collecting realizable firing vectors
    std::set<std::pair<Marking, EVector>> seen;
    std::deque<std::pair<Marking, EVector>> queue;
    queue.push_back({mb, EVector(tu.size(), 0)});
    int found = 0;
    while (!queue.empty()) {
        auto [m, vec] = std::move(queue.front());
        queue.pop_front();
        if (!seen.insert({m, vec}).second) continue;
        if (static_cast<long>(seen.size()) > node_budget)
            throw OverBudgetError("alpha_flag exceeded budget");
        bool nonzero = std::any_of(vec.begin(), vec.end(), [](int v) { return v != 0; });
        if (nonzero) {
            // realizable vector; verify it against the state equation
            for (PlaceId p = 0; p < vn.lpn.net.num_places(); ++p) {
                long val = mb[p];
                for (size_t k = 0; k < tu.size(); ++k)
                    val += static_cast<long>(sub.incidence(p, static_cast<int>(k))) * vec[k];
                if (val < 0 || val != m[p])
                    throw NetError("alpha_flag: realizable vector violates the state equation");
            }
            found = 1;
            continue;  // existence settled along this branch
        }
        for (size_t i = 0; i < tu.size(); ++i) {
            if (!enabled(vn.lpn.net, m, tu[i])) continue;
            EVector v2 = vec;
            ++v2[i];
            queue.push_back({fire(vn.lpn.net, m, tu[i]), std::move(v2)});
        }
    }
    return found;
}

/// Build the BRG of a verifier net: states are the basis markings of the VN
/// decorated with alpha and diagonal flags, edges follow the minimal
/// explanation closure. Deterministic BFS order with label-sorted expansion.
inline Brg build_brg(const VerifierNet& vn, long node_budget = kDefaultNodeBudget) {
    BasisMarkingSet basis = basis_marking_set(vn.lpn, node_budget);
    Brg brg;
    brg.alphabet = vn.lpn.alphabet;
    for (const Marking& m : basis.markings)
        brg.states.push_back({m, alpha_flag(vn, m), vn.diagonal(m)});
    std::set<BrgEdge> dedup;
    for (const BasisEdge& e : basis.edges) {
        BrgEdge edge{brg.index_of(e.from), vn.lpn.labels[e.transition], brg.index_of(e.to)};
        dedup.insert(edge);
    }
    brg.edges.assign(dedup.begin(), dedup.end());
    brg.initial = brg.index_of(vn.lpn.m0);
    return brg;
}

/// States reachable from `start` along edge paths spelling exactly `w`.
/// The empty set is a valid result.
inline std::set<int> run_relation(const Brg& brg, int start, const std::vector<std::string>& w) {
    std::set<int> cur{start};
    for (const std::string& sym : w) {
        std::set<int> next;
        for (const BrgEdge& e : brg.edges)
            if (cur.count(e.from) && e.symbol == sym) next.insert(e.to);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace detpn
