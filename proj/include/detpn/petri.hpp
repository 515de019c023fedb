#pragma once

// Core Petri-net structures and firing semantics: markings, Pre/Post
// matrices, labeled nets, induced subnets, acyclicity and bounded
// reachability-graph construction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace detpn {

// Error hierarchy. The CLI maps these onto exit codes, so keep the
// categories distinct: structural misuse vs. violated preconditions vs.
// exhausted budgets vs. inapplicable standing assumptions.
struct NetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructuralError : NetError {
    using NetError::NetError;
};
struct PreconditionError : NetError {
    using NetError::NetError;
};
struct OverBudgetError : NetError {
    using NetError::NetError;
};
struct UnsupportedStructureError : NetError {
    using NetError::NetError;
};
struct InapplicableError : NetError {
    using NetError::NetError;
};

/// Token vector over the places of one net; entries are nonnegative.
using Marking = std::vector<int>;

using TransitionId = int;
using PlaceId = int;

/// Place/transition structure with weighted arcs as full |P|x|T|
/// nonnegative integer matrices. The incidence matrix C = post - pre is
/// derived on demand.
struct PetriNet {
    std::vector<std::string> place_names;
    std::vector<std::string> transition_names;
    std::vector<std::vector<int>> pre;   // [place][transition]
    std::vector<std::vector<int>> post;  // [place][transition]

    int num_places() const { return static_cast<int>(place_names.size()); }
    int num_transitions() const { return static_cast<int>(transition_names.size()); }

    int incidence(PlaceId p, TransitionId t) const { return post[p][t] - pre[p][t]; }

    void check_transition(TransitionId t) const {
        if (t < 0 || t >= num_transitions())
            throw StructuralError("unknown transition id " + std::to_string(t));
    }
};

inline const std::string kEpsilon;  // empty label

/// Petri net system plus alphabet and labeling. Transitions with label
/// kEpsilon are unobservable.
struct LabeledPetriNet {
    PetriNet net;
    Marking m0;
    std::vector<std::string> alphabet;           // sorted, unique
    std::vector<std::string> labels;             // [transition] -> symbol or ""

    std::vector<TransitionId> observable() const {
        std::vector<TransitionId> out;
        for (int t = 0; t < net.num_transitions(); ++t)
            if (!labels[t].empty()) out.push_back(t);
        return out;
    }
    std::vector<TransitionId> unobservable() const {
        std::vector<TransitionId> out;
        for (int t = 0; t < net.num_transitions(); ++t)
            if (labels[t].empty()) out.push_back(t);
        return out;
    }
    bool has_symbol(const std::string& s) const {
        return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
    }
};

/// Column restriction of a net to a kept transition subset (normally the
/// unobservable transitions). c_u(p,i) = post_u - pre_u over kept columns.
struct InducedSubnet {
    const LabeledPetriNet* parent = nullptr;
    std::vector<TransitionId> kept;              // indices into parent transitions
    std::vector<std::vector<int>> pre_u;         // [place][kept index]
    std::vector<std::vector<int>> post_u;

    int incidence(PlaceId p, int kept_index) const {
        return post_u[p][kept_index] - pre_u[p][kept_index];
    }
};

struct RgEdge {
    int from = 0;
    TransitionId transition = 0;
    int to = 0;
    friend bool operator==(const RgEdge&, const RgEdge&) = default;
};

/// Explicit reachability graph; nodes indexed in lexicographic marking
/// order, edges in BFS discovery order.
struct ReachabilityGraph {
    std::vector<Marking> nodes;        // sorted lexicographically
    std::vector<RgEdge> edges;
    int initial = 0;                   // index into nodes

    int index_of(const Marking& m) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), m);
        if (it == nodes.end() || *it != m) return -1;
        return static_cast<int>(it - nodes.begin());
    }
};

inline bool enabled(const PetriNet& net, const Marking& m, TransitionId t) {
    net.check_transition(t);
    if (static_cast<int>(m.size()) != net.num_places())
        throw StructuralError("marking dimension does not match net");
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (m[p] < net.pre[p][t]) return false;
    return true;
}

inline Marking fire(const PetriNet& net, const Marking& m, TransitionId t) {
    if (!enabled(net, m, t))
        throw PreconditionError("transition " + net.transition_names[t] +
                                " is not enabled");
    Marking out = m;
    for (PlaceId p = 0; p < net.num_places(); ++p) out[p] += net.incidence(p, t);
    return out;
}

/// Fold of fire over a sequence; reports the index of the first disabled step.
inline Marking fire_sequence(const PetriNet& net, const Marking& m,
                             const std::vector<TransitionId>& seq) {
    Marking cur = m;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (!enabled(net, cur, seq[i]))
            throw PreconditionError("sequence disabled at index " + std::to_string(i) +
                                    " (transition " + net.transition_names[seq[i]] + ")");
        cur = fire(net, cur, seq[i]);
    }
    return cur;
}

/// Parikh vector of a sequence over all transitions of the net.
inline std::vector<int> parikh(const PetriNet& net, const std::vector<TransitionId>& seq) {
    std::vector<int> y(net.num_transitions(), 0);
    for (TransitionId t : seq) {
        net.check_transition(t);
        ++y[t];
    }
    return y;
}

inline InducedSubnet tu_induced_subnet(const LabeledPetriNet& lpn) {
    InducedSubnet sub;
    sub.parent = &lpn;
    sub.kept = lpn.unobservable();
    const int np = lpn.net.num_places();
    sub.pre_u.assign(np, {});
    sub.post_u.assign(np, {});
    for (PlaceId p = 0; p < np; ++p) {
        for (TransitionId t : sub.kept) {
            sub.pre_u[p].push_back(lpn.net.pre[p][t]);
            sub.post_u[p].push_back(lpn.net.post[p][t]);
        }
    }
    return sub;
}

/// True iff the directed bipartite graph (places + kept transitions, arcs
/// from nonzero pre/post entries) has no directed cycle. DFS with colors.
inline bool is_acyclic(const InducedSubnet& sub) {
    const int np = static_cast<int>(sub.pre_u.size());
    const int nt = static_cast<int>(sub.kept.size());
    const int n = np + nt;  // transitions follow places
    std::vector<std::vector<int>> adj(n);
    for (PlaceId p = 0; p < np; ++p) {
        for (int i = 0; i < nt; ++i) {
            if (sub.pre_u[p][i] > 0) adj[p].push_back(np + i);
            if (sub.post_u[p][i] > 0) adj[np + i].push_back(p);
        }
    }
    std::vector<int> color(n, 0);  // 0 white, 1 gray, 2 black
    std::vector<int> stack, it(n, 0);
    for (int s = 0; s < n; ++s) {
        if (color[s] != 0) continue;
        stack.push_back(s);
        color[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            if (it[v] < static_cast<int>(adj[v].size())) {
                int w = adj[v][it[v]++];
                if (color[w] == 1) return false;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back(w);
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

constexpr long kDefaultNodeBudget = 1'000'000;

/// Exhaustive BFS closure of reachable markings. Exceeding node_budget
/// raises OverBudgetError: the boundedness guard.
inline ReachabilityGraph reachability_graph(const LabeledPetriNet& lpn,
                                            long node_budget = kDefaultNodeBudget) {
    if (node_budget <= 0) throw StructuralError("node budget must be positive");
    std::map<Marking, int> discovered;  // marking -> discovery order
    std::vector<Marking> order;
    std::vector<std::pair<std::pair<int, TransitionId>, Marking>> raw_edges;
    discovered.emplace(lpn.m0, 0);
    order.push_back(lpn.m0);
    for (size_t head = 0; head < order.size(); ++head) {
        Marking m = order[head];
        for (TransitionId t = 0; t < lpn.net.num_transitions(); ++t) {
            if (!enabled(lpn.net, m, t)) continue;
            Marking m2 = fire(lpn.net, m, t);
            if (discovered.emplace(m2, static_cast<int>(order.size())).second) {
                order.push_back(m2);
                if (static_cast<long>(order.size()) > node_budget)
                    throw OverBudgetError(
                        "reachability graph exceeds node budget of " +
                        std::to_string(node_budget) + ": possibly unbounded");
            }
            raw_edges.push_back({{static_cast<int>(head), t}, m2});
        }
    }
    ReachabilityGraph rg;
    for (const auto& [m, i] : discovered) rg.nodes.push_back(m);
    // raw edges reference discovery order; remap onto the sorted node list
    std::vector<int> remap(order.size());
    for (size_t i = 0; i < order.size(); ++i) remap[i] = rg.index_of(order[i]);
    for (const auto& [key, target] : raw_edges)
        rg.edges.push_back({remap[key.first], key.second, rg.index_of(target)});
    rg.initial = rg.index_of(lpn.m0);
    return rg;
}

/// True iff every node of a fully constructed RG enables some transition.
inline bool is_deadlock_free(const ReachabilityGraph& rg, const LabeledPetriNet& lpn) {
    for (const Marking& m : rg.nodes) {
        bool any = false;
        for (TransitionId t = 0; t < lpn.net.num_transitions() && !any; ++t)
            any = enabled(lpn.net, m, t);
        if (!any) return false;
    }
    return true;
}

}  // namespace detpn
