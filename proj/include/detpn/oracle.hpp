#pragma once

// Independent ground truth for small nets: observer (subset construction
// over the full reachability space) and definition-level detectability
// checks. Deliberately brute-force; never part of the decision path.

#include <optional>

#include "detpn/basis.hpp"
#include "detpn/cycles.hpp"

namespace detpn {

/// Deterministic automaton over observation words; each state is the set
/// of markings consistent with the word reaching it.
struct ObserverAutomaton {
    std::vector<std::vector<Marking>> states;  // each sorted
    std::vector<std::string> alphabet;
    std::map<std::pair<int, std::string>, int> edges;
    int initial = 0;
};

/// Subset construction with epsilon-closure over unobservable firings.
/// Worst case exponential in the reachability-set size.
inline ObserverAutomaton build_observer(const LabeledPetriNet& lpn,
                                        long budget = kDefaultNodeBudget) {
    auto closure = [&](std::set<Marking> s) {
        std::deque<Marking> queue(s.begin(), s.end());
        while (!queue.empty()) {
            Marking m = std::move(queue.front());
            queue.pop_front();
            for (TransitionId t : lpn.unobservable()) {
                if (!enabled(lpn.net, m, t)) continue;
                Marking m2 = fire(lpn.net, m, t);
                if (s.insert(m2).second) queue.push_back(m2);
            }
        }
        return std::vector<Marking>(s.begin(), s.end());
    };

    ObserverAutomaton obs;
    obs.alphabet = lpn.alphabet;
    std::map<std::vector<Marking>, int> index;
    std::vector<Marking> init = closure({lpn.m0});
    index.emplace(init, 0);
    obs.states.push_back(init);
    for (size_t head = 0; head < obs.states.size(); ++head) {
        std::vector<Marking> cur = obs.states[head];  // copy: states grows
        for (const std::string& sym : lpn.alphabet) {
            std::set<Marking> next;
            for (const Marking& m : cur)
                for (TransitionId t : lpn.observable())
                    if (lpn.labels[t] == sym && enabled(lpn.net, m, t))
                        next.insert(fire(lpn.net, m, t));
            if (next.empty()) continue;
            std::vector<Marking> target = closure(std::move(next));
            auto [it, inserted] = index.emplace(target, static_cast<int>(obs.states.size()));
            if (inserted) {
                obs.states.push_back(target);
                if (static_cast<long>(obs.states.size()) > budget)
                    throw OverBudgetError("observer exceeded budget");
            }
            obs.edges[{static_cast<int>(head), sym}] = it->second;
        }
    }
    return obs;
}

namespace detail {

inline std::vector<std::vector<int>> observer_adjacency(const ObserverAutomaton& obs) {
    std::vector<std::vector<int>> adj(obs.states.size());
    for (const auto& [key, to] : obs.edges) adj[key.first].push_back(to);
    return adj;
}

inline std::set<int> observer_cycle_states(const ObserverAutomaton& obs) {
    auto adj = observer_adjacency(obs);
    std::set<int> on_cycle;
    for (const VertexCycle& c : elementary_cycles(adj))
        on_cycle.insert(c.begin(), c.end());
    return on_cycle;
}

inline std::set<int> forward_closure(const std::vector<std::vector<int>>& adj,
                                     std::set<int> seed) {
    std::deque<int> queue(seed.begin(), seed.end());
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (seed.insert(w).second) queue.push_back(w);
    }
    return seed;
}

inline void check_oracle_assumptions(const LabeledPetriNet& lpn, long budget) {
    ReachabilityGraph rg;
    try {
        rg = reachability_graph(lpn, budget);
    } catch (const OverBudgetError&) {
        throw InapplicableError("oracle: net possibly unbounded");
    }
    if (!is_deadlock_free(rg, lpn))
        throw InapplicableError("oracle: net is not deadlock free");
}

}  // namespace detail

/// Definition-level strong detectability: every observer state reachable
/// from an observer cycle is a singleton set of markings.
inline bool oracle_strong_detectability(const LabeledPetriNet& lpn,
                                        long budget = kDefaultNodeBudget) {
    detail::check_oracle_assumptions(lpn, budget);
    ObserverAutomaton obs = build_observer(lpn, budget);
    auto adj = detail::observer_adjacency(obs);
    for (int s : detail::forward_closure(adj, detail::observer_cycle_states(obs)))
        if (obs.states[s].size() != 1) return false;
    return true;
}

/// Definition-level periodically strong detectability: every cycle of the
/// observer contains at least one singleton state.
inline bool oracle_periodic_strong_detectability(const LabeledPetriNet& lpn,
                                                 long budget = kDefaultNodeBudget) {
    detail::check_oracle_assumptions(lpn, budget);
    ObserverAutomaton obs = build_observer(lpn, budget);
    auto adj = detail::observer_adjacency(obs);
    for (const VertexCycle& c : elementary_cycles(adj)) {
        bool any_singleton = false;
        for (int s : c)
            if (obs.states[s].size() == 1) { any_singleton = true; break; }
        if (!any_singleton) return false;
    }
    return true;
}

/// Bounded-horizon refutation of strong detectability: a word that reaches
/// a non-singleton observer state after pumping an observer cycle once, of
/// length at most `horizon`. A witness refutes the property; absence is
/// inconclusive.
inline std::optional<std::vector<std::string>> bounded_falsifier(const LabeledPetriNet& lpn,
                                                                 int horizon,
                                                                 long budget = kDefaultNodeBudget) {
    ObserverAutomaton obs = build_observer(lpn, budget);
    // BFS over (state, path), looking for a path with a repeated state that
    // ends in a non-singleton observer state.
    struct Node {
        int state;
        std::vector<int> seen;  // states along the path
        std::vector<std::string> word;
    };
    std::deque<Node> queue{{obs.initial, {obs.initial}, {}}};
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        // the word must pass through a cycle before the confusable state
        bool revisits = std::count(node.seen.begin(), node.seen.end(), node.state) > 1;
        if (revisits && obs.states[node.state].size() != 1) return node.word;
        if (static_cast<int>(node.word.size()) >= horizon) continue;
        for (const auto& [key, to] : obs.edges) {
            if (key.first != node.state) continue;
            // allow at most one revisit per state to bound the search
            if (std::count(node.seen.begin(), node.seen.end(), to) > 1) continue;
            Node next = node;
            next.state = to;
            next.seen.push_back(to);
            next.word.push_back(key.second);
            queue.push_back(std::move(next));
        }
    }
    return std::nullopt;
}

}  // namespace detpn
