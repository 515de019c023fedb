#pragma once

// Random valid LPN generator for property testing: small state-machine
// shaped nets (every transition one input and one output place) that are
// bounded within a reachability budget, deadlock free, and have an acyclic
// unobservable subnet. Rejection sampling with a deterministic RNG.

#include <random>

#include "detpn/petri.hpp"

namespace detpn {

struct RandNetParams {
    int max_places = 8;
    int max_transitions = 8;
    long rg_budget = 2000;           // boundedness guard for accepted nets
    int max_initial_tokens = 3;
    double unobservable_prob = 0.35;
    double heavy_post_prob = 0.10;   // chance of a weight-2 output arc
};

namespace detail {

inline LabeledPetriNet random_lpn_candidate(std::mt19937& rng, const RandNetParams& par) {
    std::uniform_int_distribution<int> place_count(2, std::min(6, par.max_places));
    const int np = place_count(rng);
    std::uniform_int_distribution<int> trans_count(np, par.max_transitions);
    const int nt = trans_count(rng);

    LabeledPetriNet lpn;
    for (int p = 0; p < np; ++p) lpn.net.place_names.push_back("p" + std::to_string(p + 1));
    lpn.net.pre.assign(np, std::vector<int>(nt, 0));
    lpn.net.post.assign(np, std::vector<int>(nt, 0));

    std::uniform_int_distribution<int> any_place(0, np - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::vector<std::string> symbols{"a", "b", "c"};
    std::uniform_int_distribution<int> any_symbol(0, static_cast<int>(symbols.size()) - 1);

    for (int t = 0; t < nt; ++t) {
        lpn.net.transition_names.push_back("t" + std::to_string(t + 1));
        // the first np transitions give every place an outgoing arc, which
        // together with unit input weights makes deadlock-freeness automatic
        int src = t < np ? t : any_place(rng);
        int dst = any_place(rng);
        lpn.net.pre[src][t] = 1;
        lpn.net.post[dst][t] += coin(rng) < par.heavy_post_prob ? 2 : 1;
        // unobservable transitions only move tokens to strictly higher
        // place indices, which keeps the unobservable subnet acyclic
        bool unobs = t > 0 && dst > src && coin(rng) < par.unobservable_prob;
        lpn.labels.push_back(unobs ? kEpsilon : symbols[any_symbol(rng)]);
    }

    std::uniform_int_distribution<int> tokens(1, par.max_initial_tokens);
    lpn.m0.assign(np, 0);
    int total = tokens(rng);
    for (int k = 0; k < total; ++k) ++lpn.m0[any_place(rng)];

    std::set<std::string> alpha(lpn.labels.begin(), lpn.labels.end());
    alpha.erase(kEpsilon);
    lpn.alphabet.assign(alpha.begin(), alpha.end());
    return lpn;
}

}  // namespace detail

/// A random LPN satisfying the standing assumptions: bounded within
/// par.rg_budget, deadlock free, acyclic unobservable subnet. Candidates
/// violating any of them are discarded and resampled.
inline LabeledPetriNet random_valid_lpn(std::mt19937& rng,
                                        const RandNetParams& par = RandNetParams{}) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        LabeledPetriNet lpn = detail::random_lpn_candidate(rng, par);
        if (!is_acyclic(tu_induced_subnet(lpn))) continue;
        ReachabilityGraph rg;
        try {
            rg = reachability_graph(lpn, par.rg_budget);
        } catch (const OverBudgetError&) {
            continue;
        }
        if (!is_deadlock_free(rg, lpn)) continue;
        return lpn;
    }
    throw NetError("random_valid_lpn: no valid net found within the attempt limit");
}

}  // namespace detpn
