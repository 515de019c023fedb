#pragma once

// Elementary-cycle enumeration for small labeled multigraphs, Johnson
// style: per-cycle polynomial delay with blocking sets, restricted to the
// least-indexed strongly connected component containing the current root.

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detpn/petri.hpp"  // error types

namespace detpn {

constexpr long kDefaultCycleBudget = 100'000;

/// One vertex cycle: v[0] -> v[1] -> ... -> v[k-1] -> v[0], all distinct.
using VertexCycle = std::vector<int>;

namespace detail {

// Tarjan SCC over an adjacency list, iterative.
inline std::vector<int> scc_components(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> comp(n, -1), low(n), num(n, -1), stk;
    int counter = 0, ncomp = 0;
    std::vector<bool> on_stack(n, false);
    struct Frame { int v; size_t i; };
    for (int s = 0; s < n; ++s) {
        if (num[s] != -1) continue;
        std::vector<Frame> frames{{s, 0}};
        num[s] = low[s] = counter++;
        stk.push_back(s);
        on_stack[s] = true;
        while (!frames.empty()) {
            auto& [v, i] = frames.back();
            if (i < adj[v].size()) {
                int w = adj[v][i++];
                if (num[w] == -1) {
                    num[w] = low[w] = counter++;
                    stk.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], num[w]);
                }
            } else {
                if (low[v] == num[v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                int v_done = v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v_done]);
            }
        }
    }
    return comp;
}

}  // namespace detail

/// All elementary vertex cycles of a directed graph given as adjacency
/// lists (parallel edges collapse here; the caller expands labels).
/// Deterministic: roots ascend, neighbors explored in sorted order; each
/// cycle is rooted at its smallest vertex.
inline std::vector<VertexCycle> elementary_cycles(std::vector<std::vector<int>> adj,
                                                  long cycle_budget = kDefaultCycleBudget) {
    const int n = static_cast<int>(adj.size());
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    std::vector<VertexCycle> cycles;
    std::vector<bool> blocked(n, false);
    std::vector<std::vector<int>> block_map(n);
    std::vector<int> path;

    for (int root = 0; root < n; ++root) {
        // subgraph induced by vertices >= root, limited to root's SCC
        std::vector<std::vector<int>> sub(n);
        for (int v = root; v < n; ++v)
            for (int w : adj[v])
                if (w >= root) sub[v].push_back(w);
        std::vector<int> comp = detail::scc_components(sub);
        for (int v = root; v < n; ++v) {
            std::vector<int> filtered;
            for (int w : sub[v])
                if (comp[w] == comp[root]) filtered.push_back(w);
            sub[v] = std::move(filtered);
        }
        if (sub[root].empty()) continue;

        std::fill(blocked.begin(), blocked.end(), false);
        for (auto& b : block_map) b.clear();

        std::function<void(int)> unblock = [&](int v) {
            blocked[v] = false;
            for (int w : block_map[v])
                if (blocked[w]) unblock(w);
            block_map[v].clear();
        };

        std::function<bool(int)> circuit = [&](int v) -> bool {
            bool found = false;
            path.push_back(v);
            blocked[v] = true;
            for (int w : sub[v]) {
                if (w == root) {
                    cycles.push_back(path);
                    if (static_cast<long>(cycles.size()) > cycle_budget)
                        throw OverBudgetError("cycle enumeration exceeded budget of " +
                                              std::to_string(cycle_budget));
                    found = true;
                } else if (!blocked[w]) {
                    if (circuit(w)) found = true;
                }
            }
            if (found) {
                unblock(v);
            } else {
                for (int w : sub[v])
                    if (std::find(block_map[w].begin(), block_map[w].end(), v) ==
                        block_map[w].end())
                        block_map[w].push_back(v);
            }
            path.pop_back();
            return found;
        };
        circuit(root);
    }
    return cycles;
}

}  // namespace detpn
