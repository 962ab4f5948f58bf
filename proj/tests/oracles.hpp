#pragma once

// Independent brute-force oracles kept deliberately separate from the
// library implementations they check.

#include <set>
#include <vector>

#include "resdac/graph.hpp"

namespace test_oracles {

// Connected-dominating-set decision via adjacency matrix: reachability by
// Floyd-Warshall transitive closure restricted to the candidate, domination
// by row scan. The library uses BFS over adjacency lists instead.
inline bool cds_brute_force(const resdac::NetworkTopology& topo,
                            const std::set<resdac::AgentId>& candidate) {
    const int m = topo.agent_count();
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(m + 1),
                                       std::vector<bool>(static_cast<std::size_t>(m + 1), false));
    for (const auto& [a, b] : topo.edges()) {
        adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
        adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
    }

    std::vector<std::vector<bool>> reach = adj;
    for (int i = 1; i <= m; ++i) reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
    for (int k = 1; k <= m; ++k) {
        if (!candidate.count(k)) continue; // paths may only pass through the candidate
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j)
                if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                    reach[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                    reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    }
    for (resdac::AgentId a : candidate)
        for (resdac::AgentId b : candidate)
            if (!reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) return false;

    for (int u = 1; u <= m; ++u) {
        if (candidate.count(u)) continue;
        bool dominated = false;
        for (resdac::AgentId v : candidate)
            if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) dominated = true;
        if (!dominated) return false;
    }
    return true;
}

} // namespace test_oracles
