#pragma once

// Communication topology with per-agent roles (trusted / ordinary /
// adversarial), connected-dominating-set validation and the good-agent
// subgraph used by the transition-matrix analysis.

#include <algorithm>
#include <cstddef>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resdac/errors.hpp"

namespace resdac {

using AgentId = int; // 1-based

enum class AgentRole { Trusted, Ordinary, Adversarial };

inline const char* role_name(AgentRole r) {
    switch (r) {
        case AgentRole::Trusted: return "trusted";
        case AgentRole::Ordinary: return "ordinary";
        case AgentRole::Adversarial: return "adversarial";
    }
    return "?";
}

// Undirected graph over agents 1..M. Ids are role-ordered by construction:
// trusted first (1..m_T), then ordinary (..N), then adversarial (..M); a
// role vector that breaks this ordering is rejected so the trusted block of
// any derived matrix is always the leading index range.
class NetworkTopology {
public:
    NetworkTopology() = default;

    NetworkTopology(std::vector<AgentRole> roles,
                    const std::vector<std::pair<AgentId, AgentId>>& edge_list)
        : roles_(std::move(roles)) {
        const int m = agent_count();
        int last_rank = 0;
        for (int i = 0; i < m; ++i) {
            const int rank = static_cast<int>(roles_[static_cast<std::size_t>(i)]);
            if (rank < last_rank)
                throw std::invalid_argument(
                    "agent ids must be ordered trusted, ordinary, adversarial; agent " +
                    std::to_string(i + 1) + " breaks the ordering");
            last_rank = rank;
            counts_[static_cast<std::size_t>(rank)] += 1;
        }
        neighbors_.assign(static_cast<std::size_t>(m) + 1, {});
        trusted_neighbors_.assign(static_cast<std::size_t>(m) + 1, {});
        for (const auto& [a, b] : edge_list) {
            check_id(a);
            check_id(b);
            if (a == b)
                throw std::invalid_argument("self-loop on agent " + std::to_string(a));
            edges_.insert({std::min(a, b), std::max(a, b)});
        }
        for (const auto& [a, b] : edges_) {
            neighbors_[static_cast<std::size_t>(a)].push_back(b);
            neighbors_[static_cast<std::size_t>(b)].push_back(a);
        }
        for (AgentId i = 1; i <= m; ++i) {
            auto& nb = neighbors_[static_cast<std::size_t>(i)];
            std::sort(nb.begin(), nb.end());
            for (AgentId j : nb)
                if (role(j) == AgentRole::Trusted)
                    trusted_neighbors_[static_cast<std::size_t>(i)].push_back(j);
        }
    }

    int agent_count() const { return static_cast<int>(roles_.size()); }        // M
    int trusted_count() const { return counts_[0]; }                           // m_T
    int ordinary_count() const { return counts_[1]; }                          // m_O
    int adversarial_count() const { return counts_[2]; }                       // m_A
    int good_count() const { return counts_[0] + counts_[1]; }                 // N

    AgentRole role(AgentId id) const {
        check_id(id);
        return roles_[static_cast<std::size_t>(id - 1)];
    }
    bool is_trusted(AgentId id) const { return role(id) == AgentRole::Trusted; }
    bool is_ordinary(AgentId id) const { return role(id) == AgentRole::Ordinary; }
    bool is_adversarial(AgentId id) const { return role(id) == AgentRole::Adversarial; }
    bool is_good(AgentId id) const { return !is_adversarial(id); }

    // N_i, sorted ascending.
    const std::vector<AgentId>& neighbors(AgentId id) const {
        check_id(id);
        return neighbors_[static_cast<std::size_t>(id)];
    }
    // T_i = N_i ∩ trusted, sorted ascending.
    const std::vector<AgentId>& trusted_neighbors(AgentId id) const {
        check_id(id);
        return trusted_neighbors_[static_cast<std::size_t>(id)];
    }

    bool has_edge(AgentId a, AgentId b) const {
        check_id(a);
        check_id(b);
        return edges_.count({std::min(a, b), std::max(a, b)}) != 0;
    }

    const std::set<std::pair<AgentId, AgentId>>& edges() const { return edges_; }

    bool valid_id(AgentId id) const { return id >= 1 && id <= agent_count(); }

    std::vector<AgentId> agents_with_role(AgentRole r) const {
        std::vector<AgentId> out;
        for (AgentId i = 1; i <= agent_count(); ++i)
            if (role(i) == r) out.push_back(i);
        return out;
    }

private:
    void check_id(AgentId id) const {
        if (!valid_id(id))
            throw std::invalid_argument("unknown agent id " + std::to_string(id));
    }

    std::vector<AgentRole> roles_;
    std::set<std::pair<AgentId, AgentId>> edges_; // normalized (min,max)
    std::vector<std::vector<AgentId>> neighbors_;
    std::vector<std::vector<AgentId>> trusted_neighbors_;
    int counts_[3] = {0, 0, 0};
};

// Directed subgraph over the good agents: every trusted-trusted edge in both
// directions plus, for each ordinary agent, the incoming arcs from its
// trusted neighbours. This is exactly the support the per-round transition
// matrix is allowed to use (besides self-loops).
struct GoodSubgraph {
    std::vector<AgentId> nodes;
    std::set<std::pair<AgentId, AgentId>> arcs; // (from, to)

    bool has_arc(AgentId from, AgentId to) const { return arcs.count({from, to}) != 0; }
};

// True iff the candidate induces a connected subgraph and every agent outside
// it has at least one neighbour inside it.
inline bool is_connected_dominating_set(const NetworkTopology& topo,
                                        const std::set<AgentId>& candidate) {
    if (candidate.empty())
        throw std::invalid_argument("candidate set is empty");
    for (AgentId id : candidate)
        if (!topo.valid_id(id))
            throw std::invalid_argument("unknown agent id " + std::to_string(id) +
                                        " in candidate set");

    // connectivity of the induced subgraph (BFS restricted to the candidate)
    std::set<AgentId> seen;
    std::queue<AgentId> frontier;
    frontier.push(*candidate.begin());
    seen.insert(*candidate.begin());
    while (!frontier.empty()) {
        AgentId u = frontier.front();
        frontier.pop();
        for (AgentId v : topo.neighbors(u)) {
            if (candidate.count(v) && !seen.count(v)) {
                seen.insert(v);
                frontier.push(v);
            }
        }
    }
    if (seen.size() != candidate.size()) return false;

    // domination scan
    for (AgentId u = 1; u <= topo.agent_count(); ++u) {
        if (candidate.count(u)) continue;
        bool dominated = false;
        for (AgentId v : topo.neighbors(u))
            if (candidate.count(v)) { dominated = true; break; }
        if (!dominated) return false;
    }
    return true;
}

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.pass) out.push_back(c.name + ": " + c.detail);
        return out;
    }
};

// Non-fatal validation: each protocol assumption becomes a named pass/fail
// entry so a CLI can explain exactly why a user topology is rejected.
inline ValidationReport validate_topology(const NetworkTopology& topo) {
    ValidationReport report;

    auto add = [&report](std::string name, bool pass, std::string detail) {
        report.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    const int m_t = topo.trusted_count();
    if (m_t == 0) {
        add("trusted-connected", false, "no trusted agents");
        add("trusted-dominating", false, "no trusted agents");
    } else {
        std::set<AgentId> trusted;
        for (AgentId i = 1; i <= m_t; ++i) trusted.insert(i);

        std::set<AgentId> seen;
        std::queue<AgentId> frontier;
        frontier.push(1);
        seen.insert(1);
        while (!frontier.empty()) {
            AgentId u = frontier.front();
            frontier.pop();
            for (AgentId v : topo.neighbors(u))
                if (trusted.count(v) && !seen.count(v)) {
                    seen.insert(v);
                    frontier.push(v);
                }
        }
        if (seen.size() == trusted.size()) {
            add("trusted-connected", true, "");
        } else {
            std::string missing;
            for (AgentId v : trusted)
                if (!seen.count(v)) missing += (missing.empty() ? "" : ", ") + std::to_string(v);
            add("trusted-connected", false,
                "trusted subgraph disconnected (unreachable from agent 1: " + missing + ")");
        }

        std::string undominated;
        for (AgentId u = m_t + 1; u <= topo.agent_count(); ++u) {
            if (topo.trusted_neighbors(u).empty())
                undominated += (undominated.empty() ? "" : ", ") + std::to_string(u);
        }
        add("trusted-dominating", undominated.empty(),
            undominated.empty() ? "" : "agents without a trusted neighbour: " + undominated);
    }

    std::string ordinary_bad;
    for (AgentId u : topo.agents_with_role(AgentRole::Ordinary))
        if (topo.trusted_neighbors(u).empty())
            ordinary_bad += (ordinary_bad.empty() ? "" : ", ") + std::to_string(u);
    add("ordinary-has-trusted-neighbour", ordinary_bad.empty(),
        ordinary_bad.empty() ? "" : "ordinary agents without a trusted neighbour: " + ordinary_bad);

    const bool counts_ok =
        topo.trusted_count() + topo.ordinary_count() + topo.adversarial_count() ==
        topo.agent_count();
    add("role-counts", counts_ok, counts_ok ? "" : "role counts do not sum to the agent count");

    // ordering is enforced at construction; re-checked for report completeness
    bool ordered = true;
    for (AgentId i = 2; i <= topo.agent_count(); ++i)
        if (static_cast<int>(topo.role(i)) < static_cast<int>(topo.role(i - 1))) ordered = false;
    add("id-ordering", ordered, ordered ? "" : "ids are not ordered trusted, ordinary, adversarial");

    return report;
}

inline GoodSubgraph good_subgraph(const NetworkTopology& topo) {
    const auto report = validate_topology(topo);
    if (!report.ok()) {
        std::string msg = "invalid topology:";
        for (const auto& f : report.failures()) msg += " [" + f + "]";
        throw std::invalid_argument(msg);
    }

    GoodSubgraph g;
    for (AgentId i = 1; i <= topo.good_count(); ++i) g.nodes.push_back(i);
    for (AgentId i = 1; i <= topo.trusted_count(); ++i)
        for (AgentId j : topo.trusted_neighbors(i)) {
            g.arcs.insert({i, j});
            g.arcs.insert({j, i});
        }
    for (AgentId i : topo.agents_with_role(AgentRole::Ordinary))
        for (AgentId j : topo.trusted_neighbors(i))
            g.arcs.insert({j, i}); // incoming only
    return g;
}

// Minimum guaranteed nonzero transition weight. Every weight the protocol
// produces is at least 1/m_T (trusted rows) or 1/(1+|N_i|) (ordinary rows),
// so alpha = 1/(1 + max(d_max, m_T - 1)) with d_max the largest good-agent
// neighbourhood lower-bounds all of them.
inline double alpha_lower_bound(const NetworkTopology& topo) {
    int d_max = 0;
    for (AgentId i = 1; i <= topo.good_count(); ++i)
        d_max = std::max(d_max, static_cast<int>(topo.neighbors(i).size()));
    const int denom = 1 + std::max(d_max, topo.trusted_count() - 1);
    return 1.0 / static_cast<double>(denom);
}

} // namespace resdac
