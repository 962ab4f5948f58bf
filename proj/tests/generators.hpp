#pragma once

// Seeded random scenarios: valid-by-construction topologies with mixed
// signal types and adversary schedules.

#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "resdac/adversary.hpp"
#include "resdac/graph.hpp"
#include "resdac/signals.hpp"

namespace test_generators {

using resdac::AgentId;
using resdac::AgentRole;
using resdac::NetworkTopology;
using resdac::SignalBank;
using resdac::SignalSpec;
using resdac::StrategyMap;

struct Scenario {
    NetworkTopology topo;
    SignalBank bank;
    StrategyMap strategies;
};

inline SignalSpec random_signal(std::mt19937& rng) {
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_real_distribution<double> slope(-0.2, 0.2);
    std::uniform_real_distribution<double> amp(0.0, 1.0);
    std::uniform_real_distribution<double> freq(0.05, 0.5);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return SignalSpec::constant(val(rng));
        case 1: return SignalSpec::ramp(val(rng), slope(rng));
        default: return SignalSpec::sinusoid_ramp(val(rng), slope(rng), amp(rng), freq(rng));
    }
}

// Topology valid by construction: connected trusted core (random tree plus
// extra trusted edges) and every other agent wired to at least one trusted
// agent.
inline NetworkTopology random_valid_topology(std::mt19937& rng, int max_agents = 12) {
    std::uniform_int_distribution<int> mt_dist(1, 4);
    const int m_t = mt_dist(rng);
    std::uniform_int_distribution<int> rest(0, max_agents - m_t);
    int m_o = rest(rng);
    std::uniform_int_distribution<int> adv(0, max_agents - m_t - m_o);
    int m_a = adv(rng);

    std::vector<AgentRole> roles;
    for (int i = 0; i < m_t; ++i) roles.push_back(AgentRole::Trusted);
    for (int i = 0; i < m_o; ++i) roles.push_back(AgentRole::Ordinary);
    for (int i = 0; i < m_a; ++i) roles.push_back(AgentRole::Adversarial);
    const int m = m_t + m_o + m_a;

    std::set<std::pair<AgentId, AgentId>> edges;
    auto add_edge = [&edges](AgentId a, AgentId b) {
        if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
    };
    for (AgentId i = 2; i <= m_t; ++i)
        add_edge(i, std::uniform_int_distribution<AgentId>(1, i - 1)(rng));
    std::bernoulli_distribution extra_trusted(0.3);
    for (AgentId i = 1; i <= m_t; ++i)
        for (AgentId j = i + 1; j <= m_t; ++j)
            if (extra_trusted(rng)) add_edge(i, j);

    std::bernoulli_distribution extra_any(0.2);
    for (AgentId i = m_t + 1; i <= m; ++i) {
        add_edge(i, std::uniform_int_distribution<AgentId>(1, m_t)(rng));
        for (AgentId j = 1; j < i; ++j)
            if (extra_any(rng)) add_edge(i, j);
    }

    return NetworkTopology(roles, {edges.begin(), edges.end()});
}

inline Scenario random_scenario(std::mt19937& rng, int max_agents = 12) {
    Scenario s{random_valid_topology(rng, max_agents), {}, {}};
    for (AgentId i = 1; i <= s.topo.good_count(); ++i) s.bank.assign(i, random_signal(rng));

    std::uniform_real_distribution<double> big(-50.0, 50.0);
    for (AgentId a : s.topo.agents_with_role(AgentRole::Adversarial)) {
        switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
            case 0:
                s.strategies.emplace(a, resdac::AdversaryStrategy::broadcast(random_signal(rng)));
                break;
            case 1:
                s.strategies.emplace(a, resdac::AdversaryStrategy::noisy_broadcast(
                                            random_signal(rng), std::abs(big(rng)), rng()));
                break;
            default: {
                std::map<AgentId, SignalSpec> targets;
                for (AgentId nb : s.topo.neighbors(a))
                    if (s.topo.is_ordinary(nb)) targets.emplace(nb, SignalSpec::constant(big(rng)));
                s.strategies.emplace(a, resdac::AdversaryStrategy::per_neighbor(std::move(targets)));
                break;
            }
        }
    }
    return s;
}

} // namespace test_generators
