#pragma once

#include <string>
#include <vector>

#include "resdac/config.hpp"
#include "resdac/graph.hpp"

namespace test_helpers {

using resdac::AgentId;
using resdac::AgentRole;
using resdac::NetworkTopology;

inline NetworkTopology make_topology(int trusted, int ordinary, int adversarial,
                                     std::vector<std::pair<AgentId, AgentId>> edges) {
    std::vector<AgentRole> roles;
    for (int i = 0; i < trusted; ++i) roles.push_back(AgentRole::Trusted);
    for (int i = 0; i < ordinary; ++i) roles.push_back(AgentRole::Ordinary);
    for (int i = 0; i < adversarial; ++i) roles.push_back(AgentRole::Adversarial);
    return NetworkTopology(roles, edges);
}

// 1-2-3 path, all trusted
inline NetworkTopology trusted_path3() { return make_topology(3, 0, 0, {{1, 2}, {2, 3}}); }

// trusted triangle
inline NetworkTopology trusted_triangle() {
    return make_topology(3, 0, 0, {{1, 2}, {2, 3}, {1, 3}});
}

inline std::string preset_path(const std::string& name) {
    return std::string(RESDAC_PRESET_DIR) + "/" + name;
}

inline resdac::RunConfig load_preset(const std::string& name) {
    return resdac::load_config(preset_path(name));
}

} // namespace test_helpers
