#pragma once

// Declarative run configuration: topology / signals / adversaries / run
// sections in a JSON file, validated against every protocol assumption with
// agent ids and condition names surfaced on failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "resdac/adversary.hpp"
#include "resdac/consensus.hpp"
#include "resdac/errors.hpp"
#include "resdac/graph.hpp"
#include "resdac/signals.hpp"

namespace resdac {

struct RunConfig {
    NetworkTopology topology;
    SignalBank signals;
    StrategyMap adversaries;
    int horizon = 100;
    std::optional<std::map<AgentId, double>> initial_states; // default x_i(1) = r_i(0)
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    bool emit_matrices = false;
    bool emit_plots = true;
};

namespace detail {

inline AgentId parse_agent_key(const std::string& key) {
    std::size_t pos = 0;
    int id = 0;
    try {
        id = std::stoi(key, &pos);
    } catch (const std::exception&) {
        throw ConfigError("agent key '" + key + "' is not an integer id");
    }
    if (pos != key.size() || id < 1)
        throw ConfigError("agent key '" + key + "' is not a positive integer id");
    return id;
}

inline double require_number(const nlohmann::json& j, const std::string& key,
                             const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(where + " needs a numeric field '" + key + "'");
    return j.at(key).get<double>();
}

inline SignalSpec parse_signal(const nlohmann::json& j, const std::string& where,
                               const std::filesystem::path& base_dir) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError(where + ": signal needs a 'type' field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") {
        return SignalSpec::constant(require_number(j, "value", where));
    }
    if (type == "ramp") {
        return SignalSpec::ramp(require_number(j, "offset", where),
                                require_number(j, "slope", where));
    }
    if (type == "sinusoid_ramp") {
        double w = 0.0;
        if (j.contains("angular_freq_pi"))
            w = require_number(j, "angular_freq_pi", where) * M_PI;
        else
            w = require_number(j, "angular_freq", where);
        return SignalSpec::sinusoid_ramp(require_number(j, "offset", where),
                                         require_number(j, "slope", where),
                                         require_number(j, "amplitude", where), w);
    }
    if (type == "tabulated") {
        std::vector<double> values;
        if (j.contains("values")) {
            if (!j.at("values").is_array())
                throw ConfigError(where + ": tabulated 'values' must be an array");
            for (const auto& v : j.at("values")) {
                if (!v.is_number()) throw ConfigError(where + ": tabulated values must be numbers");
                values.push_back(v.get<double>());
            }
        } else if (j.contains("file")) {
            const std::filesystem::path p = base_dir / j.at("file").get<std::string>();
            std::ifstream in(p);
            if (!in) throw ConfigError(where + ": cannot open tabulated file " + p.string());
            double v;
            while (in >> v) values.push_back(v);
            if (values.empty())
                throw ConfigError(where + ": tabulated file " + p.string() + " holds no samples");
        } else {
            throw ConfigError(where + ": tabulated signal needs 'values' or 'file'");
        }
        return SignalSpec::tabulated(std::move(values));
    }
    throw ConfigError(where + ": unknown signal type '" + type + "'");
}

inline AdversaryStrategy parse_strategy(const nlohmann::json& j, const std::string& where,
                                        const std::filesystem::path& base_dir) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError(where + ": strategy needs a 'type' field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "broadcast") {
        if (!j.contains("signal")) throw ConfigError(where + ": broadcast needs a 'signal'");
        return AdversaryStrategy::broadcast(parse_signal(j.at("signal"), where, base_dir));
    }
    if (type == "per_neighbor") {
        if (!j.contains("targets") || !j.at("targets").is_object())
            throw ConfigError(where + ": per_neighbor needs a 'targets' object");
        std::map<AgentId, SignalSpec> targets;
        for (const auto& [key, val] : j.at("targets").items())
            targets.emplace(parse_agent_key(key),
                            parse_signal(val, where + " target " + key, base_dir));
        return AdversaryStrategy::per_neighbor(std::move(targets));
    }
    if (type == "noisy_broadcast") {
        if (!j.contains("signal")) throw ConfigError(where + ": noisy_broadcast needs a 'signal'");
        const double amplitude = require_number(j, "amplitude", where);
        const std::uint64_t seed =
            j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
        return AdversaryStrategy::noisy_broadcast(parse_signal(j.at("signal"), where, base_dir),
                                                  amplitude, seed);
    }
    throw ConfigError(where + ": unknown strategy type '" + type + "'");
}

inline nlohmann::json signal_to_json(const SignalSpec& s) {
    nlohmann::json j;
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SignalSpec::Constant>) {
                j = {{"type", "constant"}, {"value", v.value}};
            } else if constexpr (std::is_same_v<T, SignalSpec::Ramp>) {
                j = {{"type", "ramp"}, {"offset", v.offset}, {"slope", v.slope}};
            } else if constexpr (std::is_same_v<T, SignalSpec::SinusoidRamp>) {
                j = {{"type", "sinusoid_ramp"},
                     {"offset", v.offset},
                     {"slope", v.slope},
                     {"amplitude", v.amplitude},
                     {"angular_freq", v.angular_freq}};
            } else {
                j = {{"type", "tabulated"}, {"values", v.values}};
            }
        },
        s.spec());
    return j;
}

inline nlohmann::json strategy_to_json(const AdversaryStrategy& s) {
    nlohmann::json j;
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AdversaryStrategy::Broadcast>) {
                j = {{"type", "broadcast"}, {"signal", signal_to_json(v.series)}};
            } else if constexpr (std::is_same_v<T, AdversaryStrategy::PerNeighbor>) {
                nlohmann::json targets = nlohmann::json::object();
                for (const auto& [id, spec] : v.targets)
                    targets[std::to_string(id)] = signal_to_json(spec);
                j = {{"type", "per_neighbor"}, {"targets", targets}};
            } else {
                j = {{"type", "noisy_broadcast"},
                     {"signal", signal_to_json(v.series)},
                     {"amplitude", v.amplitude},
                     {"seed", v.seed}};
            }
        },
        s.spec());
    return j;
}

} // namespace detail

struct ConfigCheckResult {
    std::optional<RunConfig> config; // present when parsing succeeded
    ValidationReport topology_report;
    std::vector<std::string> errors; // parse / consistency failures

    bool ok() const { return config.has_value() && errors.empty() && topology_report.ok(); }

    std::string describe_failures() const {
        std::string msg;
        for (const auto& e : errors) msg += " [" + e + "]";
        for (const auto& f : topology_report.failures()) msg += " [" + f + "]";
        return msg;
    }
};

inline RunConfig parse_config(const nlohmann::json& root, const std::filesystem::path& base_dir) {
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    if (!root.contains("topology")) throw ConfigError("config needs a 'topology' section");
    const auto& topo_j = root.at("topology");
    if (!topo_j.contains("roles") || !topo_j.at("roles").is_array())
        throw ConfigError("topology needs a 'roles' array with one role string per agent");

    std::vector<AgentRole> roles;
    for (const auto& r : topo_j.at("roles")) {
        const std::string name = r.get<std::string>();
        if (name == "trusted")
            roles.push_back(AgentRole::Trusted);
        else if (name == "ordinary")
            roles.push_back(AgentRole::Ordinary);
        else if (name == "adversarial")
            roles.push_back(AgentRole::Adversarial);
        else
            throw ConfigError("unknown role '" + name + "'");
    }

    std::vector<std::pair<AgentId, AgentId>> edges;
    if (topo_j.contains("edges")) {
        for (const auto& e : topo_j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigError("each edge must be a pair of agent ids");
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
    }

    RunConfig cfg;
    try {
        cfg.topology = NetworkTopology(std::move(roles), edges);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("topology: ") + e.what());
    }

    if (root.contains("signals")) {
        if (!root.at("signals").is_object())
            throw ConfigError("'signals' must map agent ids to signal specs");
        for (const auto& [key, val] : root.at("signals").items())
            cfg.signals.assign(detail::parse_agent_key(key),
                               detail::parse_signal(val, "signal of agent " + key, base_dir));
    }

    if (root.contains("adversaries")) {
        if (!root.at("adversaries").is_object())
            throw ConfigError("'adversaries' must map agent ids to strategies");
        for (const auto& [key, val] : root.at("adversaries").items())
            cfg.adversaries.emplace(
                detail::parse_agent_key(key),
                detail::parse_strategy(val, "strategy of agent " + key, base_dir));
    }

    if (root.contains("run")) {
        const auto& run_j = root.at("run");
        if (run_j.contains("horizon")) cfg.horizon = run_j.at("horizon").get<int>();
        if (run_j.contains("seed")) cfg.seed = run_j.at("seed").get<std::uint64_t>();
        if (run_j.contains("out_dir")) cfg.out_dir = run_j.at("out_dir").get<std::string>();
        if (run_j.contains("emit_matrices")) cfg.emit_matrices = run_j.at("emit_matrices").get<bool>();
        if (run_j.contains("emit_plots")) cfg.emit_plots = run_j.at("emit_plots").get<bool>();
        if (run_j.contains("initial_states")) {
            std::map<AgentId, double> init;
            for (const auto& [key, val] : run_j.at("initial_states").items())
                init.emplace(detail::parse_agent_key(key), val.get<double>());
            cfg.initial_states = std::move(init);
        }
    }
    return cfg;
}

// Consistency checks beyond topology validity; every failure names the agent
// and the violated condition.
inline std::vector<std::string> config_consistency_errors(const RunConfig& cfg) {
    std::vector<std::string> errors;
    const auto& topo = cfg.topology;

    if (cfg.horizon < 2) errors.push_back("horizon must be at least 2");

    for (AgentId i = 1; i <= topo.good_count(); ++i)
        if (!cfg.signals.contains(i))
            errors.push_back("no signal configured for agent " + std::to_string(i));
    for (const auto& [id, s] : cfg.signals.all())
        if (!topo.valid_id(id) || !topo.is_good(id))
            errors.push_back("signal configured for non-good agent " + std::to_string(id));

    for (AgentId a : topo.agents_with_role(AgentRole::Adversarial))
        if (cfg.adversaries.find(a) == cfg.adversaries.end())
            errors.push_back("no strategy configured for adversarial agent " + std::to_string(a));
    for (const auto& [id, strat] : cfg.adversaries) {
        if (!topo.valid_id(id) || !topo.is_adversarial(id)) {
            errors.push_back("strategy configured for non-adversarial agent " + std::to_string(id));
            continue;
        }
        if (const auto* pn = std::get_if<AdversaryStrategy::PerNeighbor>(&strat.spec())) {
            for (const auto& [target, spec] : pn->targets)
                if (!topo.valid_id(target) || !topo.has_edge(id, target))
                    errors.push_back("per-neighbor target " + std::to_string(target) +
                                     " is not a neighbour of adversarial agent " +
                                     std::to_string(id));
            for (AgentId nb : topo.neighbors(id))
                if (topo.is_ordinary(nb) && pn->targets.find(nb) == pn->targets.end())
                    errors.push_back("per-neighbor strategy of agent " + std::to_string(id) +
                                     " misses ordinary neighbour " + std::to_string(nb));
        }
    }

    if (cfg.initial_states)
        for (const auto& [id, v] : *cfg.initial_states)
            if (!topo.valid_id(id) || !topo.is_good(id))
                errors.push_back("initial state for non-good agent " + std::to_string(id));

    // tabulated signals must cover r(0)..r(horizon-1)
    for (const auto& [id, spec] : cfg.signals.all()) {
        if (const auto* tab = std::get_if<SignalSpec::Tabulated>(&spec.spec())) {
            if (static_cast<int>(tab->values.size()) < cfg.horizon)
                errors.push_back("tabulated signal of agent " + std::to_string(id) + " has " +
                                 std::to_string(tab->values.size()) +
                                 " samples but the run queries rounds 0.." +
                                 std::to_string(cfg.horizon - 1));
        }
    }
    return errors;
}

inline ConfigCheckResult check_config_file(const std::string& path) {
    ConfigCheckResult result;
    nlohmann::json root;
    try {
        std::ifstream in(path);
        if (!in) {
            result.errors.push_back("cannot open config file " + path);
            return result;
        }
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        result.errors.push_back(std::string("parse error: ") + e.what());
        return result;
    }
    try {
        result.config =
            parse_config(root, std::filesystem::path(path).parent_path());
    } catch (const ConfigError& e) {
        result.errors.push_back(e.what());
        return result;
    } catch (const nlohmann::json::exception& e) {
        result.errors.push_back(std::string("malformed config value: ") + e.what());
        return result;
    }
    result.topology_report = validate_topology(result.config->topology);
    auto errors = config_consistency_errors(*result.config);
    result.errors.insert(result.errors.end(), errors.begin(), errors.end());
    return result;
}

inline RunConfig load_config(const std::string& path) {
    ConfigCheckResult result = check_config_file(path);
    if (!result.ok())
        throw ConfigError("invalid config " + path + ":" + result.describe_failures());
    return std::move(*result.config);
}

inline nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json topo_j;
    nlohmann::json roles = nlohmann::json::array();
    for (AgentId i = 1; i <= cfg.topology.agent_count(); ++i)
        roles.push_back(role_name(cfg.topology.role(i)));
    topo_j["roles"] = roles;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : cfg.topology.edges()) edges.push_back({a, b});
    topo_j["edges"] = edges;

    nlohmann::json signals = nlohmann::json::object();
    for (const auto& [id, spec] : cfg.signals.all())
        signals[std::to_string(id)] = detail::signal_to_json(spec);

    nlohmann::json adversaries = nlohmann::json::object();
    for (const auto& [id, strat] : cfg.adversaries)
        adversaries[std::to_string(id)] = detail::strategy_to_json(strat);

    nlohmann::json run_j = {{"horizon", cfg.horizon},
                            {"seed", cfg.seed},
                            {"out_dir", cfg.out_dir},
                            {"emit_matrices", cfg.emit_matrices},
                            {"emit_plots", cfg.emit_plots}};
    if (cfg.initial_states) {
        nlohmann::json init = nlohmann::json::object();
        for (const auto& [id, v] : *cfg.initial_states) init[std::to_string(id)] = v;
        run_j["initial_states"] = init;
    }

    return {{"topology", topo_j},
            {"signals", signals},
            {"adversaries", adversaries},
            {"run", run_j}};
}

inline void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file " + path);
    out << to_json(cfg).dump(2) << "\n";
}

inline RunOptions options_from(const RunConfig& cfg) {
    RunOptions opts;
    opts.horizon = cfg.horizon;
    opts.initial_states = cfg.initial_states;
    opts.seed = cfg.seed;
    opts.detail = RecordDetail::Full;
    return opts;
}

inline SimulationTrace run(const RunConfig& cfg) {
    return run(cfg.topology, cfg.signals, cfg.adversaries, options_from(cfg));
}

} // namespace resdac
