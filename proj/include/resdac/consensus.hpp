#pragma once

// The per-round protocol: trusted agents average their trusted neighbours
// with uniform 1/m_T weights, ordinary agents clip every received value to
// the interval spanned by their trusted neighbours and themselves before
// averaging. Both add the first difference of their own reference signal.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resdac/adversary.hpp"
#include "resdac/errors.hpp"
#include "resdac/graph.hpp"
#include "resdac/signals.hpp"

namespace resdac {

struct AgentState {
    double x = 0.0;              // x_i(t)
    double last_reference = 0.0; // r_i(t-1)
};

// Core of the trusted update law: sum x_j/m_T over trusted neighbours plus
// (1 - |T_i|/m_T) * own state plus the reference increment.
inline double trusted_update(const AgentState& own, std::span<const double> trusted_values,
                             int m_t, double delta_r) {
    if (m_t < 1) throw std::invalid_argument("trusted update needs m_T >= 1");
    const int k = static_cast<int>(trusted_values.size());
    if (k >= m_t)
        throw std::invalid_argument("trusted agent with " + std::to_string(k) +
                                    " trusted neighbours but m_T = " + std::to_string(m_t));
    double acc = 0.0;
    for (double v : trusted_values) acc += v;
    const double self_weight = 1.0 - static_cast<double>(k) / static_cast<double>(m_t);
    return acc / static_cast<double>(m_t) + self_weight * own.x + delta_r;
}

inline double trusted_update(const AgentState& own,
                             const std::map<AgentId, double>& trusted_values, int m_t,
                             double delta_r) {
    std::vector<double> values;
    values.reserve(trusted_values.size());
    for (const auto& [id, v] : trusted_values) values.push_back(v);
    return trusted_update(own, std::span<const double>(values), m_t, delta_r);
}

struct FilterOutcome {
    double x_min = 0.0; // min over trusted neighbours' values and own state
    double x_max = 0.0;
    std::vector<AgentId> accepted;            // U_i(t), sorted, always contains self
    std::map<AgentId, double> accepted_values; // id -> value as received
};

// Interval filter of the ordinary agents. The interval is closed, so values
// exactly on a boundary are kept.
inline FilterOutcome filter_neighbors(AgentId self, double own_x,
                                      const std::map<AgentId, double>& trusted_values,
                                      const std::map<AgentId, double>& all_received) {
    if (trusted_values.empty())
        throw ProtocolError("ordinary agent " + std::to_string(self) +
                            " has no trusted neighbour values to filter against");
    FilterOutcome out;
    out.x_min = own_x;
    out.x_max = own_x;
    for (const auto& [id, v] : trusted_values) {
        if (all_received.find(id) == all_received.end())
            throw std::invalid_argument("trusted value from agent " + std::to_string(id) +
                                        " missing from the received set");
        out.x_min = std::min(out.x_min, v);
        out.x_max = std::max(out.x_max, v);
    }
    out.accepted.push_back(self);
    out.accepted_values.emplace(self, own_x);
    for (const auto& [id, v] : all_received) {
        if (v >= out.x_min && v <= out.x_max) { // rejects NaN as well
            out.accepted.push_back(id);
            out.accepted_values.emplace(id, v);
        }
    }
    std::sort(out.accepted.begin(), out.accepted.end());
    return out;
}

// Uniform average over the accepted set plus the reference increment.
inline double ordinary_update(const FilterOutcome& outcome, double delta_r) {
    if (outcome.accepted.empty())
        throw std::invalid_argument("ordinary update with an empty accepted set");
    double acc = 0.0;
    for (const auto& [id, v] : outcome.accepted_values) acc += v;
    return acc / static_cast<double>(outcome.accepted_values.size()) + delta_r;
}

struct Emission {
    int t = 0;
    AgentId sender = 0;
    AgentId receiver = 0;
    double value = 0.0;
};

enum class RecordDetail {
    Full,      // inboxes, filter outcomes and emissions are kept per round
    StatesOnly // only the state trajectory is kept (bulk property sweeps)
};

struct RoundRecord {
    int t = 0;
    std::vector<double> reference; // r_i(t), good agents, index id-1
    std::vector<double> delta_r;   // dr_i(t)
    // full detail only:
    std::vector<std::map<AgentId, double>> inbox; // per good agent: sender -> value collected
    std::map<AgentId, FilterOutcome> filters;     // ordinary agents
    std::vector<Emission> emissions;
    bool full_detail = false;
};

namespace detail {

inline void require_finite(double v, const std::string& what, int t) {
    if (!std::isfinite(v))
        throw DataError("non-finite " + what + " at round " + std::to_string(t));
}

} // namespace detail

// One synchronous round: all inboxes are built from the states at t before
// any update is applied. Trusted agents collect only trusted neighbours;
// ordinary agents collect every neighbour and filter. Returns the states at
// t+1 and fills `record`.
inline std::vector<AgentState> run_round(const NetworkTopology& topo, const SignalBank& bank,
                                         const StrategyMap& strategies,
                                         const std::vector<AgentState>& states, int t,
                                         std::uint64_t seed, RoundRecord& record,
                                         RecordDetail level = RecordDetail::Full) {
    const int n = topo.good_count();
    const int m_t = topo.trusted_count();
    if (static_cast<int>(states.size()) != n)
        throw std::invalid_argument("state vector size does not match the good agent count");
    if (t < 1) throw std::invalid_argument("rounds start at t = 1");

    record = RoundRecord{};
    record.t = t;
    record.full_detail = (level == RecordDetail::Full);
    record.reference.resize(static_cast<std::size_t>(n));
    record.delta_r.resize(static_cast<std::size_t>(n));
    if (record.full_detail) record.inbox.resize(static_cast<std::size_t>(n));

    for (AgentId i = 1; i <= n; ++i) {
        const double r_t = bank.at(i).at(t);
        detail::require_finite(r_t, "reference of agent " + std::to_string(i), t);
        record.reference[static_cast<std::size_t>(i - 1)] = r_t;
        record.delta_r[static_cast<std::size_t>(i - 1)] =
            r_t - states[static_cast<std::size_t>(i - 1)].last_reference;
        detail::require_finite(record.delta_r[static_cast<std::size_t>(i - 1)],
                               "reference increment of agent " + std::to_string(i), t);
    }

    std::vector<AgentState> next(static_cast<std::size_t>(n));
    std::vector<double> trusted_buf;

    for (AgentId i = 1; i <= n; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i - 1);
        const double dr = record.delta_r[idx];

        if (topo.is_trusted(i)) {
            // reads trusted neighbours only, so no adversarial value can
            // enter this input set
            trusted_buf.clear();
            for (AgentId j : topo.trusted_neighbors(i)) {
                if (!topo.is_trusted(j))
                    throw std::logic_error("non-trusted sender in a trusted input set");
                trusted_buf.push_back(states[static_cast<std::size_t>(j - 1)].x);
            }
            next[idx].x = trusted_update(states[idx], std::span<const double>(trusted_buf), m_t, dr);
            if (record.full_detail) {
                auto& box = record.inbox[idx];
                for (AgentId j : topo.trusted_neighbors(i))
                    box.emplace(j, states[static_cast<std::size_t>(j - 1)].x);
            }
        } else {
            std::map<AgentId, double> inbox;
            std::map<AgentId, double> trusted_values;
            for (AgentId j : topo.neighbors(i)) {
                double v;
                if (topo.is_good(j)) {
                    v = states[static_cast<std::size_t>(j - 1)].x; // honest broadcast
                } else {
                    auto it = strategies.find(j);
                    if (it == strategies.end())
                        throw ConfigError("no strategy configured for adversarial agent " +
                                          std::to_string(j));
                    v = it->second.emit(t, i, seed);
                    if (record.full_detail) record.emissions.push_back({t, j, i, v});
                }
                inbox.emplace(j, v);
                if (topo.is_trusted(j)) trusted_values.emplace(j, v);
            }
            FilterOutcome outcome = filter_neighbors(i, states[idx].x, trusted_values, inbox);
            next[idx].x = ordinary_update(outcome, dr);
            if (record.full_detail) {
                record.inbox[idx] = std::move(inbox);
                record.filters.emplace(i, std::move(outcome));
            }
        }

        next[idx].last_reference = record.reference[idx];
        detail::require_finite(next[idx].x, "state of agent " + std::to_string(i), t);
    }
    return next;
}

struct RunOptions {
    int horizon = 100; // states are produced for t = 1..horizon
    std::optional<std::map<AgentId, double>> initial_states; // default: x_i(1) = r_i(0)
    std::uint64_t seed = 0;
    RecordDetail detail = RecordDetail::Full;
};

struct SimulationTrace {
    int horizon = 0;
    int trusted_count = 0;
    int good_count = 0;
    std::vector<double> initial_reference;        // r_i(0)
    std::vector<std::vector<AgentState>> states;  // states[k] = states at t = k+1
    std::vector<RoundRecord> rounds;              // rounds[k] = record of round t = k+1

    const std::vector<AgentState>& states_at(int t) const {
        if (t < 1 || t > horizon) throw std::out_of_range("round index out of trace range");
        return states[static_cast<std::size_t>(t - 1)];
    }
    double x(int t, AgentId id) const { return states_at(t)[static_cast<std::size_t>(id - 1)].x; }
};

inline SimulationTrace run(const NetworkTopology& topo, const SignalBank& bank,
                           const StrategyMap& strategies, const RunOptions& options) {
    const auto report = validate_topology(topo);
    if (!report.ok()) {
        std::string msg = "topology validation failed:";
        for (const auto& f : report.failures()) msg += " [" + f + "]";
        throw ConfigError(msg);
    }
    if (options.horizon < 2) throw ConfigError("horizon must be at least 2");

    const int n = topo.good_count();
    for (AgentId i = 1; i <= n; ++i)
        if (!bank.contains(i)) throw ConfigError("no signal configured for agent " + std::to_string(i));
    for (const auto& [id, spec] : bank.all())
        if (!topo.valid_id(id) || !topo.is_good(id))
            throw ConfigError("signal configured for non-good agent " + std::to_string(id));
    for (AgentId a : topo.agents_with_role(AgentRole::Adversarial))
        if (strategies.find(a) == strategies.end())
            throw ConfigError("no strategy configured for adversarial agent " + std::to_string(a));
    for (const auto& [id, s] : strategies)
        if (!topo.valid_id(id) || !topo.is_adversarial(id))
            throw ConfigError("strategy configured for non-adversarial agent " + std::to_string(id));

    SimulationTrace trace;
    trace.horizon = options.horizon;
    trace.trusted_count = topo.trusted_count();
    trace.good_count = n;

    std::vector<AgentState> current(static_cast<std::size_t>(n));
    trace.initial_reference.resize(static_cast<std::size_t>(n));
    for (AgentId i = 1; i <= n; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i - 1);
        const double r0 = bank.at(i).at(0);
        detail::require_finite(r0, "initial reference of agent " + std::to_string(i), 0);
        trace.initial_reference[idx] = r0;
        current[idx].last_reference = r0;
        current[idx].x = r0;
        if (options.initial_states) {
            auto it = options.initial_states->find(i);
            if (it != options.initial_states->end()) current[idx].x = it->second;
        }
        detail::require_finite(current[idx].x, "initial state of agent " + std::to_string(i), 1);
    }

    trace.states.reserve(static_cast<std::size_t>(options.horizon));
    trace.states.push_back(current);
    if (options.detail == RecordDetail::Full)
        trace.rounds.reserve(static_cast<std::size_t>(options.horizon - 1));

    for (int t = 1; t < options.horizon; ++t) {
        RoundRecord record;
        current = run_round(topo, bank, strategies, current, t, options.seed, record,
                            options.detail);
        trace.states.push_back(current);
        if (options.detail == RecordDetail::Full) trace.rounds.push_back(std::move(record));
    }
    return trace;
}

} // namespace resdac
