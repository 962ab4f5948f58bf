#pragma once

// Emission schedules for compromised agents. An adversary ignores the update
// law entirely and places values on the wire per round; Byzantine schedules
// may send a different value to every neighbour.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>

#include "resdac/errors.hpp"
#include "resdac/graph.hpp"
#include "resdac/signals.hpp"

namespace resdac {

namespace detail {

// splitmix64 finalizer; counter-based so emissions are pure functions of
// (seed, round, target) and independent of query order.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53; // [0, 1)
}

} // namespace detail

class AdversaryStrategy {
public:
    // same value to every neighbour (malicious)
    struct Broadcast {
        SignalSpec series;
    };
    // per-target series (Byzantine)
    struct PerNeighbor {
        std::map<AgentId, SignalSpec> targets;
    };
    // broadcast series plus a seeded per-(round,target) perturbation
    struct NoisyBroadcast {
        SignalSpec series;
        double amplitude = 0.0;
        std::uint64_t seed = 0;
    };
    using Variant = std::variant<Broadcast, PerNeighbor, NoisyBroadcast>;

    AdversaryStrategy() : spec_(Broadcast{SignalSpec::constant(0.0)}) {}
    explicit AdversaryStrategy(Variant v) : spec_(std::move(v)) {}

    static AdversaryStrategy broadcast(SignalSpec series) {
        return AdversaryStrategy(Broadcast{std::move(series)});
    }
    static AdversaryStrategy per_neighbor(std::map<AgentId, SignalSpec> targets) {
        return AdversaryStrategy(PerNeighbor{std::move(targets)});
    }
    static AdversaryStrategy noisy_broadcast(SignalSpec series, double amplitude,
                                             std::uint64_t seed) {
        return AdversaryStrategy(NoisyBroadcast{std::move(series), amplitude, seed});
    }

    // Value placed on the wire toward `target` at round t. Deterministic
    // given (strategy, t, target, run_seed).
    double emit(int t, AgentId target, std::uint64_t run_seed = 0) const {
        return std::visit(
            [&](const auto& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Broadcast>) {
                    return s.series.at(t);
                } else if constexpr (std::is_same_v<T, PerNeighbor>) {
                    auto it = s.targets.find(target);
                    if (it == s.targets.end())
                        throw ConfigError("per-neighbor strategy has no series for target agent " +
                                          std::to_string(target));
                    return it->second.at(t);
                } else {
                    std::uint64_t h = detail::mix64(s.seed ^ detail::mix64(run_seed));
                    h = detail::mix64(h ^ static_cast<std::uint64_t>(t));
                    h = detail::mix64(h ^ static_cast<std::uint64_t>(target));
                    const double noise = s.amplitude * (2.0 * detail::unit_double(h) - 1.0);
                    return s.series.at(t) + noise;
                }
            },
            spec_);
    }

    const Variant& spec() const { return spec_; }

private:
    Variant spec_;
};

using StrategyMap = std::map<AgentId, AdversaryStrategy>;

} // namespace resdac
