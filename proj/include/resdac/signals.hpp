#pragma once

// Reference signals r_i(t) of the good agents, their first differences and
// the spread bound theta that the tracking guarantee depends on.

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "resdac/graph.hpp"

namespace resdac {

// A reference signal sampled at integer rounds t >= 0.
class SignalSpec {
public:
    struct Constant {
        double value = 0.0;
    };
    struct Ramp {
        double offset = 0.0;
        double slope = 0.0;
    };
    // offset + slope*t + amplitude*sin(angular_freq*t)
    struct SinusoidRamp {
        double offset = 0.0;
        double slope = 0.0;
        double amplitude = 0.0;
        double angular_freq = 0.0;
    };
    struct Tabulated {
        std::vector<double> values; // index = round, starting at t = 0
    };
    using Variant = std::variant<Constant, Ramp, SinusoidRamp, Tabulated>;

    SignalSpec() : spec_(Constant{0.0}) {}
    explicit SignalSpec(Variant v) : spec_(std::move(v)) {}

    static SignalSpec constant(double value) { return SignalSpec(Constant{value}); }
    static SignalSpec ramp(double offset, double slope) { return SignalSpec(Ramp{offset, slope}); }
    static SignalSpec sinusoid_ramp(double offset, double slope, double amplitude,
                                    double angular_freq) {
        return SignalSpec(SinusoidRamp{offset, slope, amplitude, angular_freq});
    }
    static SignalSpec tabulated(std::vector<double> values) {
        return SignalSpec(Tabulated{std::move(values)});
    }

    // r(t)
    double at(int t) const {
        if (t < 0) throw std::out_of_range("signal queried at negative round " + std::to_string(t));
        return std::visit(
            [t](const auto& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Constant>) {
                    return s.value;
                } else if constexpr (std::is_same_v<T, Ramp>) {
                    return s.offset + s.slope * t;
                } else if constexpr (std::is_same_v<T, SinusoidRamp>) {
                    return s.offset + s.slope * t + s.amplitude * std::sin(s.angular_freq * t);
                } else {
                    if (static_cast<std::size_t>(t) >= s.values.size())
                        throw std::out_of_range("tabulated series with " +
                                                std::to_string(s.values.size()) +
                                                " samples queried at round " + std::to_string(t));
                    return s.values[static_cast<std::size_t>(t)];
                }
            },
            spec_);
    }

    // r(t) - r(t-1); the run starts at t = 1 with r(0) given, so t = 0 has
    // no defined difference.
    double first_difference(int t) const {
        if (t < 1)
            throw std::out_of_range("first difference undefined at round " + std::to_string(t));
        return at(t) - at(t - 1);
    }

    const Variant& spec() const { return spec_; }

private:
    Variant spec_;
};

// Per-good-agent signal assignment. Adversarial agents carry strategies
// instead, so they never appear here.
class SignalBank {
public:
    SignalBank() = default;

    void assign(AgentId id, SignalSpec spec) { specs_.insert_or_assign(id, std::move(spec)); }

    bool contains(AgentId id) const { return specs_.count(id) != 0; }
    bool empty() const { return specs_.empty(); }
    std::size_t size() const { return specs_.size(); }

    const SignalSpec& at(AgentId id) const {
        auto it = specs_.find(id);
        if (it == specs_.end())
            throw ConfigError("no signal configured for agent " + std::to_string(id));
        return it->second;
    }

    const std::map<AgentId, SignalSpec>& all() const { return specs_; }

private:
    std::map<AgentId, SignalSpec> specs_;
};

// DeltaR(t) = max_i dr_i(t) - min_i dr_i(t) over the bank.
inline double delta_spread(const SignalBank& bank, int t) {
    if (bank.empty()) throw std::invalid_argument("delta_spread over an empty signal bank");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& [id, spec] : bank.all()) {
        const double d = spec.first_difference(t);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi - lo;
}

// Empirical spread bound: max over t in [1, horizon] of delta_spread.
inline double theta_estimate(const SignalBank& bank, int horizon) {
    if (horizon < 1) throw std::invalid_argument("theta_estimate needs horizon >= 1");
    double theta = 0.0;
    for (int t = 1; t <= horizon; ++t) theta = std::max(theta, delta_spread(bank, t));
    return theta;
}

} // namespace resdac
