#pragma once

// Observer-side analysis of a finished run: reconstructs the equivalent
// per-round transition matrix W(t) over the good agents, checks its
// structural properties, and evaluates the closed-form tracking bound and
// contraction envelope against the empirical trace. The protocol itself
// never forms these matrices; agents act locally.

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "resdac/consensus.hpp"
#include "resdac/graph.hpp"
#include "resdac/signals.hpp"

namespace resdac {

// Reconstructed N x N transition matrix of one round (good agents only,
// trusted block leading, 0-based storage for agent ids 1..N).
struct TransitionRecord {
    int t = 0;
    int n = 0;
    std::vector<double> w; // row-major
    double residual = 0.0; // max over rows of |[W x(t) + dr(t) - x(t+1)]_i|

    double at(int row, int col) const { return w[static_cast<std::size_t>(row * n + col)]; }
    double& at(int row, int col) { return w[static_cast<std::size_t>(row * n + col)]; }
};

// Rebuild W(t) from the round record. Trusted rows carry the explicit update
// weights. Ordinary rows start uniform over the accepted set; every accepted
// value from outside T_i and self is then written as
//   v = lambda * x_max + (1 - lambda) * x_min
// over the trusted-or-self extremes and its mass is moved onto the lowest-id
// agents attaining the max (j_a) and min (j_b). The resulting row lives on
// the good-subgraph arcs plus the self-loop.
inline TransitionRecord reconstruct_transition(const RoundRecord& record,
                                               const NetworkTopology& topo,
                                               const std::vector<AgentState>& states_before,
                                               const std::vector<AgentState>& states_after) {
    if (!record.full_detail)
        throw std::invalid_argument(
            "transition reconstruction needs a round recorded with full detail");
    const int n = topo.good_count();
    const int m_t = topo.trusted_count();
    if (static_cast<int>(states_before.size()) != n || static_cast<int>(states_after.size()) != n)
        throw std::invalid_argument("state vector size does not match the good agent count");

    TransitionRecord out;
    out.t = record.t;
    out.n = n;
    out.w.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);

    for (AgentId i = 1; i <= n; ++i) {
        const int row = i - 1;
        if (topo.is_trusted(i)) {
            const auto& trusted = topo.trusted_neighbors(i);
            for (AgentId j : trusted) out.at(row, j - 1) = 1.0 / static_cast<double>(m_t);
            out.at(row, row) =
                1.0 - static_cast<double>(trusted.size()) / static_cast<double>(m_t);
            continue;
        }

        auto fit = record.filters.find(i);
        if (fit == record.filters.end())
            throw std::invalid_argument("round record has no filter outcome for ordinary agent " +
                                        std::to_string(i));
        const FilterOutcome& f = fit->second;
        const double cell = 1.0 / static_cast<double>(f.accepted.size());

        // insiders: trusted neighbours and self, always accepted
        std::vector<AgentId> insiders = topo.trusted_neighbors(i);
        insiders.push_back(i);
        std::sort(insiders.begin(), insiders.end());

        AgentId j_a = 0, j_b = 0; // lowest-id agents attaining the extremes
        for (AgentId j : insiders) {
            const double v = f.accepted_values.at(j);
            if (j_a == 0 && v == f.x_max) j_a = j;
            if (j_b == 0 && v == f.x_min) j_b = j;
        }
        if (j_a == 0 || j_b == 0)
            throw std::logic_error("filter extremes not attained by any trusted-or-self agent");

        for (AgentId j : insiders) out.at(row, j - 1) = cell;

        for (AgentId k : f.accepted) {
            if (std::binary_search(insiders.begin(), insiders.end(), k)) continue;
            const double v = f.accepted_values.at(k);
            double lambda = 0.0;
            if (f.x_max > f.x_min) {
                lambda = (v - f.x_min) / (f.x_max - f.x_min);
            } else if (v != f.x_min) {
                throw std::logic_error("degenerate filter interval with a distinct outsider value");
            }
            out.at(row, j_a - 1) += lambda * cell;
            out.at(row, j_b - 1) += (1.0 - lambda) * cell;
        }
    }

    for (int row = 0; row < n; ++row) {
        double acc = 0.0;
        for (int col = 0; col < n; ++col)
            acc += out.at(row, col) * states_before[static_cast<std::size_t>(col)].x;
        acc += record.delta_r[static_cast<std::size_t>(row)];
        out.residual =
            std::max(out.residual, std::abs(acc - states_after[static_cast<std::size_t>(row)].x));
    }
    return out;
}

struct PropertyCheck {
    std::string name;
    bool pass = false;
    double slack = 0.0; // measured deviation in the check's natural units
};

struct PropertyReport {
    PropertyCheck row_sums;        // slack = max |row sum - 1|
    PropertyCheck support;         // slack = max |entry| outside E_G and self-loops
    PropertyCheck support_equal;   // slack = count of allowed arcs carrying a zero entry
    PropertyCheck min_entry;       // slack = alpha - min nonzero entry (<= tol to pass)
    PropertyCheck trusted_columns; // slack = max |trusted-block column sum - 1|
    PropertyCheck residual;        // slack = reconstruction residual

    bool all_pass() const {
        return row_sums.pass && support.pass && support_equal.pass && min_entry.pass &&
               trusted_columns.pass && residual.pass;
    }
    std::vector<const PropertyCheck*> checks() const {
        return {&row_sums, &support, &support_equal, &min_entry, &trusted_columns, &residual};
    }
};

// 1e-12 for single-round algebraic identities, 1e-9 for quantities that
// accumulate floating error across a run.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kResidualTol = 1e-9;

inline PropertyReport check_transition_properties(const TransitionRecord& record,
                                                  const NetworkTopology& topo, double alpha,
                                                  double algebraic_tol = kAlgebraicTol,
                                                  double residual_tol = kResidualTol) {
    const int n = record.n;
    const GoodSubgraph good = good_subgraph(topo);
    PropertyReport rep;

    double worst_row = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += record.at(i, j);
        worst_row = std::max(worst_row, std::abs(acc - 1.0));
    }
    rep.row_sums = {"A1-row-stochastic", worst_row <= algebraic_tol, worst_row};

    double outside = 0.0;
    int missing = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const bool allowed = (i == j) || good.has_arc(j + 1, i + 1);
            const double v = record.at(i, j);
            if (!allowed) outside = std::max(outside, std::abs(v));
            if (allowed && v == 0.0) ++missing;
        }
    }
    rep.support = {"A2-support-subset", outside == 0.0, outside};
    rep.support_equal = {"A2-support-equal", missing == 0, static_cast<double>(missing)};

    double min_nonzero = 1.0;
    for (double v : record.w)
        if (v != 0.0) min_nonzero = std::min(min_nonzero, v);
    const double alpha_slack = alpha - min_nonzero;
    rep.min_entry = {"A3-min-weight", alpha_slack <= algebraic_tol, alpha_slack};

    const int m_t = topo.trusted_count();
    double worst_col = 0.0;
    for (int j = 0; j < m_t; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m_t; ++i) acc += record.at(i, j);
        worst_col = std::max(worst_col, std::abs(acc - 1.0));
    }
    rep.trusted_columns = {"B1-doubly-stochastic-block", worst_col <= algebraic_tol, worst_col};

    rep.residual = {"reconstruction-residual", record.residual <= residual_tol, record.residual};
    return rep;
}

// eta = alpha^(N(N+1)/2 - 1), the per-sweep contraction rate.
inline double contraction_rate(int n, double alpha) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("alpha must lie in (0, 1]");
    return std::pow(alpha, 0.5 * n * (n + 1) - 1.0);
}

// Asymptotic tracking bound:
//   epsilon = theta (N-1) (1 + alpha^(-N(N+1)/2 + 1)) + |xbar_T(1) - rbar_T(0)|
inline double epsilon_bound(int n, double theta, double alpha, double xbar_t1, double rbar_t0) {
    if (n < 1) throw std::invalid_argument("epsilon bound needs N >= 1");
    if (theta < 0.0) throw std::invalid_argument("theta must be nonnegative");
    if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    const double growth = std::pow(alpha, -0.5 * n * (n + 1) + 1.0);
    return theta * (n - 1) * (1.0 + growth) + std::abs(xbar_t1 - rbar_t0);
}

// Spread envelope from the contraction argument:
//   omega(t) = (1-eta)^(t/(N-1) - 1) y(1) + theta (N-1) (1 + (1-(1-eta)^t)/eta)
// Degenerate for N = 1 (single good agent, spread identically zero).
inline double omega_envelope(int t, int n, double theta, double alpha, double y1) {
    if (t < 1) throw std::invalid_argument("envelope defined for t >= 1");
    if (y1 < 0.0) throw std::invalid_argument("initial spread must be nonnegative");
    if (n == 1) return 0.0;
    if (n < 1) throw std::invalid_argument("envelope needs N >= 1");
    const double eta = contraction_rate(n, alpha);
    const double decay = std::pow(1.0 - eta, static_cast<double>(t) / (n - 1) - 1.0);
    const double geo = (1.0 - std::pow(1.0 - eta, static_cast<double>(t))) / eta;
    return decay * y1 + theta * (n - 1) * (1.0 + geo);
}

// omega(t) as t -> infinity.
inline double omega_infinity(int n, double theta, double alpha) {
    if (n == 1) return 0.0;
    return theta * (n - 1) * (1.0 + std::pow(alpha, -0.5 * n * (n + 1) + 1.0));
}

struct RoundMetrics {
    int t = 0;
    double y = 0.0;           // max - min over good states at t
    double e = 0.0;           // xbar_T(t) - rbar_T(t-1)
    double rbar_t_prev = 0.0; // rbar_T(t-1), the tracked value
    double max_tracking_error = 0.0;
    std::vector<double> tracking_error; // |x_i(t) - rbar_T(t-1)| per good agent
};

// Per-round spread, conservation offset and tracking errors. Needs a trace
// with round records (references are read from them).
inline std::vector<RoundMetrics> trace_metrics(const SimulationTrace& trace) {
    if (trace.states.empty()) throw std::invalid_argument("empty trace");
    if (trace.horizon > 1 && trace.rounds.empty())
        throw std::invalid_argument("trace was recorded without round details");
    const int n = trace.good_count;
    const int m_t = trace.trusted_count;

    std::vector<RoundMetrics> out;
    out.reserve(static_cast<std::size_t>(trace.horizon));
    for (int t = 1; t <= trace.horizon; ++t) {
        RoundMetrics m;
        m.t = t;

        const std::vector<double>& ref_prev =
            (t == 1) ? trace.initial_reference
                     : trace.rounds[static_cast<std::size_t>(t - 2)].reference;
        double rbar = 0.0;
        for (int i = 0; i < m_t; ++i) rbar += ref_prev[static_cast<std::size_t>(i)];
        rbar /= static_cast<double>(m_t);
        m.rbar_t_prev = rbar;

        const auto& states = trace.states_at(t);
        double lo = states[0].x, hi = states[0].x, xbar_t = 0.0;
        m.tracking_error.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double x = states[static_cast<std::size_t>(i)].x;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            if (i < m_t) xbar_t += x;
            const double err = std::abs(x - rbar);
            m.tracking_error[static_cast<std::size_t>(i)] = err;
            m.max_tracking_error = std::max(m.max_tracking_error, err);
        }
        m.y = hi - lo;
        m.e = xbar_t / static_cast<double>(m_t) - rbar;
        out.push_back(std::move(m));
    }
    return out;
}

struct BoundReport {
    double theta = 0.0;
    double alpha = 0.0;
    double eta = 0.0;
    double epsilon = 0.0;
    double omega_inf = 0.0;
    double e1 = 0.0; // conservation constant xbar_T(1) - rbar_T(0)
    double y1 = 0.0;
    bool envelope_degenerate = false;
    std::vector<double> omega; // omega[k] = omega(t = k+1)
};

// theta is measured over the differences the run actually consumed
// (t = 1..horizon-1); the report states the value used.
inline BoundReport compute_bounds(const SimulationTrace& trace, const NetworkTopology& topo,
                                  const SignalBank& bank) {
    BoundReport rep;
    const int n = topo.good_count();
    const int m_t = topo.trusted_count();
    rep.alpha = alpha_lower_bound(topo);
    rep.theta = theta_estimate(bank, std::max(1, trace.horizon - 1));
    rep.envelope_degenerate = (n == 1);
    rep.eta = (n == 1) ? 1.0 : contraction_rate(n, rep.alpha);

    double xbar_t1 = 0.0, rbar_t0 = 0.0;
    const auto& first = trace.states_at(1);
    for (int i = 0; i < m_t; ++i) {
        xbar_t1 += first[static_cast<std::size_t>(i)].x;
        rbar_t0 += trace.initial_reference[static_cast<std::size_t>(i)];
    }
    xbar_t1 /= static_cast<double>(m_t);
    rbar_t0 /= static_cast<double>(m_t);
    rep.e1 = xbar_t1 - rbar_t0;

    double lo = first[0].x, hi = first[0].x;
    for (const auto& s : first) {
        lo = std::min(lo, s.x);
        hi = std::max(hi, s.x);
    }
    rep.y1 = hi - lo;

    rep.epsilon = epsilon_bound(n, rep.theta, rep.alpha, xbar_t1, rbar_t0);
    rep.omega_inf = omega_infinity(n, rep.theta, rep.alpha);
    rep.omega.reserve(static_cast<std::size_t>(trace.horizon));
    for (int t = 1; t <= trace.horizon; ++t)
        rep.omega.push_back(omega_envelope(t, n, rep.theta, rep.alpha, rep.y1));
    return rep;
}

// Convenience sweep: reconstruct and check every recorded round.
inline std::vector<PropertyReport> check_trace_transitions(const SimulationTrace& trace,
                                                           const NetworkTopology& topo) {
    const double alpha = alpha_lower_bound(topo);
    std::vector<PropertyReport> out;
    out.reserve(trace.rounds.size());
    for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
        const auto rec = reconstruct_transition(trace.rounds[k], topo, trace.states[k],
                                                trace.states[k + 1]);
        out.push_back(check_transition_properties(rec, topo, alpha));
    }
    return out;
}

} // namespace resdac
