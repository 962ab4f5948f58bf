#pragma once

// Trace persistence: CSV files for states / metrics / adversary emissions,
// the key=value bounds report, per-round transition property summaries and
// the tracking plot. Numeric output uses %.17g so identical runs reproduce
// byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "resdac/analysis.hpp"
#include "resdac/config.hpp"
#include "resdac/consensus.hpp"
#include "resdac/svg_plot.hpp"

namespace resdac {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct TraceFiles {
    std::string states_path;
    std::string metrics_path;
    std::string emissions_path;
    std::string bounds_path;
    std::string properties_path;
    std::string matrices_path; // only when emit_matrices
    std::vector<std::string> plot_paths;
};

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

} // namespace detail

// columns: t,agent_id,role,x,r,delta_r,rbar_T,tracking_error
// Row t holds x_i(t); r and delta_r are the reference and increment consumed
// while producing it, i.e. r_i(t-1) and dr_i(t-1) (zero at t = 1 where no
// round has run yet), matching the time base of rbar_T = rbar_T(t-1).
inline void write_states_csv(const std::string& path, const NetworkTopology& topo,
                             const SimulationTrace& trace,
                             const std::vector<RoundMetrics>& metrics) {
    auto out = detail::open_output(path);
    out << "t,agent_id,role,x,r,delta_r,rbar_T,tracking_error\n";
    for (int t = 1; t <= trace.horizon; ++t) {
        const auto& states = trace.states_at(t);
        const RoundMetrics& m = metrics[static_cast<std::size_t>(t - 1)];
        for (AgentId i = 1; i <= trace.good_count; ++i) {
            const std::size_t idx = static_cast<std::size_t>(i - 1);
            const double r_prev = (t == 1) ? trace.initial_reference[idx]
                                           : trace.rounds[static_cast<std::size_t>(t - 2)]
                                                 .reference[idx];
            const double dr_prev =
                (t == 1) ? 0.0
                         : trace.rounds[static_cast<std::size_t>(t - 2)].delta_r[idx];
            out << t << ',' << i << ',' << role_name(topo.role(i)) << ','
                << format_double(states[idx].x) << ',' << format_double(r_prev) << ','
                << format_double(dr_prev) << ',' << format_double(m.rbar_t_prev) << ','
                << format_double(m.tracking_error[idx]) << '\n';
        }
    }
}

inline void write_metrics_csv(const std::string& path, const std::vector<RoundMetrics>& metrics,
                              const BoundReport& bounds) {
    auto out = detail::open_output(path);
    out << "t,y,e,rbar_T,max_tracking_error,omega\n";
    for (const auto& m : metrics) {
        out << m.t << ',' << format_double(m.y) << ',' << format_double(m.e) << ','
            << format_double(m.rbar_t_prev) << ',' << format_double(m.max_tracking_error) << ','
            << format_double(bounds.omega[static_cast<std::size_t>(m.t - 1)]) << '\n';
    }
}

// columns: t,sender,receiver,value (one row per adversarial value read by an
// ordinary agent)
inline void write_emissions_csv(const std::string& path, const SimulationTrace& trace) {
    auto out = detail::open_output(path);
    out << "t,sender,receiver,value\n";
    for (const auto& round : trace.rounds)
        for (const auto& e : round.emissions)
            out << e.t << ',' << e.sender << ',' << e.receiver << ','
                << format_double(e.value) << '\n';
}

// Empirical steady-state tracking error: max over the tail of the run.
inline double max_steady_tracking_error(const std::vector<RoundMetrics>& metrics, int from_t) {
    double worst = 0.0;
    for (const auto& m : metrics)
        if (m.t >= from_t) worst = std::max(worst, m.max_tracking_error);
    return worst;
}

inline void write_bounds_report(std::ostream& out, const BoundReport& bounds,
                                double empirical_steady_error, int steady_from_round) {
    out << "theta=" << format_double(bounds.theta) << '\n';
    out << "alpha=" << format_double(bounds.alpha) << '\n';
    out << "eta=" << format_double(bounds.eta) << '\n';
    out << "epsilon=" << format_double(bounds.epsilon) << '\n';
    out << "omega_inf=" << format_double(bounds.omega_inf) << '\n';
    out << "e1=" << format_double(bounds.e1) << '\n';
    out << "y1=" << format_double(bounds.y1) << '\n';
    out << "envelope_degenerate=" << (bounds.envelope_degenerate ? 1 : 0) << '\n';
    out << "steady_state_from_round=" << steady_from_round << '\n';
    out << "empirical_max_steady_state_tracking_error=" << format_double(empirical_steady_error)
        << '\n';
}

inline void write_properties_csv(const std::string& path,
                                 const std::vector<PropertyReport>& reports) {
    auto out = detail::open_output(path);
    out << "t,a1_row_sum_slack,a2_outside_support,a2_zero_support_arcs,a3_alpha_slack,"
           "b1_column_sum_slack,residual,pass\n";
    int t = 1;
    for (const auto& r : reports) {
        out << t++ << ',' << format_double(r.row_sums.slack) << ','
            << format_double(r.support.slack) << ',' << format_double(r.support_equal.slack)
            << ',' << format_double(r.min_entry.slack) << ','
            << format_double(r.trusted_columns.slack) << ',' << format_double(r.residual.slack)
            << ',' << (r.all_pass() ? 1 : 0) << '\n';
    }
}

inline void write_matrices(const std::string& path, const SimulationTrace& trace,
                           const NetworkTopology& topo) {
    auto out = detail::open_output(path);
    const double alpha = alpha_lower_bound(topo);
    for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
        const auto rec = reconstruct_transition(trace.rounds[k], topo, trace.states[k],
                                                trace.states[k + 1]);
        const auto rep = check_transition_properties(rec, topo, alpha);
        out << "t=" << rec.t << " n=" << rec.n << '\n';
        for (int i = 0; i < rec.n; ++i) {
            for (int j = 0; j < rec.n; ++j)
                out << format_double(rec.at(i, j)) << (j + 1 < rec.n ? ' ' : '\n');
        }
        out << "properties:";
        for (const auto* c : rep.checks())
            out << ' ' << c->name << '=' << (c->pass ? "pass" : "FAIL") << " slack="
                << format_double(c->slack);
        out << "\n\n";
    }
}

inline std::vector<std::string> write_plots(const std::string& dir, const NetworkTopology& topo,
                                            const SimulationTrace& trace,
                                            const std::vector<RoundMetrics>& metrics,
                                            const BoundReport& bounds) {
    std::vector<std::string> paths;
    const char* palette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b",
                             "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    // tracking plot: solid good-agent states, dashed tracked average, dotted
    // adversary injections
    std::vector<PlotSeries> series;
    for (AgentId i = 1; i <= trace.good_count; ++i) {
        PlotSeries s;
        s.label = "x" + std::to_string(i) + " (" + role_name(topo.role(i)) + ")";
        s.color = palette[(i - 1) % 8];
        for (int t = 1; t <= trace.horizon; ++t)
            s.points.emplace_back(t, trace.x(t, i));
        series.push_back(std::move(s));
    }
    {
        PlotSeries avg;
        avg.label = "rbar_T(t-1)";
        avg.color = "#0000cc";
        avg.dash = "8,5";
        avg.width = 2.0;
        for (const auto& m : metrics) avg.points.emplace_back(m.t, m.rbar_t_prev);
        series.push_back(std::move(avg));
    }
    // group adversary emissions by sender; one dotted series per sender when
    // it broadcasts, per (sender, receiver) otherwise
    std::map<AgentId, std::map<AgentId, std::vector<std::pair<double, double>>>> by_sender;
    for (const auto& round : trace.rounds)
        for (const auto& e : round.emissions)
            by_sender[e.sender][e.receiver].emplace_back(e.t, e.value);
    for (const auto& [sender, per_receiver] : by_sender) {
        bool uniform = true;
        const auto& first = per_receiver.begin()->second;
        for (const auto& [recv, pts] : per_receiver)
            if (pts != first) { uniform = false; break; }
        if (uniform) {
            PlotSeries s;
            s.label = "x" + std::to_string(sender) + " (adversarial)";
            s.color = "#cc0000";
            s.dash = "2,4";
            s.points = first;
            series.push_back(std::move(s));
        } else {
            for (const auto& [recv, pts] : per_receiver) {
                PlotSeries s;
                s.label = "x" + std::to_string(sender) + "->" + std::to_string(recv);
                s.color = "#cc0000";
                s.dash = "2,4";
                s.points = pts;
                series.push_back(std::move(s));
            }
        }
    }
    const std::string tracking = dir + "/tracking.svg";
    write_svg_plot(tracking, "good-agent states vs trusted reference average", series, "t", "x");
    paths.push_back(tracking);

    // spread vs envelope
    std::vector<PlotSeries> spread;
    {
        PlotSeries y;
        y.label = "y(t)";
        y.color = "#1f77b4";
        for (const auto& m : metrics) y.points.emplace_back(m.t, m.y);
        spread.push_back(std::move(y));
        PlotSeries w;
        w.label = "omega(t)";
        w.color = "#cc0000";
        w.dash = "8,5";
        for (const auto& m : metrics)
            w.points.emplace_back(m.t, bounds.omega[static_cast<std::size_t>(m.t - 1)]);
        spread.push_back(std::move(w));
    }
    const std::string envelope = dir + "/spread_envelope.svg";
    write_svg_plot(envelope, "state spread vs contraction envelope", spread, "t", "spread");
    paths.push_back(envelope);
    return paths;
}

// Full persistence pass for one finished run.
inline TraceFiles write_trace_files(const RunConfig& cfg, const SimulationTrace& trace) {
    std::filesystem::create_directories(cfg.out_dir);
    TraceFiles files;
    const auto metrics = trace_metrics(trace);
    const auto bounds = compute_bounds(trace, cfg.topology, cfg.signals);

    files.states_path = cfg.out_dir + "/states.csv";
    write_states_csv(files.states_path, cfg.topology, trace, metrics);

    files.metrics_path = cfg.out_dir + "/metrics.csv";
    write_metrics_csv(files.metrics_path, metrics, bounds);

    files.emissions_path = cfg.out_dir + "/emissions.csv";
    write_emissions_csv(files.emissions_path, trace);

    files.bounds_path = cfg.out_dir + "/bounds.txt";
    {
        auto out = detail::open_output(files.bounds_path);
        const int steady_from = trace.horizon / 2 + 1;
        write_bounds_report(out, bounds, max_steady_tracking_error(metrics, steady_from),
                            steady_from);
    }

    files.properties_path = cfg.out_dir + "/properties.csv";
    write_properties_csv(files.properties_path, check_trace_transitions(trace, cfg.topology));

    if (cfg.emit_matrices) {
        files.matrices_path = cfg.out_dir + "/matrices.txt";
        write_matrices(files.matrices_path, trace, cfg.topology);
    }
    if (cfg.emit_plots)
        files.plot_paths = write_plots(cfg.out_dir, cfg.topology, trace, metrics, bounds);
    return files;
}

} // namespace resdac
