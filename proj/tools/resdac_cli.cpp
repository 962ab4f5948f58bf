// resdac — simulate and analyze resilient dynamic average consensus runs.
//
//   resdac validate --config cfg.json
//   resdac run      --config cfg.json [--out dir] [--horizon n] [--seed n]
//                   [--emit-matrices] [--no-plots]
//   resdac bounds   --config cfg.json [--horizon n] [--seed n]

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "resdac/analysis.hpp"
#include "resdac/config.hpp"
#include "resdac/trace_io.hpp"

namespace {

struct Overrides {
    std::string out_dir;
    int horizon = -1;
    std::int64_t seed = -1;
    bool emit_matrices = false;
    bool no_plots = false;
};

void apply(resdac::RunConfig& cfg, const Overrides& o) {
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.horizon >= 0) cfg.horizon = o.horizon;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (o.emit_matrices) cfg.emit_matrices = true;
    if (o.no_plots) cfg.emit_plots = false;
}

int cmd_validate(const std::string& config_path) {
    const auto result = resdac::check_config_file(config_path);
    if (!result.topology_report.checks.empty()) {
        std::cout << "topology checks:\n";
        for (const auto& c : result.topology_report.checks) {
            std::cout << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
            if (!c.detail.empty()) std::cout << ": " << c.detail;
            std::cout << "\n";
        }
    }
    if (!result.errors.empty()) {
        std::cout << "config errors:\n";
        for (const auto& e : result.errors) std::cout << "  [FAIL] " << e << "\n";
    }
    std::cout << "result: " << (result.ok() ? "VALID" : "INVALID") << "\n";
    return result.ok() ? 0 : 1;
}

int cmd_run(const std::string& config_path, const Overrides& overrides) {
    resdac::RunConfig cfg = resdac::load_config(config_path);
    apply(cfg, overrides);
    const auto trace = resdac::run(cfg);
    const auto files = resdac::write_trace_files(cfg, trace);
    std::cout << "simulated " << trace.horizon - 1 << " rounds over "
              << cfg.topology.agent_count() << " agents (" << trace.good_count << " good)\n";
    std::cout << "states:     " << files.states_path << "\n";
    std::cout << "metrics:    " << files.metrics_path << "\n";
    std::cout << "emissions:  " << files.emissions_path << "\n";
    std::cout << "bounds:     " << files.bounds_path << "\n";
    std::cout << "properties: " << files.properties_path << "\n";
    if (!files.matrices_path.empty()) std::cout << "matrices:   " << files.matrices_path << "\n";
    for (const auto& p : files.plot_paths) std::cout << "plot:       " << p << "\n";
    return 0;
}

int cmd_bounds(const std::string& config_path, const Overrides& overrides) {
    resdac::RunConfig cfg = resdac::load_config(config_path);
    apply(cfg, overrides);
    const auto trace = resdac::run(cfg);
    const auto metrics = resdac::trace_metrics(trace);
    const auto bounds = resdac::compute_bounds(trace, cfg.topology, cfg.signals);
    const int steady_from = trace.horizon / 2 + 1;
    resdac::write_bounds_report(std::cout, bounds,
                                resdac::max_steady_tracking_error(metrics, steady_from),
                                steady_from);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resilient dynamic average consensus simulator"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;

    auto* validate = app.add_subcommand("validate", "check a config against every assumption");
    validate->add_option("--config", config_path, "config file")->required();

    auto* run = app.add_subcommand("run", "simulate and write trace files");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", overrides.out_dir, "output directory override");
    run->add_option("--horizon", overrides.horizon, "horizon override");
    run->add_option("--seed", overrides.seed, "seed override");
    run->add_flag("--emit-matrices", overrides.emit_matrices,
                  "write the reconstructed transition matrix of every round");
    run->add_flag("--no-plots", overrides.no_plots, "skip SVG plot emission");

    auto* bounds = app.add_subcommand("bounds", "print the tracking bound report");
    bounds->add_option("--config", config_path, "config file")->required();
    bounds->add_option("--horizon", overrides.horizon, "horizon override");
    bounds->add_option("--seed", overrides.seed, "seed override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (run->parsed()) return cmd_run(config_path, overrides);
        if (bounds->parsed()) return cmd_bounds(config_path, overrides);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
