// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "resdac/analysis.hpp"
#include "resdac/config.hpp"
#include "resdac/graph.hpp"

#include "generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace resdac;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// floating-point guard applied to the analytically strict y(t) <= omega(t)
constexpr double kEnvelopeSlack = 1e-9;

// steady-state tracking-error bands for the bundled scenarios, pinned from
// the first verified runs (observed 0.1493 and 0.1117); both must stay <= 1.0
constexpr double kScenario1Band = 0.25;
constexpr double kScenario2Band = 0.20;

bool envelope_holds(const SimulationTrace& trace, const NetworkTopology& topo,
                    const SignalBank& bank, int* violations = nullptr) {
    const auto metrics = trace_metrics(trace);
    const auto bounds = compute_bounds(trace, topo, bank);
    int bad = 0;
    for (const auto& m : metrics)
        if (m.y > bounds.omega[static_cast<std::size_t>(m.t - 1)] + kEnvelopeSlack) ++bad;
    if (violations) *violations = bad;
    return bad == 0;
}

void criterion_1_conservation() {
    auto cfg = test_helpers::load_preset("scenario1.json");
    const auto t0 = std::chrono::steady_clock::now();
    auto trace = run(cfg);
    auto metrics = trace_metrics(trace);
    const double elapsed = seconds_since(t0);

    const double e1 = metrics.front().e;
    double drift = 0.0;
    for (const auto& m : metrics) drift = std::max(drift, std::abs(m.e - e1));

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "conservation e(t)=e(1) on scenario 1, max drift %.3g <= 1e-9, %.2f s < 1 s",
                  drift, elapsed);
    report(1, drift <= 1e-9 && elapsed < 1.0, buf);
}

void criterion_2_transition_properties() {
    bool pass = true;
    std::string detail = "per-round W(t) checks:";
    for (const char* preset : {"scenario1.json", "scenario2.json"}) {
        auto cfg = test_helpers::load_preset(preset);
        const auto t0 = std::chrono::steady_clock::now();
        auto trace = run(cfg);
        const double alpha = alpha_lower_bound(cfg.topology);

        int violations = 0;
        double worst_row = 0.0, worst_col = 0.0, worst_residual = 0.0, min_entry = 1.0;
        for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
            auto rec = reconstruct_transition(trace.rounds[k], cfg.topology, trace.states[k],
                                              trace.states[k + 1]);
            auto rep = check_transition_properties(rec, cfg.topology, alpha);
            if (!rep.row_sums.pass || !rep.support.pass || !rep.min_entry.pass ||
                !rep.trusted_columns.pass || !rep.residual.pass)
                ++violations;
            worst_row = std::max(worst_row, rep.row_sums.slack);
            worst_col = std::max(worst_col, rep.trusted_columns.slack);
            worst_residual = std::max(worst_residual, rep.residual.slack);
            min_entry = std::min(min_entry, alpha - rep.min_entry.slack);
        }
        const double elapsed = seconds_since(t0);
        const bool scenario_ok = violations == 0 && elapsed < 5.0;
        pass = pass && scenario_ok;

        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      " %s %d violations, row %.2g, col %.2g, residual %.2g, min entry %.4g"
                      " (alpha %.4g), %.2f s;",
                      preset, violations, worst_row, worst_col, worst_residual, min_entry, alpha,
                      elapsed);
        detail += buf;
    }
    report(2, pass, detail);
}

void criterion_3_envelope() {
    int total_violations = 0;

    for (const char* preset : {"scenario1.json", "scenario2.json"}) {
        auto cfg = test_helpers::load_preset(preset);
        auto trace = run(cfg);
        int v = 0;
        envelope_holds(trace, cfg.topology, cfg.signals, &v);
        total_violations += v;
    }

    std::mt19937 rng(2024);
    for (int k = 0; k < 20; ++k) {
        auto s = test_generators::random_scenario(rng, 12);
        RunOptions opts;
        opts.horizon = 300;
        opts.seed = 1000 + static_cast<std::uint64_t>(k);
        auto trace = resdac::run(s.topo, s.bank, s.strategies, opts);
        int v = 0;
        envelope_holds(trace, s.topo, s.bank, &v);
        total_violations += v;
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "y(t) <= omega(t) on both scenarios and 20 random topologies, %d violations",
                  total_violations);
    report(3, total_violations == 0, buf);
}

// exhaustive connected graphs over n labeled vertices, all trusted
void criterion_4_static_consensus() {
    const auto t0 = std::chrono::steady_clock::now();
    long graphs = 0;
    long converged = 0;
    double worst = 0.0;

    for (int n = 1; n <= 6; ++n) {
        std::vector<std::pair<int, int>> all_pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) all_pairs.emplace_back(i, j);
        const unsigned masks = 1u << all_pairs.size();

        SignalBank bank;
        double sum = 0.0;
        for (int i = 1; i <= n; ++i) {
            bank.assign(i, SignalSpec::constant(0.5 * i));
            sum += 0.5 * i;
        }
        const double avg = sum / n;

        for (unsigned mask = 0; mask < masks; ++mask) {
            // connectivity via union-find
            std::vector<int> parent(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) parent[static_cast<std::size_t>(i)] = i;
            auto find = [&parent](int x) {
                while (parent[static_cast<std::size_t>(x)] != x)
                    x = parent[static_cast<std::size_t>(x)] =
                        parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                return x;
            };
            std::vector<std::pair<AgentId, AgentId>> edges;
            for (std::size_t b = 0; b < all_pairs.size(); ++b)
                if (mask & (1u << b)) {
                    edges.push_back(all_pairs[b]);
                    parent[static_cast<std::size_t>(find(all_pairs[b].first))] =
                        find(all_pairs[b].second);
                }
            bool connected = true;
            for (int i = 2; i <= n; ++i)
                if (find(i) != find(1)) connected = false;
            if (!connected) continue;

            ++graphs;
            auto topo = test_helpers::make_topology(n, 0, 0, edges);
            RunOptions opts;
            opts.horizon = 500;
            opts.detail = RecordDetail::StatesOnly;
            auto trace = resdac::run(topo, bank, {}, opts);

            double err = 0.0;
            for (AgentId i = 1; i <= n; ++i)
                err = std::max(err, std::abs(trace.x(500, i) - avg));
            worst = std::max(worst, err);
            if (err <= 1e-9) ++converged;
        }
    }

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "static consensus: %ld/%ld connected all-trusted graphs (n <= 6) within 1e-9 of"
                  " the exact average by round 500 (worst %.3g), %.1f s",
                  converged, graphs, worst, seconds_since(t0));
    report(4, converged == graphs, buf);
}

void scenario_tracking_criterion(int number, const char* preset, double band) {
    auto cfg = test_helpers::load_preset(preset);
    auto trace = run(cfg);
    auto metrics = trace_metrics(trace);
    auto bounds = compute_bounds(trace, cfg.topology, cfg.signals);

    double steady_err = 0.0;
    for (const auto& m : metrics)
        if (m.t > 200) steady_err = std::max(steady_err, m.max_tracking_error);
    int envelope_violations = 0;
    envelope_holds(trace, cfg.topology, cfg.signals, &envelope_violations);

    const bool pass = steady_err <= band && band <= 1.0 && steady_err < bounds.epsilon &&
                      envelope_violations == 0;

    char buf[220];
    std::snprintf(buf, sizeof(buf),
                  "%s tracking: steady error %.4g <= band %.2g <= 1.0, below epsilon %.3g,"
                  " envelope violations %d",
                  preset, steady_err, band, bounds.epsilon, envelope_violations);

    if (number == 5) {
        report(number, pass, buf);
        return;
    }

    // criterion 6 additionally swaps every adversary for a per-neighbor
    // Byzantine schedule with distinct +-1e6 constants and requires the
    // trusted trajectories to be untouched
    auto byz = cfg;
    byz.adversaries.clear();
    for (AgentId a : cfg.topology.agents_with_role(AgentRole::Adversarial)) {
        std::map<AgentId, SignalSpec> targets;
        int k = 0;
        for (AgentId nb : cfg.topology.neighbors(a))
            if (cfg.topology.is_ordinary(nb)) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                targets.emplace(nb, SignalSpec::constant(sign * (1e6 + k)));
                ++k;
            }
        byz.adversaries.emplace(a, AdversaryStrategy::per_neighbor(std::move(targets)));
    }
    auto byz_trace = run(byz);

    bool trusted_identical = true;
    for (int t = 1; t <= trace.horizon; ++t)
        for (AgentId i = 1; i <= cfg.topology.trusted_count(); ++i)
            if (trace.x(t, i) != byz_trace.x(t, i)) trusted_identical = false;
    int byz_envelope_violations = 0;
    envelope_holds(byz_trace, cfg.topology, cfg.signals, &byz_envelope_violations);

    char buf2[320];
    std::snprintf(buf2, sizeof(buf2),
                  "%s Byzantine swap: trusted trajectories %s, envelope violations %d",
                  preset, trusted_identical ? "bit-identical" : "DIVERGED",
                  byz_envelope_violations);
    report(number, pass && trusted_identical && byz_envelope_violations == 0,
           std::string(buf) + "; " + buf2);
}

void criterion_7_cds_oracle() {
    std::mt19937 rng(4242);
    long checks = 0;
    long disagreements = 0;
    for (int g = 0; g < 50; ++g) {
        const int n = std::uniform_int_distribution<int>(1, 8)(rng);
        std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.1, 0.7)(rng));
        std::vector<std::pair<AgentId, AgentId>> edges;
        for (AgentId i = 1; i <= n; ++i)
            for (AgentId j = i + 1; j <= n; ++j)
                if (edge(rng)) edges.emplace_back(i, j);
        auto topo = test_helpers::make_topology(n, 0, 0, edges);

        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::set<AgentId> candidate;
            for (int b = 0; b < n; ++b)
                if (mask & (1u << b)) candidate.insert(b + 1);
            ++checks;
            if (is_connected_dominating_set(topo, candidate) !=
                test_oracles::cds_brute_force(topo, candidate))
                ++disagreements;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "CDS decision vs brute force on every subset of 50 random graphs:"
                  " %ld checks, %ld disagreements",
                  checks, disagreements);
    report(7, disagreements == 0, buf);
}

void criterion_8_bound_spot_checks() {
    const double eps = epsilon_bound(3, 0.1, 1.0 / 3.0, 0.0, 0.0);
    const bool a = std::abs(eps - 48.8) <= 1e-9;
    const bool b = epsilon_bound(4, 0.0, 0.5, 1.0, 1.0) == 0.0;
    const double w_inf = omega_infinity(3, 0.1, 1.0 / 3.0);
    const double w_far = omega_envelope(1000000, 3, 0.1, 1.0 / 3.0, 5.0);
    const bool c = std::abs(w_far - w_inf) <= 1e-9;

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "bound formulas: epsilon(3,0.1,1/3)=%.12g (48.8), zero-theta epsilon %s,"
                  " |omega(1e6)-omega_inf|=%.2g",
                  eps, b ? "0" : "nonzero", std::abs(w_far - w_inf));
    report(8, a && b && c, buf);
}

} // namespace

int main() {
    try {
        criterion_1_conservation();
        criterion_2_transition_properties();
        criterion_3_envelope();
        criterion_4_static_consensus();
        scenario_tracking_criterion(5, "scenario1.json", kScenario1Band);
        scenario_tracking_criterion(6, "scenario2.json", kScenario2Band);
        criterion_7_cds_oracle();
        criterion_8_bound_spot_checks();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance suite aborted: %s\n", e.what());
        return 1;
    }
    if (g_failures == 0) std::printf("all acceptance criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
