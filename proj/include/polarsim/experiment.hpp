#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polarsim/analysis.hpp"
#include "polarsim/core.hpp"
#include "polarsim/dynamics.hpp"
#include "polarsim/errors.hpp"
#include "polarsim/scenarios.hpp"

namespace polarsim {

/// Declarative description of one simulation. Parsed from JSON with keys
/// n, belief_kind, graph_kind, graph_file, update_rule, t_max, epsilon,
/// bins, K, alpha, record_every, out_dir; unknown keys are rejected.
/// belief_kind is a kind name or an explicit array of beliefs; bins is a
/// bin count or a boundary list.
struct ExperimentConfig {
    ScenarioSpec scenario;  // scenario.n == 0 means "resolve from inputs/defaults"
    UpdateRule rule = UpdateRule::confirmation_bias;
    long t_max = -1;  // -1: default 500 for n <= 100, else 2000
    double epsilon = 1e-6;
    std::vector<double> bin_boundaries;  // empty: 5 uniform bins
    double K = 1000.0;
    double alpha = 1.6;
    int record_every = 1;
    std::string out_dir;
    bool emit_svg = false;  // CLI flag, not part of the JSON schema

    Discretization make_bins() const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);

/// Config with n and t_max resolved plus the materialized scenario, ready
/// to run. Throws ConfigError for unresolvable scenarios and
/// ValidationError when the core invariants fail.
struct ResolvedExperiment {
    ExperimentConfig config;
    InfluenceGraph graph;
    BeliefConfig beliefs;
};

ResolvedExperiment resolve_experiment(ExperimentConfig cfg);

/// Canonical JSON echo of a resolved config (all schema keys present).
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct RunResult {
    Trace trace;
    StructureReport structure;
    ConvergenceReport convergence;
    PersistenceReport persistence;
    std::optional<double> consensus_predicted;
    double consensus_observed = 0.0;
    nlohmann::json summary;
    std::filesystem::path trace_path;
    std::filesystem::path summary_path;
};

/// Runs one experiment and writes trace.csv + summary.json (and trace.svg
/// when emit_svg is set) under out_dir. Identical configs produce
/// byte-identical files.
RunResult run_single(const ExperimentConfig& cfg);

/// A grid of belief kinds x graph kinds sharing the remaining parameters.
/// JSON keys: belief_kinds, graph_kinds, n, update_rule, t_max, epsilon,
/// bins, K, alpha, record_every, out_dir.
struct BatchSpec {
    std::vector<BeliefKind> belief_kinds;
    std::vector<GraphKind> graph_kinds;
    int n = 0;
    UpdateRule rule = UpdateRule::confirmation_bias;
    long t_max = -1;
    double epsilon = 1e-6;
    std::vector<double> bin_boundaries;
    double K = 1000.0;
    double alpha = 1.6;
    int record_every = 1;
    std::string out_dir;
};

BatchSpec parse_batch_spec(const nlohmann::json& j);

/// Runs every cell (concurrently; cells are independent) and writes an
/// index.json mapping cells to their files. Rethrows the first failing
/// cell's error, in deterministic cell order, after the index is written.
void run_batch(const BatchSpec& spec);

void gen_graph(const std::string& kind, int n, double strength,
               const std::filesystem::path& out);
void gen_beliefs(const std::string& kind, int n, const std::filesystem::path& out);

// Trace CSV: header "t,b_0,...,b_{n-1},rho", one row per recorded step,
// shortest round-trip decimals.
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);
Trace read_trace_csv(const std::filesystem::path& path);

/// Minimal line chart of beliefs and polarization over time, for quick
/// inspection only.
void write_trace_svg(const Trace& trace, const std::filesystem::path& path);

nlohmann::json structure_to_json(const StructureReport& r);
nlohmann::json convergence_to_json(const ConvergenceReport& r);
nlohmann::json persistence_to_json(const PersistenceReport& r);

}  // namespace polarsim
