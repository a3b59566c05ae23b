#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphsim/graph.hpp"
#include "graphsim/kernels.hpp"
#include "graphsim/sampling.hpp"

namespace graphsim {

/// End-to-end sweep configuration. Parsed from a key=value config file
/// (see README for the grammar) with command-line overrides.
struct ExperimentConfig {
    // graph
    std::string graph_kind = "cycle";  // path | cycle | grid | complete | erdos_renyi
    int m = 100;
    int grid_a = 0, grid_b = 0;
    double er_prob = 0.1;
    std::uint64_t er_seed = 1;

    // target kernel: (eigenindex, weight) over W's basis, 0-based
    std::vector<std::pair<int, double>> kernel_modes = {{1, 1.0}};
    double scale_to = 0.9;

    // smoothing operator
    double d = 1.0;
    double p = 1.0;
    bool rate_normalize_d = false;  // d = (m / 2 pi)^{2p}, so lambda_k ~ k^{2p}

    std::vector<int> n_grid = {500, 1000, 2000, 4000, 8000, 16000};
    int trials = 20;
    double t = 2.3026;
    double zeta = 1.0;
    double beta = 1.0;
    int s_override = 0;  // 0: pick s via the rate formula
    int max_iters = 5000;
    std::uint64_t master_seed = 1;
};

struct CellRecord {
    int n = 0;
    int trial = 0;
    std::string arm;  // "dual" | "baseline"
    double error_l2 = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    double epsilon = 0.0;
    double epsbar = 0.0;
    std::uint64_t dataset_hash = 0;
};

struct ArmAggregate {
    int n = 0;
    std::string arm;
    double median_error = 0.0;
    double mean_error = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<CellRecord> records;   // ordered by (n, trial, arm)
    std::vector<ArmAggregate> aggregates;
    double slope_dual = 0.0;
    double slope_baseline = 0.0;
    std::vector<std::pair<int, double>> theorem_bound;  // per n
    std::vector<std::pair<int, double>> klt_bound;      // per n
    int chosen_s = 0;
    double nu_weak = 0.0;
    int rank = 0;
};

Graph build_graph(const ExperimentConfig& cfg);

/// Both arms run on identical datasets per (n, trial); cells parallelize
/// across threads (GRAPHSIM_THREADS, default hardware concurrency) with a
/// deterministic merge.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::string report_to_json(const ExperimentReport& rep);
std::string report_to_csv(const ExperimentReport& rep);

/// Plot-ready projection: n, arm, median_error, q25, q75, bound_value.
std::string emit_plot_data(const ExperimentReport& rep);

ExperimentConfig parse_config_file(const std::string& path);

std::uint64_t dataset_hash(const std::vector<Observation>& triples);

}  // namespace graphsim
