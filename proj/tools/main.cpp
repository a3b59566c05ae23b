#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphsim/bounds.hpp"
#include "graphsim/estimator.hpp"
#include "graphsim/experiment.hpp"
#include "graphsim/io.hpp"
#include "graphsim/kernels.hpp"
#include "graphsim/sampling.hpp"

using namespace graphsim;

namespace {

std::vector<std::pair<int, double>> parse_modes(const std::string& spec) {
    std::vector<std::pair<int, double>> modes;
    std::istringstream ms(spec);
    std::string item;
    while (std::getline(ms, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--modes", "expected comma-separated index:weight pairs");
        modes.emplace_back(std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    }
    return modes;
}

SmoothingOperator smoothing_from_graph(const std::string& graph_path, double d, double p,
                                       bool rate_normalize) {
    const Graph g = load_graph(graph_path);
    if (rate_normalize) d = std::pow(g.m / (2.0 * std::numbers::pi), 2.0 * p);
    return make_smoothing(laplacian(g), d, p);
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphsim: low-rank graph-smooth similarity estimation toolkit"};
    app.require_subcommand(1);

    // --- gen-graph ---
    auto* gen = app.add_subcommand("gen-graph", "Generate a graph file");
    std::string g_kind = "cycle", g_out = "g.txt";
    int g_m = 100, g_a = 0, g_b = 0;
    double g_prob = 0.1;
    std::uint64_t g_seed = 1;
    gen->add_option("--kind", g_kind, "path|cycle|grid|complete|erdos_renyi")->required();
    gen->add_option("--m", g_m, "vertex count");
    gen->add_option("--a", g_a, "grid rows");
    gen->add_option("--b", g_b, "grid cols");
    gen->add_option("--prob", g_prob, "edge probability (erdos_renyi)");
    gen->add_option("--seed", g_seed, "PRNG seed (erdos_renyi)");
    gen->add_option("--out", g_out, "output path")->required();
    gen->callback([&] {
        ExperimentConfig c;
        c.graph_kind = g_kind;
        c.m = g_m;
        c.grid_a = g_a;
        c.grid_b = g_b;
        c.er_prob = g_prob;
        c.er_seed = g_seed;
        const Graph g = build_graph(c);
        save_graph(g_out, g);
        std::cout << "wrote " << g_out << " (" << g.m << " vertices, " << g.edges.size()
                  << " edges)\n";
    });

    // --- make-kernel ---
    auto* mk = app.add_subcommand("make-kernel", "Build a target kernel from W's eigenbasis");
    std::string k_graph, k_modes = "1:1", k_out = "k.mat";
    double k_d = 1.0, k_p = 1.0, k_scale = 0.9;
    bool k_norm = false;
    mk->add_option("--graph", k_graph, "graph file")->required();
    mk->add_option("--d", k_d, "W scale");
    mk->add_option("--p", k_p, "Laplacian power");
    mk->add_flag("--rate-normalize-d", k_norm, "d = (m/2pi)^{2p}");
    mk->add_option("--modes", k_modes, "index:weight,... (0-based eigenindex)");
    mk->add_option("--scale-to", k_scale, "max entry magnitude in (0,1]");
    mk->add_option("--out", k_out, "output matrix path")->required();
    mk->callback([&] {
        const auto W = smoothing_from_graph(k_graph, k_d, k_p, k_norm);
        const auto target = make_target(W.decomposition, parse_modes(k_modes), k_scale);
        save_symmat(k_out, target.S);
        std::cout << "wrote " << k_out << " (rank " << target.rank() << ")\n";
    });

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "Sample a labelled dataset from a kernel");
    std::string s_graph, s_kernel, s_out = "d.txt";
    int s_n = 5000;
    std::uint64_t s_seed = 7;
    sim->add_option("--graph", s_graph, "graph file (checked against kernel dim)");
    sim->add_option("--kernel", s_kernel, "kernel matrix file")->required();
    sim->add_option("--n", s_n, "observation count")->required();
    sim->add_option("--seed", s_seed, "PRNG seed");
    sim->add_option("--out", s_out, "output dataset path")->required();
    sim->callback([&] {
        const auto target = make_similarity_kernel(load_symmat(s_kernel));
        if (!s_graph.empty()) {
            const Graph g = load_graph(s_graph);
            if (g.m != target.dim())
                throw std::runtime_error("simulate: graph and kernel dimensions differ");
        }
        const Dataset ds = sample_dataset(target, s_n, s_seed);
        save_dataset(s_out, ds);
        std::cout << "wrote " << s_out << " (n=" << ds.n << ", m=" << ds.m << ")\n";
    });

    // --- estimate ---
    auto* est = app.add_subcommand("estimate", "Fit the penalized estimator on a dataset");
    std::string e_dataset, e_graph, e_out = "shat.mat", e_report, e_oracle, e_eps = "auto";
    double e_d = 1.0, e_p = 1.0, e_t = 2.3026, e_epsbar = -1.0;
    int e_s = 0, e_max_iters = 5000;
    bool e_norm = false;
    est->add_option("--dataset", e_dataset, "dataset file")->required();
    est->add_option("--graph", e_graph, "graph file")->required();
    est->add_option("--d", e_d, "W scale");
    est->add_option("--p", e_p, "Laplacian power");
    est->add_flag("--rate-normalize-d", e_norm, "d = (m/2pi)^{2p}");
    est->add_option("--epsilon", e_eps, "nuclear penalty, or 'auto'");
    est->add_option("--epsbar", e_epsbar, "Sobolev penalty (overrides --epsbar-s)");
    est->add_option("--epsbar-s", e_s, "pick epsbar = 1/lambda_s (1-based s; 0 = off)");
    est->add_option("--t", e_t, "confidence parameter");
    est->add_option("--max-iters", e_max_iters, "iteration cap");
    est->add_option("--out", e_out, "fitted matrix output")->required();
    est->add_option("--report", e_report, "JSON report output");
    est->add_option("--oracle", e_oracle, "true kernel for error reporting");
    est->callback([&] {
        const Dataset ds = load_dataset(e_dataset);
        const auto W = smoothing_from_graph(e_graph, e_d, e_p, e_norm);
        if (W.dim() != ds.m) throw std::runtime_error("estimate: graph and dataset dims differ");
        const SymMatrix B = design_stat(ds, ds.m);

        EstimatorConfig cfg;
        cfg.epsilon = (e_eps == "auto") ? choose_epsilon(ds.n, ds.m, e_t) : std::stod(e_eps);
        if (e_epsbar >= 0.0)
            cfg.epsbar = e_epsbar;
        else if (e_s > 0)
            cfg.epsbar = choose_epsbar(W, e_s);
        if (cfg.epsbar > 0.0) cfg.W = W;
        cfg.max_iters = e_max_iters;

        const EstimatorResult res = fit(B, cfg);
        save_symmat(e_out, res.S_hat);

        nlohmann::json j;
        j["epsilon"] = cfg.epsilon;
        j["epsbar"] = cfg.epsbar;
        j["iterations"] = res.iterations;
        j["kkt_residual"] = res.kkt_residual;
        j["converged"] = res.converged;
        j["objective"] = res.objective_trace.back();
        if (!e_oracle.empty()) {
            const SymMatrix oracle = load_symmat(e_oracle);
            j["error_l2"] = error_l2(res.S_hat, oracle);
        }
        const std::string body = j.dump(2) + "\n";
        if (!e_report.empty()) write_text(e_report, body);
        std::cout << body;
    });

    // --- check-bounds ---
    auto* cb = app.add_subcommand("check-bounds", "Evaluate the error bounds over an s grid");
    std::string b_graph, b_kernel, b_out, b_sgrid = "all";
    double b_d = 1.0, b_p = 1.0, b_t = 2.3026, b_zeta = 1.0, b_beta = 1.0;
    int b_n = 5000;
    bool b_norm = false;
    cb->add_option("--graph", b_graph, "graph file")->required();
    cb->add_option("--kernel", b_kernel, "target kernel file")->required();
    cb->add_option("--d", b_d, "W scale");
    cb->add_option("--p", b_p, "Laplacian power");
    cb->add_flag("--rate-normalize-d", b_norm, "d = (m/2pi)^{2p}");
    cb->add_option("--n", b_n, "sample size");
    cb->add_option("--t", b_t, "confidence parameter");
    cb->add_option("--zeta", b_zeta, "spectral envelope exponent");
    cb->add_option("--beta", b_beta, "smoothness exponent");
    cb->add_option("--s-grid", b_sgrid, "'all' or comma-separated s values");
    cb->add_option("--out", b_out, "JSON output");
    cb->callback([&] {
        const auto W = smoothing_from_graph(b_graph, b_d, b_p, b_norm);
        const auto target = make_similarity_kernel(load_symmat(b_kernel));
        const auto coh = coherence_coefficients(target, W);
        const auto spec_rep = check_spectral_conditions(W, b_zeta);
        const int m = W.dim();

        BoundInputs bi;
        bi.n = b_n;
        bi.m = m;
        bi.t = b_t;
        bi.zeta = b_zeta;
        bi.r = target.rank();
        bi.phi = coh.phi_bar;
        bi.sobolev_norm_sq = sobolev_norm_sq(target.S, W, true);
        bi.max_diag_coherence = coh.max_diag_coherence;
        bi.nu = coh.nu_weak;
        bi.beta = b_beta;

        std::vector<int> s_grid;
        if (b_sgrid == "all") {
            for (int s = W.k0 + 1; s <= m + 1; ++s) s_grid.push_back(s);
        } else {
            std::istringstream ss(b_sgrid);
            std::string item;
            while (std::getline(ss, item, ',')) s_grid.push_back(std::stoi(item));
        }

        nlohmann::json j;
        j["n"] = b_n;
        j["m"] = m;
        j["t"] = b_t;
        j["zeta"] = b_zeta;
        j["rank"] = target.rank();
        j["k0"] = W.k0;
        j["t_nm"] = t_nm(b_n, m, b_t, b_zeta);
        j["t_nm_precondition_ok"] = t_nm_precondition(b_n, m, b_t, b_zeta);
        j["epsilon"] = choose_epsilon(b_n, m, b_t);
        j["nu_weak"] = coh.nu_weak;
        j["nu_pointwise"] = coh.nu_pointwise;
        j["nu_sign"] = coh.nu_sign;
        j["max_diag_coherence"] = coh.max_diag_coherence;
        j["sobolev_norm_sq"] = bi.sobolev_norm_sq;
        j["spectral_conditions"] = {{"zeta_ok", spec_rep.zeta_ok},
                                    {"min_c_sum", spec_rep.min_c_sum},
                                    {"min_c_ratio", spec_rep.min_c_ratio},
                                    {"monotone_ok", spec_rep.monotone_ok}};
        j["klt_rhs"] = klt_rhs(choose_epsilon(b_n, m, b_t), target.rank(), m);
        j["per_s"] = nlohmann::json::array();
        for (int s : s_grid) {
            bi.epsbar = choose_epsbar(W, s);
            j["per_s"].push_back({{"s", s},
                                  {"epsbar", bi.epsbar},
                                  {"theorem_main_rhs", theorem_main_rhs(bi, s)},
                                  {"corollary_rhs", corollary_rhs(bi, s)}});
        }
        j["better_bound_rhs"] = better_bound_rhs(bi);
        const std::string body = j.dump(2) + "\n";
        if (!b_out.empty()) write_text(b_out, body);
        std::cout << body;
    });

    // --- verify-concentration ---
    auto* vc = app.add_subcommand("verify-concentration",
                                  "Monte Carlo check of the noise-matrix tail bound");
    std::string v_kernel;
    int v_n = 2000, v_trials = 500;
    double v_t = 3.0;
    std::uint64_t v_seed = 1;
    vc->add_option("--kernel", v_kernel, "target kernel file")->required();
    vc->add_option("--n", v_n, "sample size per trial");
    vc->add_option("--t", v_t, "confidence parameter");
    vc->add_option("--trials", v_trials, "Monte Carlo trials");
    vc->add_option("--seed", v_seed, "master seed");
    vc->callback([&] {
        const auto target = make_similarity_kernel(load_symmat(v_kernel));
        const auto res = verify_xi_concentration(target, v_n, v_t, v_trials, v_seed);
        std::cout << "bound " << res.bound << "\nviolation_rate " << res.violation_rate
                  << "\nallowed " << std::exp(-v_t) << " (+ Monte Carlo slack)\n";
    });

    // --- sweep ---
    auto* sw = app.add_subcommand("sweep", "Run a full n-sweep experiment with both arms");
    std::string w_config, w_json = "report.json", w_csv = "report.csv", w_plot;
    std::uint64_t w_seed = 0;
    int w_trials = 0;
    sw->add_option("--config", w_config, "experiment config file")->required();
    sw->add_option("--seed", w_seed, "override master seed");
    sw->add_option("--trials", w_trials, "override trial count");
    sw->add_option("--out-json", w_json, "JSON report path");
    sw->add_option("--out-csv", w_csv, "CSV report path");
    sw->add_option("--out-plot", w_plot, "plot-data CSV path");
    sw->callback([&] {
        ExperimentConfig cfg = parse_config_file(w_config);
        if (w_seed != 0) cfg.master_seed = w_seed;
        if (w_trials != 0) cfg.trials = w_trials;
        for (int n : cfg.n_grid)
            if (!t_nm_precondition(n, cfg.m, cfg.t, cfg.zeta))
                std::cerr << "warning: m t_nm > n at n=" << n << "; bounds are extrapolated\n";
        const ExperimentReport rep = run_experiment(cfg);
        write_text(w_json, report_to_json(rep));
        write_text(w_csv, report_to_csv(rep));
        if (!w_plot.empty()) write_text(w_plot, emit_plot_data(rep));
        std::cout << "slope dual " << rep.slope_dual << ", baseline " << rep.slope_baseline
                  << "; wrote " << w_json << " and " << w_csv << "\n";
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
