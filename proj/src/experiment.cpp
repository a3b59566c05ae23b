#include "graphsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "graphsim/bounds.hpp"
#include "graphsim/estimator.hpp"
#include "graphsim/rng.hpp"

namespace graphsim {

namespace {

int thread_count() {
    if (const char* env = std::getenv("GRAPHSIM_THREADS")) {
        const int k = std::atoi(env);
        if (k >= 1) return k;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - lo) * (v[hi] - v[lo]);
}

}  // namespace

std::uint64_t dataset_hash(const std::vector<Observation>& triples) {
    // FNV-1a over the triple stream
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& o : triples) {
        mix(static_cast<std::uint64_t>(o.u));
        mix(static_cast<std::uint64_t>(o.v));
        mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(o.y)));
    }
    return h;
}

Graph build_graph(const ExperimentConfig& cfg) {
    if (cfg.graph_kind == "path") return path_graph(cfg.m);
    if (cfg.graph_kind == "cycle") return cycle_graph(cfg.m);
    if (cfg.graph_kind == "grid") return grid_graph(cfg.grid_a, cfg.grid_b);
    if (cfg.graph_kind == "complete") return complete_graph(cfg.m);
    if (cfg.graph_kind == "erdos_renyi")
        return erdos_renyi_graph(cfg.m, cfg.er_prob, cfg.er_seed);
    throw std::invalid_argument("unknown graph kind: " + cfg.graph_kind);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (!std::is_sorted(cfg.n_grid.begin(), cfg.n_grid.end()))
        throw std::invalid_argument("run_experiment: n grid must be ascending");

    const Graph g = build_graph(cfg);
    const int m = g.m;
    double d = cfg.d;
    if (cfg.rate_normalize_d) d = std::pow(m / (2.0 * std::numbers::pi), 2.0 * cfg.p);
    const SmoothingOperator W = make_smoothing(laplacian(g), d, cfg.p);
    const SimilarityKernel target = make_target(W.decomposition, cfg.kernel_modes, cfg.scale_to);
    const CoherenceProfile coh = coherence_coefficients(target, W);
    const double sob_sq = sobolev_norm_sq(target.S, W, /*normalized=*/true);
    const int r = target.rank();

    ExperimentReport rep;
    rep.config = cfg;
    rep.nu_weak = coh.nu_weak;
    rep.rank = r;

    // per-n arm parameters
    struct ArmParams {
        double eps;
        double epsbar_dual;
        int s;
    };
    std::vector<ArmParams> params(cfg.n_grid.size());
    for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const int n = cfg.n_grid[ni];
        const double eps = choose_epsilon(n, m, cfg.t);
        const double tnm = t_nm(n, m, cfg.t, cfg.zeta);
        int s = cfg.s_override;
        if (s == 0) s = choose_s_rate(n, m, tnm, coh.nu_weak, r, cfg.beta, sob_sq, W.k0);
        params[ni] = {eps, choose_epsbar(W, s), s};
    }
    rep.chosen_s = params.back().s;

    const std::size_t n_cells = cfg.n_grid.size() * cfg.trials;
    rep.records.assign(n_cells * 2, CellRecord{});

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= n_cells) return;
            const std::size_t ni = cell / cfg.trials;
            const int trial = static_cast<int>(cell % cfg.trials);
            const int n = cfg.n_grid[ni];
            const std::uint64_t seed = derive_seed(cfg.master_seed, cell);

            const Dataset ds = sample_dataset(target, n, seed);
            const SymMatrix B = design_stat(ds, m);
            const std::uint64_t hash = dataset_hash(ds.triples);

            for (int arm = 0; arm < 2; ++arm) {
                EstimatorConfig ecfg;
                ecfg.epsilon = params[ni].eps;
                ecfg.epsbar = arm == 0 ? params[ni].epsbar_dual : 0.0;
                if (ecfg.epsbar > 0.0) ecfg.W = W;
                ecfg.max_iters = cfg.max_iters;
                const EstimatorResult res = fit(B, ecfg);

                CellRecord& rec = rep.records[cell * 2 + arm];
                rec.n = n;
                rec.trial = trial;
                rec.arm = arm == 0 ? "dual" : "baseline";
                rec.error_l2 = error_l2(res.S_hat, target.S);
                rec.kkt_residual = res.kkt_residual;
                rec.iterations = res.iterations;
                rec.converged = res.converged;
                rec.epsilon = ecfg.epsilon;
                rec.epsbar = ecfg.epsbar;
                rec.dataset_hash = hash;
            }
        }
    };
    const int nthreads = std::min<int>(thread_count(), static_cast<int>(n_cells));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // aggregates and slopes
    std::vector<std::pair<double, double>> pts_dual, pts_base;
    for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const int n = cfg.n_grid[ni];
        for (int arm = 0; arm < 2; ++arm) {
            std::vector<double> errs;
            for (int trial = 0; trial < cfg.trials; ++trial)
                errs.push_back(rep.records[(ni * cfg.trials + trial) * 2 + arm].error_l2);
            ArmAggregate agg;
            agg.n = n;
            agg.arm = arm == 0 ? "dual" : "baseline";
            agg.median_error = quantile(errs, 0.5);
            agg.q25 = quantile(errs, 0.25);
            agg.q75 = quantile(errs, 0.75);
            double mean = 0.0;
            for (double e : errs) mean += e;
            agg.mean_error = mean / errs.size();
            rep.aggregates.push_back(agg);
            (arm == 0 ? pts_dual : pts_base).emplace_back(n, agg.median_error);
        }
    }
    if (cfg.n_grid.size() >= 4) {
        rep.slope_dual = rate_slope(pts_dual);
        rep.slope_baseline = rate_slope(pts_base);
    }

    for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const int n = cfg.n_grid[ni];
        BoundInputs bi;
        bi.n = n;
        bi.m = m;
        bi.t = cfg.t;
        bi.zeta = cfg.zeta;
        bi.r = r;
        bi.phi = coh.phi_bar;
        bi.epsbar = params[ni].epsbar_dual;
        bi.sobolev_norm_sq = sob_sq;
        bi.max_diag_coherence = coh.max_diag_coherence;
        bi.nu = coh.nu_weak;
        bi.beta = cfg.beta;
        rep.theorem_bound.emplace_back(n, theorem_main_rhs(bi, params[ni].s));
        rep.klt_bound.emplace_back(n, klt_rhs(params[ni].eps, r, m));
    }
    return rep;
}

namespace {

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["graph_kind"] = c.graph_kind;
    j["m"] = c.m;
    j["grid_a"] = c.grid_a;
    j["grid_b"] = c.grid_b;
    j["er_prob"] = c.er_prob;
    j["er_seed"] = c.er_seed;
    j["kernel_modes"] = c.kernel_modes;
    j["scale_to"] = c.scale_to;
    j["d"] = c.d;
    j["p"] = c.p;
    j["rate_normalize_d"] = c.rate_normalize_d;
    j["n_grid"] = c.n_grid;
    j["trials"] = c.trials;
    j["t"] = c.t;
    j["zeta"] = c.zeta;
    j["beta"] = c.beta;
    j["s_override"] = c.s_override;
    j["max_iters"] = c.max_iters;
    j["master_seed"] = c.master_seed;
    return j;
}

}  // namespace

std::string report_to_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["config"] = config_to_json(rep.config);
    j["chosen_s"] = rep.chosen_s;
    j["nu_weak"] = rep.nu_weak;
    j["rank"] = rep.rank;
    j["slope_dual"] = rep.slope_dual;
    j["slope_baseline"] = rep.slope_baseline;
    j["records"] = nlohmann::json::array();
    for (const auto& r : rep.records) {
        j["records"].push_back({{"n", r.n},
                                {"trial", r.trial},
                                {"arm", r.arm},
                                {"error_l2", r.error_l2},
                                {"kkt_residual", r.kkt_residual},
                                {"iterations", r.iterations},
                                {"converged", r.converged},
                                {"epsilon", r.epsilon},
                                {"epsbar", r.epsbar},
                                {"dataset_hash", r.dataset_hash}});
    }
    j["aggregates"] = nlohmann::json::array();
    for (const auto& a : rep.aggregates) {
        j["aggregates"].push_back({{"n", a.n},
                                   {"arm", a.arm},
                                   {"median_error", a.median_error},
                                   {"mean_error", a.mean_error},
                                   {"q25", a.q25},
                                   {"q75", a.q75}});
    }
    j["theorem_bound"] = rep.theorem_bound;
    j["klt_bound"] = rep.klt_bound;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "n,trial,arm,error_l2,kkt_residual,iterations,converged,epsilon,epsbar,dataset_hash\n";
    for (const auto& r : rep.records) {
        os << r.n << "," << r.trial << "," << r.arm << "," << r.error_l2 << ","
           << r.kkt_residual << "," << r.iterations << "," << (r.converged ? 1 : 0) << ","
           << r.epsilon << "," << r.epsbar << "," << r.dataset_hash << "\n";
    }
    return os.str();
}

std::string emit_plot_data(const ExperimentReport& rep) {
    if (rep.aggregates.empty()) throw std::invalid_argument("emit_plot_data: empty report");
    std::ostringstream os;
    os.precision(17);
    os << "n,arm,median_error,q25,q75,bound_value\n";
    for (const auto& a : rep.aggregates) {
        double bound = 0.0;
        for (auto [n, b] : rep.theorem_bound)
            if (n == a.n) bound = b;
        os << a.n << "," << a.arm << "," << a.median_error << "," << a.q25 << "," << a.q75
           << "," << bound << "\n";
    }
    return os.str();
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (blank) continue;
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "graph") cfg.graph_kind = val;
        else if (key == "m") cfg.m = std::stoi(val);
        else if (key == "grid_a") cfg.grid_a = std::stoi(val);
        else if (key == "grid_b") cfg.grid_b = std::stoi(val);
        else if (key == "er_prob") cfg.er_prob = std::stod(val);
        else if (key == "er_seed") cfg.er_seed = std::stoull(val);
        else if (key == "kernel_modes") {
            cfg.kernel_modes.clear();
            std::istringstream ms(val);
            std::string item;
            while (std::getline(ms, item, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("kernel_modes: expected index:weight");
                cfg.kernel_modes.emplace_back(std::stoi(item.substr(0, colon)),
                                              std::stod(item.substr(colon + 1)));
            }
        } else if (key == "scale_to") cfg.scale_to = std::stod(val);
        else if (key == "d") cfg.d = std::stod(val);
        else if (key == "p") cfg.p = std::stod(val);
        else if (key == "rate_normalize_d") cfg.rate_normalize_d = (val == "true" || val == "1");
        else if (key == "n_grid") {
            cfg.n_grid.clear();
            std::istringstream ns(val);
            std::string item;
            while (std::getline(ns, item, ',')) cfg.n_grid.push_back(std::stoi(item));
        } else if (key == "trials") cfg.trials = std::stoi(val);
        else if (key == "t") cfg.t = std::stod(val);
        else if (key == "zeta") cfg.zeta = std::stod(val);
        else if (key == "beta") cfg.beta = std::stod(val);
        else if (key == "s") cfg.s_override = std::stoi(val);
        else if (key == "max_iters") cfg.max_iters = std::stoi(val);
        else if (key == "seed") cfg.master_seed = std::stoull(val);
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    return cfg;
}

}  // namespace graphsim
