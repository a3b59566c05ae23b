// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "graphsim/bounds.hpp"
#include "graphsim/estimator.hpp"
#include "graphsim/experiment.hpp"
#include "graphsim/graph.hpp"
#include "graphsim/kernels.hpp"
#include "graphsim/rng.hpp"
#include "graphsim/sampling.hpp"
#include "test_util.hpp"

using namespace graphsim;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail, double seconds) {
    std::printf("criterion %d: %s  (%s; %.1fs)\n", idx, ok ? "PASS" : "FAIL", detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Instance {
    SymMatrix B;
    EstimatorConfig cfg;
};

// random small instance: random connected-ish graph, random low-rank target,
// sampled labels, realistic penalty levels
Instance random_instance(SplitMix64& rng, int m_lo, int m_hi) {
    const int m = m_lo + static_cast<int>(rng.next_below(
                             static_cast<std::uint64_t>(m_hi - m_lo + 1)));
    const Graph g = cycle_graph(m);
    const auto W = make_smoothing(laplacian(g), 1.0, 1.0);
    const int mode = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
    const auto target = make_target(W.decomposition, {{mode, 1.0}}, 0.9);
    const int n = 50 + static_cast<int>(rng.next_below(151));
    const Dataset ds = sample_dataset(target, n, rng.next_u64());
    Instance inst;
    inst.B = design_stat(ds, m);
    inst.cfg.epsilon = choose_epsilon(n, m, 2.3026) * (0.5 + rng.next_double());
    inst.cfg.epsbar = 2.0 * rng.next_double();
    if (inst.cfg.epsbar > 0.0) inst.cfg.W = W;
    inst.cfg.tol_kkt = 1e-8;
    inst.cfg.tol_obj = 1e-14;
    inst.cfg.max_iters = 100000;
    return inst;
}

void criterion1() {
    const auto t0 = Clock::now();
    SplitMix64 rng(101);
    double worst_dist = 0.0, worst_gap = -1e300;
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        const Instance inst = random_instance(rng, 3, 6);
        const auto res = fit(inst.B, inst.cfg);
        const SymMatrix ref = testutil::reference_fit(inst.B, inst.cfg, 1000000);
        SymMatrix diff = res.S_hat;
        diff -= ref;
        const double dist = frobenius_norm(diff);
        const double gap =
            objective(res.S_hat, inst.B, inst.cfg) - objective(ref, inst.B, inst.cfg);
        worst_dist = std::max(worst_dist, dist);
        worst_gap = std::max(worst_gap, gap);
        ok = ok && dist <= 1e-4 && gap <= 1e-8;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    ok = ok && secs <= 300.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "solver vs subgradient oracle, 50 instances: max frobenius %.2e, max objective "
                  "gap %.2e",
                  worst_dist, worst_gap);
    report(1, ok, buf, secs);
}

void criterion2() {
    const auto t0 = Clock::now();
    SplitMix64 rng(202);
    bool ok = true;
    double worst_kkt_ratio = 0.0, worst_drop = -1e300;
    int converged_count = 0, perturbed = 0;
    for (int i = 0; i < 20; ++i) {
        const Instance inst = random_instance(rng, 3, 6);
        const auto res = fit(inst.B, inst.cfg);
        if (!res.converged) continue;  // the certificate applies to converged fits only
        ++converged_count;
        const double kkt = kkt_residual(res.S_hat, inst.B, inst.cfg);
        worst_kkt_ratio = std::max(worst_kkt_ratio, kkt / inst.cfg.tol_kkt);
        ok = ok && kkt <= inst.cfg.tol_kkt;

        if (perturbed < 5) {
            ++perturbed;
            const int m = inst.B.dim();
            const double base = objective(res.S_hat, inst.B, inst.cfg);
            for (int p = 0; p < 10000; ++p) {
                SymMatrix D(m);
                for (int a = 0; a < m; ++a)
                    for (int b = a; b < m; ++b) D.set(a, b, 2.0 * rng.next_double() - 1.0);
                const double delta = p % 2 ? 1e-2 : 1e-3;
                D *= delta / frobenius_norm(D);
                SymMatrix S = res.S_hat;
                S += D;
                const double drop = base - objective(S, inst.B, inst.cfg);
                worst_drop = std::max(worst_drop, drop);
                ok = ok && drop <= 1e-10;
            }
        }
    }
    ok = ok && converged_count >= 15 && perturbed == 5;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "kkt <= tol on %d/20 converged fits (max ratio %.2f); best perturbation "
                  "improvement %.2e",
                  converged_count, worst_kkt_ratio, worst_drop);
    report(2, ok, buf, std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion3() {
    const auto t0 = Clock::now();
    SplitMix64 rng(303);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int m = 3 + static_cast<int>(rng.next_below(6));
        SymMatrix B(m);
        for (int j = 0; j < m; ++j) B.set(j, j, 0.8 * (2.0 * rng.next_double() - 1.0));
        EstimatorConfig cfg;
        cfg.epsilon = 0.02 + 0.5 * rng.next_double();
        cfg.tol_kkt = 1e-10;
        cfg.tol_obj = 1e-16;
        cfg.max_iters = 50000;
        const auto res = fit(B, cfg);
        ok = ok && res.converged;
        for (int j = 0; j < m; ++j) {
            const double b = B(j, j);
            const double want =
                m * m * (b > 0 ? 1.0 : -1.0) * std::max(std::fabs(b) - cfg.epsilon / 2.0, 0.0);
            worst = std::max(worst, std::fabs(res.S_hat(j, j) - want));
            for (int k = j + 1; k < m; ++k) worst = std::max(worst, std::fabs(res.S_hat(j, k)));
        }
    }
    ok = ok && worst <= 1e-6;
    char buf[120];
    std::snprintf(buf, sizeof buf, "diagonal soft-threshold closed form, 100 cases: max dev %.2e",
                  worst);
    report(3, ok, buf, std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion4() {
    const auto t0 = Clock::now();
    SplitMix64 rng(404);
    bool ok = true;
    int done = 0;
    while (done < 200) {
        const int m = 5 + static_cast<int>(rng.next_below(16));
        const Graph g = erdos_renyi_graph(m, 0.2 + 0.5 * rng.next_double(), rng.next_u64());
        if (count_components(g) != 1) continue;
        const auto W = make_smoothing(laplacian(g), 1.0, 1.0);
        const int r = 1 + static_cast<int>(rng.next_below(3));
        std::vector<std::pair<int, double>> modes;
        bool dup = false;
        for (int i = 0; i < r; ++i) {
            const int idx = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
            for (const auto& mw : modes) dup = dup || mw.first == idx;
            modes.emplace_back(idx, 0.3 + rng.next_double());
        }
        if (dup) continue;
        const auto target = make_target(W.decomposition, modes, 0.9);
        if (target.rank() != r) continue;
        const auto prof = coherence_function(target, W);
        for (int k = 1; k <= m; ++k) {
            ok = ok && prof.phi_bar[k] >= prof.phi_bar[k - 1] - 1e-12;
            ok = ok && prof.phi_bar[k] >= static_cast<double>(r) * k / m - 1e-9;
            if (k >= 2)
                ok = ok && prof.phi_bar[k] / k <= prof.phi_bar[k - 1] / (k - 1) + 1e-12;
        }
        ok = ok && std::fabs(prof.phi_bar[m] - r) <= 1e-9;
        ++done;
    }
    report(4, ok, "coherence profile invariants on 200 random (graph, target) pairs",
           std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion5() {
    const auto t0 = Clock::now();
    SplitMix64 rng(505);
    bool ok = true;
    int done = 0;
    double worst_margin = 1e300;
    while (done < 500) {
        const int m = 6 + static_cast<int>(rng.next_below(20));
        const Graph g = erdos_renyi_graph(m, 0.2 + 0.5 * rng.next_double(), rng.next_u64());
        if (count_components(g) != 1) continue;
        const auto W = make_smoothing(laplacian(g), 1.0, 1.0);
        const auto rep = check_spectral_conditions(W, 3.0);
        const int mode = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
        const auto target = make_target(W.decomposition, {{mode, 1.0}}, 0.9);
        const auto prof = coherence_function(target, W);
        const int s =
            W.k0 - 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m - W.k0 + 1)));
        const auto chk = lemma1_check(target, W, prof.phi_bar, s, rep.min_c_sum);
        worst_margin = std::min(worst_margin, chk.rhs - chk.lhs);
        ok = ok && chk.ok;
        ++done;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "tail-sum lemma on 500 random instances: min rhs-lhs %.2e",
                  worst_margin);
    report(5, ok, buf, std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion6() {
    const auto t0 = Clock::now();
    const auto W = make_smoothing(laplacian(cycle_graph(20)), 1.0, 1.0);
    const auto target = make_target(W.decomposition, {{1, 1.0}}, 0.9);
    const auto res = verify_xi_concentration(target, 2000, 3.0, 500, 606);
    const double et = std::exp(-3.0);
    const double allowed = et + 3.0 * std::sqrt(et * (1.0 - et) / 500.0);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = res.violation_rate <= allowed && secs <= 120.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "noise-matrix concentration: violation rate %.4f <= %.4f (bernstein rhs %.4f)",
                  res.violation_rate, allowed, res.bound);
    report(6, ok, buf, secs);
}

void criterion7() {
    const auto t0 = Clock::now();
    const int m = 50, n = 20000, trials = 50;
    const double t = 2.3026;
    const auto W = make_smoothing(laplacian(cycle_graph(m)), 1.0, 1.0);
    const auto target = make_target(W.decomposition, {{1, 1.0}, {3, 0.7}}, 0.9);
    const double eps = choose_epsilon(n, m, t);
    const double bound = klt_rhs(eps, target.rank(), m);
    int under = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const Dataset ds = sample_dataset(target, n, derive_seed(707, trial));
        EstimatorConfig cfg;
        cfg.epsilon = eps;
        const auto res = fit(design_stat(ds, m), cfg);
        if (res.converged && error_l2(res.S_hat, target.S) <= bound) ++under;
    }
    const double frac = static_cast<double>(under) / trials;
    const bool ok = frac >= 0.9;
    char buf[140];
    std::snprintf(buf, sizeof buf, "error within the rank-based envelope %.4f in %.0f%% of trials",
                  bound, 100.0 * frac);
    report(7, ok, buf, std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion8() {
    const auto t0 = Clock::now();
    ExperimentConfig cfg;
    cfg.graph_kind = "cycle";
    cfg.m = 100;
    // Flattest smooth rank-1 target (bottom Laplacian mode) at full scale: the only
    // regime where the prescribed spectral threshold lets the signal emerge on this
    // n grid at all.  The target lies in ker W, so the rate formula for s is
    // degenerate and s is pinned at its lower clamp k0+1 = 3.
    cfg.kernel_modes = {{0, 1.0}};
    cfg.scale_to = 1.0;
    cfg.p = 1.0;
    cfg.rate_normalize_d = true;
    cfg.beta = 1.0;
    cfg.n_grid = {500, 1000, 2000, 4000, 8000, 16000};
    cfg.trials = 20;
    cfg.t = 0.1;
    cfg.s_override = 3;
    cfg.master_seed = 808;
    const ExperimentReport rep = run_experiment(cfg);

    bool slope_ok = rep.slope_dual >= -0.85 && rep.slope_dual <= -0.50;
    bool dominance_ok = true;
    std::map<int, double> med_dual, med_base;
    for (const auto& agg : rep.aggregates)
        (agg.arm == "dual" ? med_dual : med_base)[agg.n] = agg.median_error;
    double worst_margin = 0.0;
    int worst_n = 0;
    for (int n : cfg.n_grid) {
        if (n < 2000) continue;
        const double margin = med_dual[n] - med_base[n];
        dominance_ok = dominance_ok && margin <= 0.0;
        if (margin > worst_margin) {
            worst_margin = margin;
            worst_n = n;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = slope_ok && dominance_ok && secs <= 1800.0;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "rate sweep: dual slope %.3f in [-0.85,-0.50] %s; dual <= baseline medians at n "
                  ">= 2000 %s (worst margin %+.4f at n=%d; baseline slope %.3f)",
                  rep.slope_dual, slope_ok ? "yes" : "NO", dominance_ok ? "yes" : "NO",
                  worst_margin, worst_n, rep.slope_baseline);
    report(8, ok, buf, secs);
}

void criterion9() {
    const auto t0 = Clock::now();
    ExperimentConfig cfg;
    cfg.graph_kind = "cycle";
    cfg.m = 16;
    cfg.kernel_modes = {{1, 1.0}};
    cfg.n_grid = {500, 1000, 2000, 4000};
    cfg.trials = 3;
    cfg.master_seed = 909;
    const std::string a = report_to_json(run_experiment(cfg));
    const std::string b = report_to_json(run_experiment(cfg));
    report(9, a == b, "same master seed reproduces a byte-identical report",
           std::chrono::duration<double>(Clock::now() - t0).count());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all 9 criteria passed\n");
    return 0;
}
