#pragma once

#include <optional>
#include <vector>

#include "graphsim/graph.hpp"
#include "graphsim/symmat.hpp"

namespace graphsim {

enum class FeasibleSet { WholeSpace, FrobeniusBall };

/// Penalized least-squares configuration:
///   L(S) = m^{-2} ||S||_2^2 - 2<B,S> + eps ||S||_1 + (epsbar/m^2) ||W^{1/2}S||_2^2
struct EstimatorConfig {
    double epsilon = 0.0;   // nuclear penalty
    double epsbar = 0.0;    // Sobolev penalty (normalized form)
    std::optional<SmoothingOperator> W;  // required when epsbar > 0
    FeasibleSet feasible_set = FeasibleSet::WholeSpace;
    double radius = 0.0;    // Frobenius ball radius
    int max_iters = 5000;
    double tol_kkt = -1.0;  // < 0: auto, 1e-6 * (1 + ||2B||)
    double tol_obj = 1e-10;

    double epsilon1(int m) const { return epsbar / (static_cast<double>(m) * m); }
};

struct EstimatorResult {
    SymMatrix S_hat;
    int iterations = 0;
    std::vector<double> objective_trace;
    double kkt_residual = 0.0;
    bool converged = false;
};

double objective(const SymMatrix& S, const SymMatrix& B, const EstimatorConfig& cfg);

/// FISTA with adaptive restart; prox is the spectral soft-threshold.
/// Optional warm start. Non-convergence returns converged = false.
EstimatorResult fit(const SymMatrix& B, const EstimatorConfig& cfg,
                    const SymMatrix* warm_start = nullptr);

/// Distance from first-order optimality; zero iff S is a global minimizer
/// (whole space). For the Frobenius ball, the normal-cone component of the
/// gradient at the boundary is removed first.
double kkt_residual(const SymMatrix& S, const SymMatrix& B, const EstimatorConfig& cfg);

/// eps = 4 sqrt((t + log 2m)/(n m)).
double choose_epsilon(int n, int m, double t);

/// Left endpoint lambda_s^{-1} of the admissible window; s is 1-based in
/// {k0+1, ..., m+1}, with s = m+1 meaning 0 (nuclear-only baseline).
double choose_epsbar(const SmoothingOperator& W, int s);

/// Rate-optimal s for lambda_k ~ k^{2 beta}; rounded and clamped to
/// [k0+1, m+1].
int choose_s_rate(int n, int m, double t_nm, double nu, int r, double beta,
                  double sobolev_norm_sq_target, int k0 = 1);

/// m^{-2} ||S_hat - S_star||_2^2.
double error_l2(const SymMatrix& S_hat, const SymMatrix& S_star);

}  // namespace graphsim
