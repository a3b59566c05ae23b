#pragma once

#include <utility>
#include <vector>

#include "graphsim/kernels.hpp"

namespace graphsim {

/// t_{n,m} = t + log(2m (log2(4 n^zeta m^{1.5 zeta}) + 2)).
double t_nm(int n, int m, double t, double zeta);

/// m t_{n,m} <= n, the regime the bounds assume.
bool t_nm_precondition(int n, int m, double t, double zeta);

/// Ingredients of the error bounds. C and C1 are the unspecified constants;
/// they default to 1, so bound values are rate/shape diagnostics, not
/// certified guarantees.
struct BoundInputs {
    int n = 0;
    int m = 0;
    double t = 0.0;
    double zeta = 1.0;
    int r = 0;
    std::vector<double> phi;        // phi[k] for k = 0..m (phi_bar or a majorant)
    double epsbar = 0.0;
    double sobolev_norm_sq = 0.0;   // ||W^{1/2} S_star||^2_{L2(Pi^2)}
    double max_diag_coherence = 0.0;
    double nu = 1.0;
    double beta = 1.0;
    double C = 1.0;
    double C1 = 1.0;
};

/// Piecewise-linear extension of phi to real arguments, equal to r beyond m.
double phi_extended(const std::vector<double>& phi, int r, double s);

/// C phi(s) m t_nm / n + epsbar ||W^{1/2}S*||^2 + C1 max_v||P_L e_v||^2 (m t_nm/n)^2.
double theorem_main_rhs(const BoundInputs& inp, int s);

/// Low-coherence version: C nu r s t_nm / n + the same trailing terms.
double corollary_rhs(const BoundInputs& inp, int s);

/// Optimized-in-s form: C (nu r t_nm / n)^{2b/(2b+1)} (sob_sq)^{1/(2b+1)}.
double better_bound_rhs(const BoundInputs& inp);

/// ((1+sqrt 2)/2)^2 m^2 eps^2 r.
double klt_rhs(double epsilon, int r, int m);

struct LemmaCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

/// sum_{k=s+1}^m ||P_L phi_k||^2 / lambda_k <= (c+2) phi(s+1) / lambda_{s+1};
/// s is 1-based, s >= k0 - 1.
LemmaCheck lemma1_check(const SimilarityKernel& target, const SmoothingOperator& W,
                        const std::vector<double>& phi, int s, double c);

/// Least-squares slope of log(error) against log(n).
double rate_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace graphsim
