#include "graphsim/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace graphsim {

namespace {

void check_cfg(const SymMatrix& B, const EstimatorConfig& cfg) {
    if (cfg.epsilon < 0.0 || cfg.epsbar < 0.0)
        throw std::invalid_argument("estimator: penalties must be >= 0");
    if (cfg.epsbar > 0.0) {
        if (!cfg.W) throw std::invalid_argument("estimator: epsbar > 0 requires W");
        if (cfg.W->dim() != B.dim()) throw std::invalid_argument("estimator: W dim mismatch");
    }
    if (cfg.feasible_set == FeasibleSet::FrobeniusBall && !(cfg.radius > 0.0))
        throw std::invalid_argument("estimator: Frobenius ball needs radius > 0");
    if (!(cfg.tol_obj > 0.0)) throw std::invalid_argument("estimator: tol_obj must be > 0");
}

// gradient of the smooth part g(S) = m^{-2}||S||_2^2 - 2<B,S> + eps1 tr(S W S)
SymMatrix smooth_grad(const SymMatrix& S, const SymMatrix& B, const EstimatorConfig& cfg) {
    const int m = S.dim();
    const double inv_m2 = 1.0 / (static_cast<double>(m) * m);
    SymMatrix G = (2.0 * inv_m2) * S;
    G -= 2.0 * B;
    const double eps1 = cfg.epsilon1(m);
    if (eps1 > 0.0) {
        const auto WS = matmul(cfg.W->W, S);
        for (int u = 0; u < m; ++u)
            for (int v = u; v < m; ++v) {
                const double t = WS[static_cast<std::size_t>(u) * m + v] +
                                 WS[static_cast<std::size_t>(v) * m + u];
                G.add(u, v, eps1 * t);
            }
    }
    return G;
}

double smooth_value(const SymMatrix& S, const SymMatrix& B, const EstimatorConfig& cfg) {
    const int m = S.dim();
    const double inv_m2 = 1.0 / (static_cast<double>(m) * m);
    double val = inv_m2 * frobenius_inner(S, S) - 2.0 * frobenius_inner(B, S);
    const double eps1 = cfg.epsilon1(m);
    if (eps1 > 0.0) {
        const auto WS = matmul(cfg.W->W, S);
        double tr = 0.0;
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v) tr += WS[static_cast<std::size_t>(u) * m + v] * S(v, u);
        val += eps1 * tr;
    }
    return val;
}

SymMatrix project_ball(const SymMatrix& S, double radius) {
    const double nrm = frobenius_norm(S);
    if (nrm <= radius) return S;
    return (radius / nrm) * S;
}

double lipschitz(const SymMatrix& B, const EstimatorConfig& cfg) {
    const int m = B.dim();
    double L = 2.0 / (static_cast<double>(m) * m);
    const double eps1 = cfg.epsilon1(m);
    if (eps1 > 0.0) L += 2.0 * eps1 * cfg.W->lambda_max();
    return L;
}

double auto_tol_kkt(const SymMatrix& B, const EstimatorConfig& cfg) {
    if (cfg.tol_kkt > 0.0) return cfg.tol_kkt;
    return 1e-6 * (1.0 + 2.0 * operator_norm(B));
}

}  // namespace

double objective(const SymMatrix& S, const SymMatrix& B, const EstimatorConfig& cfg) {
    if (S.dim() != B.dim()) throw std::invalid_argument("objective: dim mismatch");
    check_cfg(B, cfg);
    double val = smooth_value(S, B, cfg);
    if (cfg.epsilon > 0.0) val += cfg.epsilon * schatten_norm(S, 1.0);
    return val;
}

double kkt_residual(const SymMatrix& S, const SymMatrix& B, const EstimatorConfig& cfg) {
    check_cfg(B, cfg);
    SymMatrix G = smooth_grad(S, B, cfg);

    if (cfg.feasible_set == FeasibleSet::FrobeniusBall) {
        const double nrm = frobenius_norm(S);
        if (nrm >= cfg.radius * (1.0 - 1e-12) && nrm > 0.0) {
            // remove the outward normal-cone component alpha * S, alpha >= 0
            const double alpha = frobenius_inner(G, S) / frobenius_inner(S, S);
            if (alpha < 0.0) G -= alpha * S;
        }
    }

    const double ztol = std::max(default_zero_tol(S), 1e-300);
    const SupportInfo supp = sign_and_support(S, ztol);

    SymMatrix on_support = proj_support(supp.projector, G);
    on_support += cfg.epsilon * supp.sign_matrix;
    const double r1 = frobenius_norm(on_support);

    const SymMatrix off_support = proj_support_perp(supp.projector, G);
    const double r2 = std::max(0.0, operator_norm(off_support) - cfg.epsilon);
    return std::max(r1, r2);
}

EstimatorResult fit(const SymMatrix& B, const EstimatorConfig& cfg, const SymMatrix* warm_start) {
    check_cfg(B, cfg);
    const int m = B.dim();
    const double L = lipschitz(B, cfg);
    const double tau = cfg.epsilon / L;
    const double tol_kkt = auto_tol_kkt(B, cfg);

    SymMatrix S = warm_start ? *warm_start : SymMatrix(m);
    if (cfg.feasible_set == FeasibleSet::FrobeniusBall) S = project_ball(S, cfg.radius);
    SymMatrix Y = S;
    double momentum = 1.0;

    EstimatorResult res;
    res.S_hat = S;
    double prev_obj = objective(S, B, cfg);
    res.objective_trace.push_back(prev_obj);
    int flat_count = 0;
    const int kkt_stride = 10;

    for (int it = 1; it <= cfg.max_iters; ++it) {
        SymMatrix G = smooth_grad(Y, B, cfg);
        SymMatrix Z = Y;
        Z -= (1.0 / L) * G;
        SymMatrix S_next = spectral_soft_threshold(Z, tau);
        if (cfg.feasible_set == FeasibleSet::FrobeniusBall)
            S_next = project_ball(S_next, cfg.radius);

        double obj = objective(S_next, B, cfg);
        if (obj > prev_obj) {
            // adaptive restart: drop momentum, retry from the last iterate
            momentum = 1.0;
            Y = S;
            SymMatrix G2 = smooth_grad(Y, B, cfg);
            SymMatrix Z2 = Y;
            Z2 -= (1.0 / L) * G2;
            S_next = spectral_soft_threshold(Z2, tau);
            if (cfg.feasible_set == FeasibleSet::FrobeniusBall)
                S_next = project_ball(S_next, cfg.radius);
            obj = objective(S_next, B, cfg);
        }

        const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        Y = S_next;
        SymMatrix step = S_next;
        step -= S;
        Y += ((momentum - 1.0) / next_momentum) * step;
        momentum = next_momentum;
        S = S_next;
        res.iterations = it;

        res.objective_trace.push_back(obj);
        const double rel = std::fabs(obj - prev_obj) / std::max(1.0, std::fabs(prev_obj));
        flat_count = rel <= cfg.tol_obj ? flat_count + 1 : 0;
        prev_obj = obj;

        if (flat_count >= 5 || it % kkt_stride == 0 || it == cfg.max_iters) {
            res.kkt_residual = kkt_residual(S, B, cfg);
            if (res.kkt_residual <= tol_kkt) {
                res.converged = true;
                break;
            }
            if (flat_count >= 5) break;  // stalled objective, converged stays honest
        }
    }
    res.S_hat = S;
    if (!res.converged) res.kkt_residual = kkt_residual(S, B, cfg);
    return res;
}

double choose_epsilon(int n, int m, double t) {
    if (n < 1 || m < 1 || !(t > 0.0)) throw std::invalid_argument("choose_epsilon: bad inputs");
    return 4.0 * std::sqrt((t + std::log(2.0 * m)) / (static_cast<double>(n) * m));
}

double choose_epsbar(const SmoothingOperator& W, int s) {
    const int m = W.dim();
    if (s < W.k0 + 1 || s > m + 1)
        throw std::invalid_argument("choose_epsbar: s out of [k0+1, m+1]");
    if (s == m + 1) return 0.0;  // lambda_{m+1} = +inf convention
    return 1.0 / W.lambda(s);
}

int choose_s_rate(int n, int m, double t_nm, double nu, int r, double beta,
                  double sobolev_norm_sq_target, int k0) {
    if (!(n > 0 && m > 0 && t_nm > 0 && nu > 0 && r > 0 && beta > 0 &&
          sobolev_norm_sq_target > 0))
        throw std::invalid_argument("choose_s_rate: all inputs must be positive");
    const double expo = 1.0 / (2.0 * beta + 1.0);
    const double s_real =
        std::pow(n / (nu * r * t_nm), expo) * std::pow(sobolev_norm_sq_target, expo);
    int s = static_cast<int>(std::lround(s_real));
    s = std::max(s, k0 + 1);
    s = std::min(s, m + 1);
    return s;
}

double error_l2(const SymMatrix& S_hat, const SymMatrix& S_star) {
    if (S_hat.dim() != S_star.dim()) throw std::invalid_argument("error_l2: dim mismatch");
    SymMatrix diff = S_hat;
    diff -= S_star;
    const double m = S_hat.dim();
    return frobenius_inner(diff, diff) / (m * m);
}

}  // namespace graphsim
