#include "graphsim/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace graphsim {

SimilarityKernel make_similarity_kernel(const SymMatrix& S) {
    for (double x : S.data())
        if (!(std::fabs(x) <= 1.0 + 1e-12))
            throw std::invalid_argument("similarity kernel: entries must lie in [-1,1]");
    SimilarityKernel k;
    k.S = S;
    k.spectral = sym_eig(S);
    k.support = sign_and_support(S, default_zero_tol(S));
    return k;
}

SimilarityKernel make_target(const SpectralDecomposition& basis,
                             const std::vector<std::pair<int, double>>& modes,
                             double scale_to) {
    if (modes.empty()) throw std::invalid_argument("make_target: no modes");
    if (!(scale_to > 0.0 && scale_to <= 1.0))
        throw std::invalid_argument("make_target: scale_to must be in (0,1]");
    const int m = basis.dim;
    bool any_nonzero = false;
    std::vector<double> eigs(m, 0.0);
    for (auto [idx, w] : modes) {
        if (idx < 0 || idx >= m) throw std::invalid_argument("make_target: mode index out of range");
        if (eigs[idx] != 0.0) throw std::invalid_argument("make_target: duplicate mode index");
        if (w != 0.0) any_nonzero = true;
        eigs[idx] = w;
    }
    if (!any_nonzero) throw std::invalid_argument("make_target: all weights zero");

    SymMatrix S = basis.assemble(eigs);
    double amax = 0.0;
    for (double x : S.data()) amax = std::max(amax, std::fabs(x));
    S *= scale_to / amax;
    return make_similarity_kernel(S);
}

namespace {

// ||P_L phi_k||^2 for every eigenvector of W
std::vector<double> projector_loads(const SimilarityKernel& target, const SmoothingOperator& W) {
    const int m = W.dim();
    if (target.dim() != m) throw std::invalid_argument("coherence: dim mismatch");
    const SymMatrix& P = target.support.projector;
    std::vector<double> load(m, 0.0);
    for (int k = 0; k < m; ++k) {
        // ||P phi_k||^2 = phi_k' P' P phi_k = phi_k' P phi_k (P idempotent)
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < m; ++j) row += P(i, j) * W.decomposition.vec(k, j);
            s += W.decomposition.vec(k, i) * row;
        }
        load[k] = std::max(s, 0.0);
    }
    return load;
}

CoherenceProfile profile_common(const SimilarityKernel& target, const SmoothingOperator& W) {
    const int m = W.dim();
    const auto load = projector_loads(target, W);

    CoherenceProfile prof;
    prof.F.assign(m + 1, 0.0);
    for (int j = 1; j <= m; ++j) prof.F[j] = prof.F[j - 1] + load[j - 1];

    prof.phi_bar.assign(m + 1, 0.0);
    double best = 0.0;
    for (int t = 1; t <= m; ++t) {
        double inner = 0.0;
        for (int j = t; j <= m; ++j) inner = std::max(inner, prof.F[j] / j);
        best = std::max(best, t * inner);
        prof.phi_bar[t] = best;  // max over t' <= t of t' * max_{j >= t'} F_j / j
    }

    const SymMatrix& P = target.support.projector;
    for (int v = 0; v < m; ++v) {
        // ||P e_v||^2 = P(v,v)
        prof.max_diag_coherence = std::max(prof.max_diag_coherence, P(v, v));
    }
    return prof;
}

}  // namespace

CoherenceProfile coherence_function(const SimilarityKernel& target, const SmoothingOperator& W) {
    return profile_common(target, W);
}

CoherenceProfile coherence_coefficients(const SimilarityKernel& target, const SmoothingOperator& W) {
    const int r = target.rank();
    if (r < 1) throw std::invalid_argument("coherence_coefficients: rank must be >= 1");
    CoherenceProfile prof = profile_common(target, W);
    const int m = W.dim();
    const auto load = projector_loads(target, W);

    for (int k = 1; k <= m; ++k)
        prof.nu_weak = std::max(prof.nu_weak, prof.F[k] * m / (static_cast<double>(r) * k));
    for (int k = 0; k < m; ++k)
        prof.nu_pointwise = std::max(prof.nu_pointwise, load[k] * m / r);
    const SymMatrix& sg = target.support.sign_matrix;
    double smax = 0.0;
    for (double x : sg.data()) smax = std::max(smax, x * x);
    prof.nu_sign = smax * static_cast<double>(m) * m / r;
    return prof;
}

double l2_pi2_norm_sq(const SymMatrix& S) {
    const double m = S.dim();
    double s = 0.0;
    for (double x : S.data()) s += x * x;
    return s / (m * m);
}

double l2_pi2_inner(const SymMatrix& S1, const SymMatrix& S2) {
    const double m = S1.dim();
    return frobenius_inner(S1, S2) / (m * m);
}

double sobolev_norm_sq(const SymMatrix& S, const SmoothingOperator& W, bool normalized) {
    if (S.dim() != W.dim()) throw std::invalid_argument("sobolev_norm_sq: dim mismatch");
    const int m = S.dim();
    const auto WS = matmul(W.W, S);
    // tr(W S S) = sum_{u,v} (WS)(u,v) S(v,u)
    double s = 0.0;
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) s += WS[static_cast<std::size_t>(u) * m + v] * S(v, u);
    if (normalized) s /= static_cast<double>(m) * m;
    return s;
}

}  // namespace graphsim
