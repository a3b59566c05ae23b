#include "graphsim/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace graphsim {

double t_nm(int n, int m, double t, double zeta) {
    if (n < 1 || m < 1 || !(t > 0.0) || !(zeta >= 1.0))
        throw std::invalid_argument("t_nm: bad inputs");
    const double inner = std::log2(4.0 * std::pow(n, zeta) * std::pow(m, 1.5 * zeta)) + 2.0;
    return t + std::log(2.0 * m * inner);
}

bool t_nm_precondition(int n, int m, double t, double zeta) {
    return m * t_nm(n, m, t, zeta) <= static_cast<double>(n);
}

double phi_extended(const std::vector<double>& phi, int r, double s) {
    const int m = static_cast<int>(phi.size()) - 1;
    if (m < 1) throw std::invalid_argument("phi_extended: empty profile");
    if (s <= 0.0) return 0.0;
    if (s >= m) return static_cast<double>(r);  // phi(u) = r for u >= m
    const int k = static_cast<int>(std::floor(s));
    const double frac = s - k;
    return phi[k] + frac * (phi[k + 1] - phi[k]);
}

namespace {
void validate_phi(const BoundInputs& inp) {
    if (inp.phi.size() != static_cast<std::size_t>(inp.m) + 1)
        throw std::invalid_argument("bounds: phi profile must have m+1 entries");
    if (inp.r >= 1 && inp.phi[inp.m] <= 0.0)
        throw std::invalid_argument("bounds: zero phi profile with r >= 1");
}
}  // namespace

double theorem_main_rhs(const BoundInputs& inp, int s) {
    validate_phi(inp);
    const double tnm = t_nm(inp.n, inp.m, inp.t, inp.zeta);
    const double ratio = inp.m * tnm / inp.n;
    return inp.C * phi_extended(inp.phi, inp.r, static_cast<double>(s)) * ratio +
           inp.epsbar * inp.sobolev_norm_sq + inp.C1 * inp.max_diag_coherence * ratio * ratio;
}

double corollary_rhs(const BoundInputs& inp, int s) {
    const double tnm = t_nm(inp.n, inp.m, inp.t, inp.zeta);
    const double ratio = inp.m * tnm / inp.n;
    return inp.C * inp.nu * inp.r * s * tnm / inp.n + inp.epsbar * inp.sobolev_norm_sq +
           inp.C1 * inp.max_diag_coherence * ratio * ratio;
}

double better_bound_rhs(const BoundInputs& inp) {
    const double tnm = t_nm(inp.n, inp.m, inp.t, inp.zeta);
    const double expo = 2.0 * inp.beta / (2.0 * inp.beta + 1.0);
    return inp.C * std::pow(inp.nu * inp.r * tnm / inp.n, expo) *
           std::pow(inp.sobolev_norm_sq, 1.0 / (2.0 * inp.beta + 1.0));
}

double klt_rhs(double epsilon, int r, int m) {
    if (!(epsilon > 0.0) || r < 1 || m < 1) throw std::invalid_argument("klt_rhs: bad inputs");
    const double c = (1.0 + std::sqrt(2.0)) / 2.0;
    return c * c * static_cast<double>(m) * m * epsilon * epsilon * r;
}

LemmaCheck lemma1_check(const SimilarityKernel& target, const SmoothingOperator& W,
                        const std::vector<double>& phi, int s, double c) {
    const int m = W.dim();
    if (s < W.k0 - 1) throw std::invalid_argument("lemma1_check: s < k0 - 1");
    if (s + 1 > m) throw std::invalid_argument("lemma1_check: s + 1 exceeds m");
    const double lam_s1 = W.lambda(s + 1);
    if (!(lam_s1 > 0.0)) throw std::invalid_argument("lemma1_check: lambda_{s+1} is zero");

    const SymMatrix& P = target.support.projector;
    LemmaCheck out;
    for (int k = s + 1; k <= m; ++k) {
        double load = 0.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < m; ++j) row += P(i, j) * W.decomposition.vec(k - 1, j);
            load += W.decomposition.vec(k - 1, i) * row;
        }
        out.lhs += std::max(load, 0.0) / W.lambda(k);
    }
    out.rhs = (c + 2.0) * phi_extended(phi, target.rank(), static_cast<double>(s + 1)) / lam_s1;
    out.ok = out.lhs <= out.rhs + 1e-12;
    return out;
}

double rate_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw std::invalid_argument("rate_slope: need at least 4 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, err] : points) {
        if (!(err > 0.0) || !(n > 0.0))
            throw std::invalid_argument("rate_slope: points must be positive");
        const double x = std::log(n), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(points.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace graphsim
