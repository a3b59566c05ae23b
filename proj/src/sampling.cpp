#include "graphsim/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "graphsim/rng.hpp"

namespace graphsim {

Dataset sample_dataset(const SimilarityKernel& target, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
    const int m = target.dim();
    for (double x : target.S.data())
        if (!(std::fabs(x) <= 1.0))
            throw std::invalid_argument("sample_dataset: kernel entries must lie in [-1,1]");

    Dataset ds;
    ds.n = n;
    ds.m = m;
    ds.seed = seed;
    ds.triples.reserve(n);
    SplitMix64 rng(seed);
    for (int j = 0; j < n; ++j) {
        const int u = static_cast<int>(rng.next_below(m));
        const int v = static_cast<int>(rng.next_below(m));
        const double p_plus = 0.5 * (1.0 + target.S(u, v));
        const int y = rng.next_double() < p_plus ? +1 : -1;
        ds.triples.push_back({u, v, y});
    }
    return ds;
}

SymMatrix design_stat(const Dataset& ds, int m) {
    SymMatrix B(m);
    for (const auto& o : ds.triples) {
        if (o.u < 0 || o.v < 0 || o.u >= m || o.v >= m)
            throw std::invalid_argument("design_stat: vertex out of range");
        if (o.u == o.v)
            B.add(o.u, o.u, static_cast<double>(o.y));
        else
            B.add(o.u, o.v, 0.5 * o.y);  // mirrored by add()
    }
    B *= 1.0 / ds.n;
    return B;
}

SymMatrix noise_matrix(const Dataset& ds, const SimilarityKernel& target) {
    const int m = target.dim();
    SymMatrix xi = design_stat(ds, m);
    const double inv_m2 = 1.0 / (static_cast<double>(m) * m);
    xi -= inv_m2 * target.S;
    return xi;
}

double bernstein_operator_rhs(double sigma, double U, int n, int m, double t) {
    if (!(sigma > 0.0 && U > 0.0 && t > 0.0 && n >= 1 && m >= 1))
        throw std::invalid_argument("bernstein_operator_rhs: bad inputs");
    const double tl = t + std::log(2.0 * m);
    return 2.0 * std::max(sigma * std::sqrt(tl / n), U * tl / n);
}

double bernstein_hilbert_rhs(double sigma, double U, int n, double t) {
    if (!(sigma > 0.0 && U > 0.0 && t > 0.0 && n >= 1))
        throw std::invalid_argument("bernstein_hilbert_rhs: bad inputs");
    return 2.0 * std::max(sigma * std::sqrt(t / n), U * t / n);
}

ConcentrationResult verify_xi_concentration(const SimilarityKernel& target, int n, double t,
                                            int trials, std::uint64_t seed) {
    const int m = target.dim();
    if (trials < 1) throw std::invalid_argument("verify_xi_concentration: trials must be >= 1");
    if (!(n >= 2.0 * m * (t + std::log(2.0 * m))))
        throw std::invalid_argument("verify_xi_concentration: need n >= 2m(t + log 2m)");

    ConcentrationResult res;
    res.bound = bernstein_operator_rhs(std::sqrt(1.0 / m), 2.0, n, m, t);
    int violations = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const Dataset ds = sample_dataset(target, n, derive_seed(seed, trial));
        const SymMatrix xi = noise_matrix(ds, target);
        if (operator_norm(xi) > res.bound) ++violations;
    }
    res.violation_rate = static_cast<double>(violations) / trials;
    return res;
}

}  // namespace graphsim
