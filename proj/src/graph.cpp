#include "graphsim/graph.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphsim/rng.hpp"

namespace graphsim {

namespace {
void require_m(int m) {
    if (m < 2) throw std::invalid_argument("graph: m must be >= 2");
}
}  // namespace

Graph path_graph(int m) {
    require_m(m);
    Graph g{m, {}};
    for (int i = 0; i + 1 < m; ++i) g.edges.emplace_back(i, i + 1);
    return g;
}

Graph cycle_graph(int m) {
    require_m(m);
    Graph g = path_graph(m);
    if (m > 2) g.edges.emplace_back(0, m - 1);
    return g;
}

Graph grid_graph(int a, int b) {
    if (a < 1 || b < 1 || a * b < 2) throw std::invalid_argument("grid: need a*b >= 2");
    Graph g{a * b, {}};
    auto id = [b](int i, int j) { return i * b + j; };
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            if (j + 1 < b) g.edges.emplace_back(id(i, j), id(i, j + 1));
            if (i + 1 < a) g.edges.emplace_back(id(i, j), id(i + 1, j));
        }
    return g;
}

Graph complete_graph(int m) {
    require_m(m);
    Graph g{m, {}};
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) g.edges.emplace_back(u, v);
    return g;
}

Graph erdos_renyi_graph(int m, double prob, std::uint64_t seed) {
    require_m(m);
    if (!(prob > 0.0 && prob < 1.0))
        throw std::invalid_argument("erdos_renyi: prob must be in (0,1)");
    Graph g{m, {}};
    SplitMix64 rng(seed);
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (rng.next_double() < prob) g.edges.emplace_back(u, v);
    return g;
}

SymMatrix laplacian(const Graph& g) {
    SymMatrix L(g.m);
    for (auto [u, v] : g.edges) {
        if (u < 0 || v < 0 || u >= g.m || v >= g.m || u == v)
            throw std::invalid_argument("laplacian: bad edge");
        L.add(u, v, -1.0);
        L.add(u, u, 1.0);
        L.add(v, v, 1.0);
    }
    return L;
}

int count_components(const Graph& g) {
    std::vector<int> parent(g.m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = g.m;
    for (auto [u, v] : g.edges) {
        int ru = find(u), rv = find(v);
        if (ru != rv) {
            parent[ru] = rv;
            --comps;
        }
    }
    return comps;
}

SmoothingOperator make_smoothing(const SymMatrix& lap, double d, double p) {
    if (!(d > 0.0) || !(p > 0.0))
        throw std::invalid_argument("make_smoothing: d and p must be > 0");
    auto eig = sym_eig(lap);
    const double top = std::max(std::fabs(eig.eigenvalues.front()),
                                std::fabs(eig.eigenvalues.back()));
    for (double l : eig.eigenvalues)
        if (l < -1e-8 * std::max(top, 1.0))
            throw std::invalid_argument("make_smoothing: input is not positive semidefinite");

    std::vector<double> powered(eig.eigenvalues.size());
    for (std::size_t k = 0; k < powered.size(); ++k) {
        const double l = std::max(eig.eigenvalues[k], 0.0);  // clip rounding
        powered[k] = d * std::pow(l, p);
    }

    SmoothingOperator W;
    W.d = d;
    W.p = p;
    W.W = eig.assemble(powered);
    W.decomposition = eig;
    W.decomposition.eigenvalues = powered;
    const double pos_tol = 1e-10 * std::max(powered.back(), 1.0);
    W.k0 = static_cast<int>(powered.size()) + 1;
    for (std::size_t k = 0; k < powered.size(); ++k)
        if (powered[k] > pos_tol) {
            W.k0 = static_cast<int>(k) + 1;
            break;
        }
    return W;
}

SpectralConditionReport check_spectral_conditions(const std::vector<double>& lambda,
                                                  int k0, int m_for_zeta, double zeta) {
    if (!(zeta >= 1.0)) throw std::invalid_argument("check_spectral_conditions: zeta must be >= 1");
    const int m = static_cast<int>(lambda.size());
    SpectralConditionReport rep;
    rep.zeta = zeta;

    const double mz = std::pow(static_cast<double>(m_for_zeta), zeta);
    rep.zeta_ok = (k0 <= m) && (lambda[m - 1] <= mz) && (lambda[k0 - 1] >= 1.0 / mz);

    // min_c_sum: suffix sums of 1/lambda from the back
    rep.min_c_sum = 0.0;
    double suffix = 0.0;
    std::vector<double> suf(m + 1, 0.0);
    for (int k = m; k >= k0; --k) {
        suffix += 1.0 / lambda[k - 1];
        suf[k] = suffix;
    }
    for (int s = k0; s <= m; ++s)
        rep.min_c_sum = std::max(rep.min_c_sum, lambda[s - 1] / s * suf[s]);

    rep.min_c_ratio = 0.0;
    for (int k = k0; k <= m - 1; ++k)
        rep.min_c_ratio = std::max(rep.min_c_ratio, lambda[k] / lambda[k - 1]);

    rep.monotone_ok = true;
    for (int s = k0; s <= m - 1; ++s) {
        const double cur = s / lambda[s - 1];
        const double nxt = (s + 1) / lambda[s];
        if (nxt > cur * (1.0 + 1e-12)) {
            rep.monotone_ok = false;
            break;
        }
    }
    return rep;
}

SpectralConditionReport check_spectral_conditions(const SmoothingOperator& W, double zeta) {
    return check_spectral_conditions(W.decomposition.eigenvalues, W.k0, W.dim(), zeta);
}

}  // namespace graphsim
