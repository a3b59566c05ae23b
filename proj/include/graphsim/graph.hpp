#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphsim/symmat.hpp"

namespace graphsim {

/// Simple undirected graph: no self-loops, no duplicate edges.
struct Graph {
    int m = 0;
    std::vector<std::pair<int, int>> edges;  // each pair with u < v
};

Graph path_graph(int m);
Graph cycle_graph(int m);
Graph grid_graph(int a, int b);
Graph complete_graph(int m);
Graph erdos_renyi_graph(int m, double prob, std::uint64_t seed);

/// Laplacian D - A.
SymMatrix laplacian(const Graph& g);

int count_components(const Graph& g);

/// W = d * Delta^p, held together with its spectral decomposition.
/// k0 is the 1-based index of the first strictly positive eigenvalue.
struct SmoothingOperator {
    SymMatrix W;
    SpectralDecomposition decomposition;  // lambda ascending
    double d = 1.0;
    double p = 1.0;
    int k0 = 1;  // 1-based

    int dim() const { return W.dim(); }
    double lambda(int k_1based) const { return decomposition.eigenvalues[k_1based - 1]; }
    double lambda_max() const { return decomposition.eigenvalues.back(); }
};

SmoothingOperator make_smoothing(const SymMatrix& lap, double d, double p);

/// Spectral-shape diagnostics for W: the c constants from the sum and
/// ratio conditions, monotonicity of s/lambda_s, and the zeta envelope.
struct SpectralConditionReport {
    bool zeta_ok = false;
    double min_c_sum = 0.0;    // max_s (lambda_s/s) * sum_{k>=s} 1/lambda_k
    double min_c_ratio = 0.0;  // max_k lambda_{k+1}/lambda_k
    bool monotone_ok = false;  // s -> s/lambda_s nonincreasing on s >= k0
    double zeta = 1.0;
};

SpectralConditionReport check_spectral_conditions(const SmoothingOperator& W, double zeta);

/// Same report computed from a raw ascending eigenvalue list (k0 1-based).
SpectralConditionReport check_spectral_conditions(const std::vector<double>& lambda,
                                                  int k0, int m_for_zeta, double zeta);

}  // namespace graphsim
