#pragma once

#include <utility>
#include <vector>

#include "graphsim/graph.hpp"
#include "graphsim/symmat.hpp"

namespace graphsim {

/// Symmetric kernel with entries in [-1, 1], together with its support
/// projector, sign matrix and spectral decomposition.
struct SimilarityKernel {
    SymMatrix S;
    SupportInfo support;
    SpectralDecomposition spectral;

    int dim() const { return S.dim(); }
    int rank() const { return support.rank; }
};

SimilarityKernel make_similarity_kernel(const SymMatrix& S);

/// S = c * sum_k weight_k (phi_{idx_k} x phi_{idx_k}) over eigenvectors of
/// the given basis, rescaled so the largest entry magnitude is scale_to.
/// Indices are 0-based into the ascending eigenvalue order.
SimilarityKernel make_target(const SpectralDecomposition& basis,
                             const std::vector<std::pair<int, double>>& modes,
                             double scale_to);

/// Coherence diagnostics of a target against W's eigenbasis.
struct CoherenceProfile {
    std::vector<double> phi_bar;  // size m+1, phi_bar[0] = 0
    std::vector<double> F;        // partial sums, F[0] = 0, F[j] = sum_{i<=j} ||P_L phi_i||^2
    double max_diag_coherence = 0.0;  // max_v ||P_L e_v||^2
    double nu_weak = 0.0;             // smallest nu with F_k <= nu r k / m
    double nu_pointwise = 0.0;        // smallest nu with ||P_L phi_k||^2 <= nu r / m
    double nu_sign = 0.0;             // smallest nu with sign(S)(u,v)^2 <= nu r / m^2
};

/// phi_bar(k) = max_{t<=k} t * max_{j>=t} (1/j) F_j, by the literal double loop.
CoherenceProfile coherence_function(const SimilarityKernel& target, const SmoothingOperator& W);

/// Fills the nu fields (requires rank >= 1); phi_bar/F as in coherence_function.
CoherenceProfile coherence_coefficients(const SimilarityKernel& target, const SmoothingOperator& W);

double l2_pi2_norm_sq(const SymMatrix& S);
double l2_pi2_inner(const SymMatrix& S1, const SymMatrix& S2);

/// ||W^{1/2} S||_2^2 = tr(W S^2); normalized divides by m^2.
double sobolev_norm_sq(const SymMatrix& S, const SmoothingOperator& W, bool normalized);

}  // namespace graphsim
