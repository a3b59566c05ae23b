#pragma once

#include <cstdint>
#include <vector>

#include "graphsim/kernels.hpp"
#include "graphsim/symmat.hpp"

namespace graphsim {

struct Observation {
    int u;
    int v;
    int y;  // -1 or +1
};

/// n i.i.d. triples (u, v, y); u and v independent uniform on vertices,
/// u == v allowed. seed = 0 marks externally loaded data.
struct Dataset {
    int n = 0;
    int m = 0;
    std::vector<Observation> triples;
    std::uint64_t seed = 0;
};

/// Label law P(y = +1 | u, v) = (1 + S(u,v)) / 2.
Dataset sample_dataset(const SimilarityKernel& target, int n, std::uint64_t seed);

/// B = (1/n) sum_j y_j E_{u_j, v_j}, with E_{u,v} = (e_u x e_v + e_v x e_u)/2.
SymMatrix design_stat(const Dataset& ds, int m);

/// Xi = B - E[Y E_{X,X'}] = B - S / m^2.
SymMatrix noise_matrix(const Dataset& ds, const SimilarityKernel& target);

/// Operator Bernstein tail: 2 (sigma sqrt((t+log 2m)/n) v U (t+log 2m)/n).
double bernstein_operator_rhs(double sigma, double U, int n, int m, double t);

/// Hilbert-space Bernstein tail: 2 (sigma sqrt(t/n) v U t/n).
double bernstein_hilbert_rhs(double sigma, double U, int n, double t);

struct ConcentrationResult {
    double violation_rate = 0.0;
    double bound = 0.0;  // the operator-Bernstein RHS with sigma^2 = 1/m, U = 2
};

/// Samples `trials` datasets and reports the fraction with ||Xi|| above the
/// operator-Bernstein RHS. Requires n >= 2 m (t + log 2m).
ConcentrationResult verify_xi_concentration(const SimilarityKernel& target, int n, double t,
                                            int trials, std::uint64_t seed);

}  // namespace graphsim
