#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphsim {

/// Dense real symmetric m x m matrix. Full storage with mirrored writes,
/// so entry(u,v) == entry(v,u) holds exactly by construction.
class SymMatrix {
 public:
    SymMatrix() : m_(0) {}
    explicit SymMatrix(int m) : m_(m), a_(static_cast<std::size_t>(m) * m, 0.0) {
        if (m < 1) throw std::invalid_argument("SymMatrix: dim must be >= 1");
    }

    static SymMatrix identity(int m) {
        SymMatrix I(m);
        for (int i = 0; i < m; ++i) I.set(i, i, 1.0);
        return I;
    }

    int dim() const { return m_; }

    double operator()(int u, int v) const { return a_[idx(u, v)]; }

    void set(int u, int v, double x) {
        a_[idx(u, v)] = x;
        a_[idx(v, u)] = x;
    }

    void add(int u, int v, double x) {
        a_[idx(u, v)] += x;
        if (u != v) a_[idx(v, u)] += x;
    }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& raw() { return a_; }

    SymMatrix& operator+=(const SymMatrix& o);
    SymMatrix& operator-=(const SymMatrix& o);
    SymMatrix& operator*=(double c);

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(SymMatrix a, double c) { return a *= c; }
    friend SymMatrix operator*(double c, SymMatrix a) { return a *= c; }

    bool all_finite() const;

 private:
    std::size_t idx(int u, int v) const {
        return static_cast<std::size_t>(u) * m_ + v;
    }
    int m_;
    std::vector<double> a_;
};

/// Eigenvalues ascending; eigenvector k (column-major block of length m)
/// paired with eigenvalue k. Signs and tie order are canonicalized so the
/// decomposition is deterministic even for repeated eigenvalues.
struct SpectralDecomposition {
    int dim = 0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> vectors;       // column k at [k*dim .. k*dim+dim)

    double vec(int k, int i) const { return vectors[static_cast<std::size_t>(k) * dim + i]; }

    /// Rebuild sum_k f_k (psi_k x psi_k) for a replacement eigenvalue list.
    SymMatrix assemble(const std::vector<double>& new_eigs) const;
    SymMatrix assemble() const { return assemble(eigenvalues); }
};

struct SupportInfo {
    int rank = 0;
    SymMatrix projector;     // P_L
    SymMatrix sign_matrix;   // sign(M)
};

struct EigFailure : std::runtime_error {
    int sweeps;
    explicit EigFailure(int s)
        : std::runtime_error("sym_eig: Jacobi failed to converge after " +
                             std::to_string(s) + " sweeps"),
          sweeps(s) {}
};

/// Cyclic Jacobi with threshold sweeps, capped at 30 sweeps.
SpectralDecomposition sym_eig(const SymMatrix& M);

inline constexpr double kOperatorNorm = std::numeric_limits<double>::infinity();

/// Schatten p-norm: p=1 nuclear, p=2 Frobenius, p=inf (kOperatorNorm) operator.
double schatten_norm(const SymMatrix& M, double p);
double operator_norm(const SymMatrix& M);
double frobenius_norm(const SymMatrix& M);

/// Exact minimizer of (1/2)||X - M||_2^2 + tau ||X||_1 over symmetric X.
SymMatrix spectral_soft_threshold(const SymMatrix& M, double tau);

/// Eigenvalues with |sigma| <= zero_tol are treated as zero.
SupportInfo sign_and_support(const SymMatrix& M, double zero_tol);

/// Default cutoff used when the caller does not supply zero_tol.
double default_zero_tol(const SymMatrix& M);

// dense helpers (results of products are not symmetric in general)
std::vector<double> matmul(const SymMatrix& A, const SymMatrix& B);
double frobenius_inner(const SymMatrix& A, const SymMatrix& B);

/// P_L-projection pair on the space of symmetric kernels:
/// proj_support(P, A)      = A - P_perp A P_perp
/// proj_support_perp(P, A) = P_perp A P_perp
SymMatrix proj_support(const SymMatrix& P_L, const SymMatrix& A);
SymMatrix proj_support_perp(const SymMatrix& P_L, const SymMatrix& A);

}  // namespace graphsim
