#include "graphsim/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graphsim {

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
    if (o.m_ != m_) throw std::invalid_argument("SymMatrix: dim mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
    if (o.m_ != m_) throw std::invalid_argument("SymMatrix: dim mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double c) {
    for (auto& x : a_) x *= c;
    return *this;
}

bool SymMatrix::all_finite() const {
    for (double x : a_)
        if (!std::isfinite(x)) return false;
    return true;
}

SymMatrix SpectralDecomposition::assemble(const std::vector<double>& new_eigs) const {
    const int m = dim;
    SymMatrix out(m);
    auto& a = out.raw();
    for (int k = 0; k < m; ++k) {
        const double s = new_eigs[k];
        if (s == 0.0) continue;
        const double* v = &vectors[static_cast<std::size_t>(k) * m];
        for (int i = 0; i < m; ++i) {
            const double svi = s * v[i];
            double* row = &a[static_cast<std::size_t>(i) * m];
            for (int j = 0; j < m; ++j) row[j] += svi * v[j];
        }
    }
    // symmetrize away rounding asymmetry
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double x = 0.5 * (out(i, j) + out(j, i));
            out.set(i, j, x);
        }
    return out;
}

namespace {

// canonical sign: first component exceeding a relative cutoff made positive
void canonicalize_sign(double* v, int m) {
    double amax = 0.0;
    for (int i = 0; i < m; ++i) amax = std::max(amax, std::fabs(v[i]));
    if (amax == 0.0) return;
    for (int i = 0; i < m; ++i) {
        if (std::fabs(v[i]) > 1e-12 * amax) {
            if (v[i] < 0.0)
                for (int j = 0; j < m; ++j) v[j] = -v[j];
            return;
        }
    }
}

}  // namespace

SpectralDecomposition sym_eig(const SymMatrix& M) {
    if (!M.all_finite()) throw std::invalid_argument("sym_eig: non-finite entries");
    const int m = M.dim();
    std::vector<double> a = M.data();
    std::vector<double> v(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i) * m + i] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * m + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * m + j]; };

    const int max_sweeps = 30;
    bool converged = (m == 1);
    for (int sweep = 1; sweep <= max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m - 1; ++p)
            for (int q = p + 1; q < m; ++q) off += std::fabs(A(p, q));
        if (off == 0.0) {
            converged = true;
            break;
        }
        const double tresh = (sweep < 4) ? 0.2 * off / (m * m) : 0.0;
        for (int p = 0; p < m - 1; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const double g = 100.0 * std::fabs(A(p, q));
                if (sweep > 4 && std::fabs(A(p, p)) + g == std::fabs(A(p, p)) &&
                    std::fabs(A(q, q)) + g == std::fabs(A(q, q))) {
                    A(p, q) = A(q, p) = 0.0;
                } else if (std::fabs(A(p, q)) > tresh) {
                    const double h = A(q, q) - A(p, p);
                    double t;
                    if (std::fabs(h) + g == std::fabs(h)) {
                        t = A(p, q) / h;
                    } else {
                        const double theta = 0.5 * h / A(p, q);
                        t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                        if (theta < 0.0) t = -t;
                    }
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const double tau = s / (1.0 + c);
                    const double apq = A(p, q);
                    A(p, p) -= t * apq;
                    A(q, q) += t * apq;
                    A(p, q) = A(q, p) = 0.0;
                    for (int r = 0; r < m; ++r) {
                        if (r != p && r != q) {
                            const double arp = A(r, p), arq = A(r, q);
                            A(r, p) = A(p, r) = arp - s * (arq + tau * arp);
                            A(r, q) = A(q, r) = arq + s * (arp - tau * arq);
                        }
                        const double vrp = V(r, p), vrq = V(r, q);
                        V(r, p) = vrp - s * (vrq + tau * vrp);
                        V(r, q) = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (int p = 0; p < m - 1; ++p)
            for (int q = p + 1; q < m; ++q) off += std::fabs(a[static_cast<std::size_t>(p) * m + q]);
        if (off != 0.0) throw EigFailure(max_sweeps);
    }

    SpectralDecomposition out;
    out.dim = m;
    out.eigenvalues.resize(m);
    out.vectors.resize(static_cast<std::size_t>(m) * m);
    std::vector<double> cols(static_cast<std::size_t>(m) * m);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            cols[static_cast<std::size_t>(k) * m + i] = v[static_cast<std::size_t>(i) * m + k];
    for (int k = 0; k < m; ++k) canonicalize_sign(&cols[static_cast<std::size_t>(k) * m], m);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        const double lx = a[static_cast<std::size_t>(x) * m + x];
        const double ly = a[static_cast<std::size_t>(y) * m + y];
        if (lx != ly) return lx < ly;
        // tie: lexicographic eigenvector order, for reproducibility
        const double* vx = &cols[static_cast<std::size_t>(x) * m];
        const double* vy = &cols[static_cast<std::size_t>(y) * m];
        return std::lexicographical_compare(vx, vx + m, vy, vy + m);
    });
    for (int k = 0; k < m; ++k) {
        const int src = order[k];
        out.eigenvalues[k] = a[static_cast<std::size_t>(src) * m + src];
        std::copy_n(&cols[static_cast<std::size_t>(src) * m], m,
                    &out.vectors[static_cast<std::size_t>(k) * m]);
    }
    return out;
}

double schatten_norm(const SymMatrix& M, double p) {
    if (p == kOperatorNorm) return operator_norm(M);
    if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
    if (p == 2.0) return frobenius_norm(M);
    const auto eig = sym_eig(M);
    double s = 0.0;
    for (double x : eig.eigenvalues) s += std::pow(std::fabs(x), p);
    return std::pow(s, 1.0 / p);
}

double operator_norm(const SymMatrix& M) {
    const auto eig = sym_eig(M);
    double s = 0.0;
    for (double x : eig.eigenvalues) s = std::max(s, std::fabs(x));
    return s;
}

double frobenius_norm(const SymMatrix& M) {
    double s = 0.0;
    for (double x : M.data()) s += x * x;
    return std::sqrt(s);
}

SymMatrix spectral_soft_threshold(const SymMatrix& M, double tau) {
    if (tau < 0.0) throw std::invalid_argument("spectral_soft_threshold: tau < 0");
    if (tau == 0.0) return M;
    auto eig = sym_eig(M);
    std::vector<double> shrunk(eig.eigenvalues.size());
    for (std::size_t k = 0; k < shrunk.size(); ++k) {
        const double s = eig.eigenvalues[k];
        const double mag = std::fabs(s) - tau;
        shrunk[k] = mag > 0.0 ? (s > 0.0 ? mag : -mag) : 0.0;
    }
    return eig.assemble(shrunk);
}

SupportInfo sign_and_support(const SymMatrix& M, double zero_tol) {
    if (!(zero_tol > 0.0)) throw std::invalid_argument("sign_and_support: zero_tol must be > 0");
    auto eig = sym_eig(M);
    const int m = M.dim();
    SupportInfo info;
    info.projector = SymMatrix(m);
    info.sign_matrix = SymMatrix(m);
    std::vector<double> ones(m, 0.0), signs(m, 0.0);
    for (int k = 0; k < m; ++k) {
        const double s = eig.eigenvalues[k];
        if (std::fabs(s) > zero_tol) {
            ++info.rank;
            ones[k] = 1.0;
            signs[k] = s > 0.0 ? 1.0 : -1.0;
        }
    }
    info.projector = eig.assemble(ones);
    info.sign_matrix = eig.assemble(signs);
    return info;
}

double default_zero_tol(const SymMatrix& M) {
    return 1e-8 * std::max(operator_norm(M), 1e-300);
}

std::vector<double> matmul(const SymMatrix& A, const SymMatrix& B) {
    if (A.dim() != B.dim()) throw std::invalid_argument("matmul: dim mismatch");
    const int m = A.dim();
    const auto& a = A.data();
    const auto& b = B.data();
    std::vector<double> c(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        double* ci = &c[static_cast<std::size_t>(i) * m];
        for (int k = 0; k < m; ++k) {
            const double aik = a[static_cast<std::size_t>(i) * m + k];
            if (aik == 0.0) continue;
            const double* bk = &b[static_cast<std::size_t>(k) * m];
            for (int j = 0; j < m; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

double frobenius_inner(const SymMatrix& A, const SymMatrix& B) {
    if (A.dim() != B.dim()) throw std::invalid_argument("frobenius_inner: dim mismatch");
    double s = 0.0;
    const auto& a = A.data();
    const auto& b = B.data();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

SymMatrix proj_support_perp(const SymMatrix& P_L, const SymMatrix& A) {
    const int m = A.dim();
    SymMatrix Pp = SymMatrix::identity(m);
    Pp -= P_L;
    const auto t = matmul(Pp, A);
    SymMatrix T(m);
    // T = Pp * A * Pp
    {
        auto& out = T.raw();
        const auto& p = Pp.data();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double s = 0.0;
                for (int k = 0; k < m; ++k)
                    s += t[static_cast<std::size_t>(i) * m + k] * p[static_cast<std::size_t>(k) * m + j];
                out[static_cast<std::size_t>(i) * m + j] = s;
            }
    }
    // symmetrize rounding
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) T.set(i, j, 0.5 * (T(i, j) + T(j, i)));
    return T;
}

SymMatrix proj_support(const SymMatrix& P_L, const SymMatrix& A) {
    SymMatrix out = A;
    out -= proj_support_perp(P_L, A);
    return out;
}

}  // namespace graphsim
