#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphsim/bounds.hpp"
#include "graphsim/estimator.hpp"
#include "graphsim/graph.hpp"
#include "graphsim/io.hpp"
#include "graphsim/kernels.hpp"
#include "graphsim/sampling.hpp"

namespace py = pybind11;
using namespace graphsim;

namespace {

SymMatrix to_symmat(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw py::value_error("expected a square 2d array");
    const int m = static_cast<int>(a.shape(0));
    SymMatrix M(m);
    auto r = a.unchecked<2>();
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            if (std::abs(r(i, j) - r(j, i)) > 1e-12)
                throw py::value_error("matrix is not symmetric within 1e-12");
            M.set(i, j, r(i, j));
        }
    return M;
}

py::array_t<double> to_numpy(const SymMatrix& M) {
    const int m = M.dim();
    py::array_t<double> out({m, m});
    auto w = out.mutable_unchecked<2>();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) w(i, j) = M(i, j);
    return out;
}

py::array_t<double> vectors_to_numpy(const SpectralDecomposition& d) {
    const int m = d.dim;
    py::array_t<double> out({m, m});
    auto w = out.mutable_unchecked<2>();
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) w(i, k) = d.vec(k, i);  // column k = eigenvector k
    return out;
}

Graph make_graph(const std::string& kind, int m, double prob, std::uint64_t seed, int a, int b) {
    if (kind == "path") return path_graph(m);
    if (kind == "cycle") return cycle_graph(m);
    if (kind == "complete") return complete_graph(m);
    if (kind == "grid") return grid_graph(a, b);
    if (kind == "erdos_renyi") return erdos_renyi_graph(m, prob, seed);
    throw py::value_error("unknown graph kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "low-rank graph-smooth similarity kernel estimation";

    using NpArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

    mod.def(
        "sym_eig",
        [](const NpArray& a) {
            const auto d = sym_eig(to_symmat(a));
            py::array_t<double> vals({static_cast<py::ssize_t>(d.eigenvalues.size())},
                                     {static_cast<py::ssize_t>(sizeof(double))},
                                     d.eigenvalues.data());
            return py::make_tuple(vals, vectors_to_numpy(d));
        },
        py::arg("matrix"),
        "Eigenvalues ascending and eigenvectors (columns) of a symmetric matrix");

    mod.def(
        "schatten_norm",
        [](const NpArray& a, py::object p) {
            const double pv = p.is_none() ? kOperatorNorm : p.cast<double>();
            return schatten_norm(to_symmat(a), pv);
        },
        py::arg("matrix"), py::arg("p") = 1.0, "Schatten p-norm; p=None gives the operator norm");

    mod.def(
        "spectral_soft_threshold",
        [](const NpArray& a, double tau) { return to_numpy(spectral_soft_threshold(to_symmat(a), tau)); },
        py::arg("matrix"), py::arg("tau"));

    mod.def(
        "laplacian",
        [](const std::string& kind, int m, double prob, std::uint64_t seed, int a, int b) {
            return to_numpy(laplacian(make_graph(kind, m, prob, seed, a, b)));
        },
        py::arg("kind"), py::arg("m") = 0, py::arg("prob") = 0.1, py::arg("seed") = 1,
        py::arg("a") = 0, py::arg("b") = 0, "Graph Laplacian of a generated graph");

    mod.def(
        "smoothing_operator",
        [](const NpArray& lap, double d, double p) {
            const auto W = make_smoothing(to_symmat(lap), d, p);
            return py::make_tuple(to_numpy(W.W), W.k0);
        },
        py::arg("laplacian"), py::arg("d") = 1.0, py::arg("p") = 1.0,
        "(W = d Delta^p, k0) for a PSD Laplacian");

    mod.def(
        "make_target",
        [](const NpArray& lap, double d, double p,
           const std::vector<std::pair<int, double>>& modes, double scale_to) {
            const auto W = make_smoothing(to_symmat(lap), d, p);
            return to_numpy(make_target(W.decomposition, modes, scale_to).S);
        },
        py::arg("laplacian"), py::arg("d"), py::arg("p"), py::arg("modes"),
        py::arg("scale_to") = 0.9);

    mod.def(
        "coherence_profile",
        [](const NpArray& target, const NpArray& lap, double d, double p) {
            const auto W = make_smoothing(to_symmat(lap), d, p);
            const auto kernel = make_similarity_kernel(to_symmat(target));
            const auto coh = coherence_coefficients(kernel, W);
            py::dict out;
            out["phi_bar"] = coh.phi_bar;
            out["F"] = coh.F;
            out["max_diag_coherence"] = coh.max_diag_coherence;
            out["nu_weak"] = coh.nu_weak;
            out["nu_pointwise"] = coh.nu_pointwise;
            out["nu_sign"] = coh.nu_sign;
            return out;
        },
        py::arg("target"), py::arg("laplacian"), py::arg("d") = 1.0, py::arg("p") = 1.0);

    mod.def(
        "sample_dataset",
        [](const NpArray& target, int n, std::uint64_t seed) {
            const auto ds = sample_dataset(make_similarity_kernel(to_symmat(target)), n, seed);
            py::array_t<int> out({n, 3});
            auto w = out.mutable_unchecked<2>();
            for (int j = 0; j < n; ++j) {
                w(j, 0) = ds.triples[j].u;
                w(j, 1) = ds.triples[j].v;
                w(j, 2) = ds.triples[j].y;
            }
            return out;
        },
        py::arg("target"), py::arg("n"), py::arg("seed"), "(n,3) array of (u, v, y) triples");

    mod.def(
        "design_stat",
        [](const py::array_t<int, py::array::c_style | py::array::forcecast>& triples, int m) {
            if (triples.ndim() != 2 || triples.shape(1) != 3)
                throw py::value_error("expected an (n,3) integer array");
            Dataset ds;
            ds.n = static_cast<int>(triples.shape(0));
            ds.m = m;
            auto r = triples.unchecked<2>();
            for (int j = 0; j < ds.n; ++j) ds.triples.push_back({r(j, 0), r(j, 1), r(j, 2)});
            return to_numpy(design_stat(ds, m));
        },
        py::arg("triples"), py::arg("m"));

    mod.def("choose_epsilon", &choose_epsilon, py::arg("n"), py::arg("m"), py::arg("t"));
    mod.def("t_nm", &t_nm, py::arg("n"), py::arg("m"), py::arg("t"), py::arg("zeta") = 1.0);
    mod.def("klt_rhs", &klt_rhs, py::arg("epsilon"), py::arg("r"), py::arg("m"));
    mod.def("bernstein_operator_rhs", &bernstein_operator_rhs, py::arg("sigma"), py::arg("U"),
            py::arg("n"), py::arg("m"), py::arg("t"));
    mod.def("bernstein_hilbert_rhs", &bernstein_hilbert_rhs, py::arg("sigma"), py::arg("U"),
            py::arg("n"), py::arg("t"));

    mod.def(
        "fit",
        [](const NpArray& B, double epsilon, double epsbar, py::object lap, double d, double p,
           int max_iters) {
            EstimatorConfig cfg;
            cfg.epsilon = epsilon;
            cfg.epsbar = epsbar;
            cfg.max_iters = max_iters;
            if (epsbar > 0.0) {
                if (lap.is_none())
                    throw py::value_error("epsbar > 0 requires a laplacian");
                cfg.W = make_smoothing(to_symmat(lap.cast<NpArray>()), d, p);
            }
            const auto res = fit(to_symmat(B), cfg);
            py::dict out;
            out["S_hat"] = to_numpy(res.S_hat);
            out["iterations"] = res.iterations;
            out["kkt_residual"] = res.kkt_residual;
            out["converged"] = res.converged;
            out["objective"] = res.objective_trace.back();
            return out;
        },
        py::arg("B"), py::arg("epsilon"), py::arg("epsbar") = 0.0, py::arg("laplacian") = py::none(),
        py::arg("d") = 1.0, py::arg("p") = 1.0, py::arg("max_iters") = 5000,
        "Penalized least-squares fit from the design statistic B");

    mod.def(
        "error_l2",
        [](const NpArray& a, const NpArray& b) { return error_l2(to_symmat(a), to_symmat(b)); },
        py::arg("S_hat"), py::arg("S_star"));
}
