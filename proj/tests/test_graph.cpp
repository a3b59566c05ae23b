#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "graphsim/graph.hpp"
#include "graphsim/rng.hpp"
#include "test_util.hpp"

using namespace graphsim;
using testutil::to_eigen;

TEST_CASE("generators edge counts") {
    CHECK(cycle_graph(4).edges.size() == 4);
    CHECK(path_graph(3).edges.size() == 2);
    CHECK(complete_graph(5).edges.size() == 10);
    CHECK(grid_graph(2, 3).edges.size() == 7);
    CHECK_THROWS_AS(path_graph(1), std::invalid_argument);
    CHECK_THROWS_AS(erdos_renyi_graph(10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("erdos_renyi deterministic per seed") {
    const Graph a = erdos_renyi_graph(30, 0.2, 99);
    const Graph b = erdos_renyi_graph(30, 0.2, 99);
    const Graph c = erdos_renyi_graph(30, 0.2, 100);
    CHECK(a.edges == b.edges);
    CHECK(a.edges != c.edges);
}

TEST_CASE("laplacian of path(3)") {
    const SymMatrix L = laplacian(path_graph(3));
    const double want[3][3] = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(L(i, j) == want[i][j]);
}

TEST_CASE("laplacian eigenvalues: complete(3) and cycle(4)") {
    // brute-force oracle: Eigen's solver
    auto eigs = [](const SymMatrix& M) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(M));
        return es.eigenvalues();
    };
    const auto k3 = eigs(laplacian(complete_graph(3)));
    CHECK(k3(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(k3(1) == doctest::Approx(3.0));
    CHECK(k3(2) == doctest::Approx(3.0));

    const auto c4 = eigs(laplacian(cycle_graph(4)));
    CHECK(c4(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(c4(1) == doctest::Approx(2.0));
    CHECK(c4(2) == doctest::Approx(2.0));
    CHECK(c4(3) == doctest::Approx(4.0));
    // cross-check the closed form 2 - 2 cos(2 pi k / 4)
    for (int k = 0; k < 4; ++k) {
        const double lam = 2.0 - 2.0 * std::cos(2.0 * M_PI * ((k + 1) / 2) / 4.0);
        CHECK(c4(k) == doctest::Approx(lam).epsilon(1e-9));
    }
}

TEST_CASE("laplacian row sums vanish, kernel holds all-ones") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = erdos_renyi_graph(12, 0.3, rng.next_u64());
        const SymMatrix L = laplacian(g);
        for (int i = 0; i < g.m; ++i) {
            double row = 0.0;
            for (int j = 0; j < g.m; ++j) row += L(i, j);
            CHECK(std::fabs(row) <= 1e-12);
        }
        const auto d = sym_eig(L);
        CHECK(d.eigenvalues.front() >= -1e-10);
    }
}

TEST_CASE("zero eigenvalue multiplicity equals component count") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 5 + static_cast<int>(rng.next_below(12));
        const Graph g = erdos_renyi_graph(m, 0.08 + 0.2 * rng.next_double(), rng.next_u64());
        const SymMatrix L = laplacian(g);
        const auto d = sym_eig(L);
        const double tol = 1e-9 * std::max(d.eigenvalues.back(), 1.0);
        int zeros = 0;
        for (double l : d.eigenvalues)
            if (l <= tol) ++zeros;
        CHECK(zeros == count_components(g));
    }
}

TEST_CASE("make_smoothing d=1 p=1 reproduces the laplacian") {
    const SymMatrix L = laplacian(cycle_graph(8));
    const SmoothingOperator W = make_smoothing(L, 1.0, 1.0);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(W.W(i, j) == doctest::Approx(L(i, j)).epsilon(1e-10));
    CHECK(W.k0 == 2);  // connected graph: exactly one zero eigenvalue
}

TEST_CASE("make_smoothing cycle(4) p=2 squares the eigenvalues") {
    const SmoothingOperator W = make_smoothing(laplacian(cycle_graph(4)), 1.0, 2.0);
    CHECK(W.lambda(1) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(W.lambda(2) == doctest::Approx(4.0));
    CHECK(W.lambda(3) == doctest::Approx(4.0));
    CHECK(W.lambda(4) == doctest::Approx(16.0));
}

TEST_CASE("make_smoothing scales linearly in d") {
    const SymMatrix L = laplacian(path_graph(6));
    const SmoothingOperator W1 = make_smoothing(L, 1.0, 1.5);
    const SmoothingOperator W2 = make_smoothing(L, 2.0, 1.5);
    for (int k = 1; k <= 6; ++k)
        CHECK(W2.lambda(k) == doctest::Approx(2.0 * W1.lambda(k)).epsilon(1e-12));
}

TEST_CASE("make_smoothing rejects indefinite input") {
    SymMatrix M(2);
    M.set(0, 0, 1.0);
    M.set(1, 1, -1.0);
    CHECK_THROWS_AS(make_smoothing(M, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_smoothing(laplacian(path_graph(3)), -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("check_spectral_conditions on synthetic k^2 spectrum") {
    // direct-summation oracle for lambda_k = k^2, k = 1..100
    std::vector<double> lam(100);
    for (int k = 1; k <= 100; ++k) lam[k - 1] = static_cast<double>(k) * k;
    const auto rep = check_spectral_conditions(lam, 1, 100, 2.0);
    CHECK(rep.min_c_sum <= 2.0);
    CHECK(rep.min_c_sum >= 1.0 - 1e-12);
    CHECK(rep.monotone_ok);
    CHECK(rep.zeta_ok);
    // independent oracle at s = 1: sum 1/k^2 <= pi^2/6
    double s1 = 0.0;
    for (int k = 1; k <= 100; ++k) s1 += 1.0 / (static_cast<double>(k) * k);
    CHECK(rep.min_c_sum >= s1 - 1e-12);  // the s=1 term is in the max
}

TEST_CASE("check_spectral_conditions flat spectrum") {
    std::vector<double> lam(20, 1.0);
    const auto rep = check_spectral_conditions(lam, 1, 20, 1.0);
    CHECK_FALSE(rep.monotone_ok);  // s / 1 is increasing
    CHECK(rep.min_c_sum == doctest::Approx(20.0));  // s = k0 = 1: (1/1) * sum of 20 ones
    CHECK(rep.min_c_ratio == doctest::Approx(1.0));
}

TEST_CASE("check_spectral_conditions cycle(100) zeta envelope") {
    const SmoothingOperator W = make_smoothing(laplacian(cycle_graph(100)), 1.0, 1.0);
    const auto rep = check_spectral_conditions(W, 2.0);
    CHECK(rep.zeta_ok);  // lambda_max = 4 <= 100^2, lambda_{k0} ~ 3.9e-3 >= 1e-4
    CHECK(W.lambda(W.k0) ==
          doctest::Approx(2.0 - 2.0 * std::cos(2.0 * M_PI / 100.0)).epsilon(1e-9));
}

TEST_CASE("sobolev identity via eigenfunction differences") {
    // ||Delta^{1/2} S||_2^2 == sum_k mu_k^2 sum_{u~v} (psi_k(u) - psi_k(v))^2
    SplitMix64 rng(61);
    const Graph g = erdos_renyi_graph(10, 0.4, 17);
    const SymMatrix L = laplacian(g);
    const SymMatrix S = testutil::random_symmetric(10, rng);
    const auto sd = sym_eig(S);

    double via_edges = 0.0;
    for (int k = 0; k < 10; ++k) {
        double rough = 0.0;
        for (auto [u, v] : g.edges) {
            const double diff = sd.vec(k, u) - sd.vec(k, v);
            rough += diff * diff;
        }
        via_edges += sd.eigenvalues[k] * sd.eigenvalues[k] * rough;
    }

    const auto LS = matmul(L, S);
    double via_trace = 0.0;
    for (int u = 0; u < 10; ++u)
        for (int v = 0; v < 10; ++v) via_trace += LS[static_cast<std::size_t>(u) * 10 + v] * S(v, u);
    CHECK(via_trace == doctest::Approx(via_edges).epsilon(1e-8));
}
