import numpy as np
import pytest

import graphsim as gs


def test_sym_eig_roundtrip():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((8, 8))
    a = 0.5 * (a + a.T)
    vals, vecs = gs.sym_eig(a)
    assert np.all(np.diff(vals) >= -1e-12)
    np.testing.assert_allclose(vecs @ np.diag(vals) @ vecs.T, a, atol=1e-9)
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(8), atol=1e-9)


def test_schatten_norms():
    d = np.diag([3.0, -4.0])
    assert gs.schatten_norm(d, 1.0) == pytest.approx(7.0)
    assert gs.schatten_norm(d, 2.0) == pytest.approx(5.0)
    assert gs.schatten_norm(d, None) == pytest.approx(4.0)


def test_soft_threshold():
    d = np.diag([3.0, 1.0, -0.5])
    out = gs.spectral_soft_threshold(d, 1.0)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(out)), [0.0, 0.0, 2.0], atol=1e-9)


def test_laplacian_and_smoothing():
    lap = gs.laplacian("cycle", m=6)
    assert lap.shape == (6, 6)
    np.testing.assert_allclose(lap.sum(axis=1), np.zeros(6), atol=1e-12)
    w, k0 = gs.smoothing_operator(lap, d=2.0, p=1.0)
    np.testing.assert_allclose(w, 2.0 * lap, atol=1e-9)
    assert k0 == 2


def test_end_to_end_estimation():
    lap = gs.laplacian("cycle", m=10)
    target = gs.make_target(lap, 1.0, 1.0, [(1, 1.0)], scale_to=0.9)
    assert np.abs(target).max() == pytest.approx(0.9)

    prof = gs.coherence_profile(target, lap)
    assert prof["phi_bar"][-1] == pytest.approx(1.0, abs=1e-9)
    assert prof["nu_weak"] >= 1.0 - 1e-9

    triples = gs.sample_dataset(target, 60000, seed=3)
    assert triples.shape == (60000, 3)
    assert set(np.unique(triples[:, 2])) <= {-1, 1}

    b = gs.design_stat(triples, 10)
    eps = gs.choose_epsilon(60000, 10, 2.3026)
    res = gs.fit(b, eps, epsbar=0.2, laplacian=lap)
    assert res["converged"]
    err = gs.error_l2(res["S_hat"], target)
    assert err <= gs.klt_rhs(eps, 1, 10)
    assert err <= 0.01


def test_determinism():
    lap = gs.laplacian("cycle", m=8)
    target = gs.make_target(lap, 1.0, 1.0, [(1, 1.0)])
    a = gs.sample_dataset(target, 500, seed=9)
    b = gs.sample_dataset(target, 500, seed=9)
    assert np.array_equal(a, b)


def test_bound_helpers():
    assert gs.t_nm(10000, 50, 1.0, 1.0) == pytest.approx(8.854, abs=1e-3)
    assert gs.bernstein_hilbert_rhs(1.0, 1.0, 7, 7.0) == pytest.approx(2.0)
    assert gs.bernstein_operator_rhs(1.0, 1.0, 100, 1, np.log(2.0)) == pytest.approx(
        2.0 * np.sqrt(2.0 * np.log(2.0) / 100.0)
    )
