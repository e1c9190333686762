"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import gcsa


@pytest.fixture(scope="module")
def karate_basis():
    return gcsa.eigendecompose(gcsa.laplacian(gcsa.karate_club()))


def test_karate_fixture():
    g = gcsa.karate_club()
    assert g.n_nodes == 34
    assert len(g.edges) == 78
    assert gcsa.is_connected(g)


def test_laplacian_spectrum(karate_basis):
    lam = karate_basis.eigenvalues
    v = karate_basis.eigenvectors
    assert lam[0] == pytest.approx(0.0, abs=1e-8)
    assert np.all(np.diff(lam) >= -1e-12)
    assert np.allclose(v.T @ v, np.eye(34), atol=1e-8)


def test_hop_distance():
    g = gcsa.path_graph(5)
    assert gcsa.hop_distance(g, 0, 4) == 4
    two = gcsa.Graph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    assert gcsa.hop_distance(two, 0, 3) == gcsa.UNREACHABLE


def test_estimator_equivalence(karate_basis):
    ex = gcsa.generate_white(34, 3, seed=1)
    ey = gcsa.generate_white(34, 3, seed=2)
    forms = [
        gcsa.cross_periodogram(karate_basis, ex, ey, form=f).values.real
        for f in ("periodogram", "correlogram", "least_squares")
    ]
    assert np.allclose(forms[0], forms[1], atol=1e-10)
    assert np.allclose(forms[1], forms[2], atol=1e-10)


def test_exact_filter_matches_numpy(karate_basis):
    heat = gcsa.builtin_kernel("heat")
    rng = np.random.default_rng(3)
    x = rng.standard_normal(34)
    h = gcsa.kernel_values(heat, karate_basis)
    v = karate_basis.eigenvectors
    expected = v @ (h * (v.T @ x))
    assert np.allclose(gcsa.exact_filter(karate_basis, heat, x), expected)


def test_custom_python_kernel(karate_basis):
    k = gcsa.FilterKernel("half", lambda t: 0.5, True)
    x = np.ones(34)
    assert np.allclose(gcsa.exact_filter(karate_basis, k, x), 0.5 * x)


def test_true_gcsd_is_kernel_product(karate_basis):
    mex = gcsa.builtin_kernel("mex")
    heat = gcsa.builtin_kernel("heat")
    d = gcsa.true_gcsd(karate_basis, mex, heat)
    h1 = gcsa.kernel_values(mex, karate_basis)
    h2 = gcsa.kernel_values(heat, karate_basis)
    assert np.allclose(d.values.real, h1 * h2)


def test_generation_is_deterministic(karate_basis):
    heat = gcsa.builtin_kernel("heat")
    x1, y1 = gcsa.generate_jws_pair(karate_basis, heat, heat, 4, seed=9)
    x2, _ = gcsa.generate_jws_pair(karate_basis, heat, heat, 4, seed=9)
    assert np.array_equal(x1.data, x2.data)
    assert np.array_equal(x1.data, y1.data)  # shared input, same kernel


def test_window_bank_norms(karate_basis):
    bank = gcsa.random_window_bank(karate_basis, 10, 0.1, seed=4)
    for w in bank.windows:
        assert np.sum(w**2) == pytest.approx(34.0, rel=1e-8)


def test_wft_eigenvector_closed_form(karate_basis):
    K, idx = 10, 12
    design = gcsa.wft_design(karate_basis.lambda_max, K)
    x = karate_basis.eigenvectors[:, idx].copy()
    d = gcsa.wft_estimator(karate_basis, x, x, K)
    lam = karate_basis.eigenvalues
    for k in range(1, K + 1):
        gk2 = np.exp(-2.0 * (lam - k * design.tau) ** 2 / design.sigma2)
        assert d.values[k - 1].real == pytest.approx(gk2[idx] / np.sum(gk2), abs=1e-12)


def test_coherence_self_is_one(karate_basis):
    p = gcsa.true_gpsd(karate_basis, gcsa.builtin_kernel("heat"))
    c = gcsa.coherence(p, p, p, 0.0)
    assert c.kind == "coherence"
    assert np.allclose(c.values.real, 1.0)


def test_stationarity_measure(karate_basis):
    assert gcsa.stationarity_measure(karate_basis, np.eye(34)) == pytest.approx(1.0)


def test_huber_loss_value():
    assert gcsa.huber_loss(1.0, 0.25) == 0.4375


def test_robust_argmax_preserved(karate_basis):
    v = karate_basis.eigenvectors
    x = 3.0 * v[:, 19].copy()
    x_out = gcsa.inject_outlier(x, 24, 4.0)
    bank = gcsa.random_window_bank(karate_basis, 40, 0.1, seed=11)
    config = gcsa.HuberConfig()
    result = gcsa.m_type_psd(karate_basis, x_out, bank, config)
    assert result.converged
    assert int(np.argmax(np.abs(result.estimate.values))) == 19
    history = np.asarray(result.objective_history)
    assert np.all(np.diff(history) <= 1e-9)


def test_shared_component_experiment():
    basis = gcsa.eigendecompose(gcsa.laplacian(gcsa.sensor_graph(60, 5, seed=90)))
    config = gcsa.SharedComponentConfig()
    config.i_shared, config.i_x, config.i_y = 45, 15, 30
    config.estimator = "windowed_average"
    config.window_count = 40
    config.seed = 91
    report = gcsa.shared_component_experiment(basis, config)
    assert report.shared_detected
    assert report.psd_masks_shared


def test_density_json_roundtrip(karate_basis):
    d = gcsa.true_gpsd(karate_basis, gcsa.builtin_kernel("mex"))
    back = gcsa.density_from_json(gcsa.density_to_json(d))
    assert back.kind == "psd"
    assert np.array_equal(back.values, d.values)
    assert np.array_equal(back.frequencies, d.frequencies)
