import math

import numpy as np
import pytest

from gsample import (Graph, build_laplacian, eigendecompose, gen_er,
                     gen_sensor, gen_signal, gft, igft, leverage_scores,
                     observe)
from gsample.spectral import load_signal_csv, save_signal_csv


def test_two_node_path_closed_form(path2):
    _, _, basis = path2
    assert basis.eigenvalues == pytest.approx([0.0, 2.0], abs=1e-12)
    s = 1 / math.sqrt(2)
    assert basis.eigenvectors[:, 0] == pytest.approx([s, s], abs=1e-12)


def test_complete_graph_spectrum():
    g = Graph(3, np.ones((3, 3)) - np.eye(3))
    basis = eigendecompose(build_laplacian(g))
    assert basis.eigenvalues == pytest.approx([0.0, 3.0, 3.0], abs=1e-10)


def test_residual_and_orthonormality():
    g = gen_sensor(6, 3, seed=1)
    lap = build_laplacian(g)
    basis = eigendecompose(lap)
    v, lam = basis.eigenvectors, basis.eigenvalues
    residual = np.linalg.norm(lap.matrix @ v - v * lam, "fro")
    assert residual <= 1e-9 * np.linalg.norm(lap.matrix, "fro")
    assert np.abs(v.T @ v - np.eye(6)).max() <= 1e-10
    assert lam[0] >= -1e-10
    assert np.all(np.diff(lam) >= 0)


def test_sign_convention_and_determinism(sensor8):
    _, lap, basis = sensor8
    for k in range(basis.n):
        col = basis.eigenvectors[:, k]
        lead = col[np.abs(col) > 1e-12][0]
        assert lead > 0
    again = eigendecompose(lap)
    assert np.array_equal(again.eigenvectors, basis.eigenvectors)
    assert np.array_equal(again.eigenvalues, basis.eigenvalues)


def test_connected_graph_has_simple_zero_eigenvalue(sensor10):
    _, _, basis = sensor10
    assert abs(basis.eigenvalues[0]) <= 1e-10
    assert basis.eigenvalues[1] > 1e-8


def test_gft_of_eigenvector_is_unit_coordinate(sensor8):
    _, _, basis = sensor8
    xhat = gft(basis, basis.eigenvectors[:, 0])
    expected = np.zeros(8)
    expected[0] = 1.0
    assert xhat == pytest.approx(expected, abs=1e-12)


def test_constant_signal_is_pure_dc(sensor8):
    _, _, basis = sensor8
    xhat = gft(basis, np.ones(8))
    assert np.abs(xhat[1:]).max() <= 1e-10


def test_gft_round_trip_and_parseval(sensor10):
    _, _, basis = sensor10
    rng = np.random.Generator(np.random.PCG64(0))
    for _ in range(5):
        x = rng.normal(size=10)
        assert np.abs(igft(basis, gft(basis, x)) - x).max() <= 1e-10
        assert np.linalg.norm(gft(basis, x)) == pytest.approx(
            np.linalg.norm(x), abs=1e-10)
    with pytest.raises(ValueError):
        gft(basis, np.ones(7))
    with pytest.raises(ValueError):
        igft(basis, np.ones(7))


def test_signal_models_bandlimits():
    g = gen_er(45, 0.2, seed=8)
    basis = eigendecompose(build_laplacian(g))
    s1 = gen_signal("GS1", basis, seed=0)
    assert np.all(s1.spectrum[10:] == 0.0)
    assert s1.bandwidth == 10
    s3 = gen_signal("GS3", basis, seed=0)
    assert np.all(s3.spectrum[40:] == 0.0)
    assert s3.bandwidth == 40
    s2 = gen_signal("GS2", basis, seed=0)
    assert np.all(s2.spectrum[10:] != 0.0)
    # synthesis consistency
    assert np.abs(s1.values - basis.eigenvectors @ s1.spectrum).max() <= 1e-12
    with pytest.raises(ValueError):
        gen_signal("GS9", basis, seed=0)


def test_signal_bandwidth_override(sensor8):
    _, _, basis = sensor8
    s = gen_signal("GS1", basis, seed=1, bandwidth=3)
    assert s.bandwidth == 3
    assert np.all(s.spectrum[3:] == 0.0)


def test_signal_coefficient_variance():
    # Monte Carlo check that the in-band coefficients have variance 0.5
    g = gen_sensor(12, 4, seed=0)
    basis = eigendecompose(build_laplacian(g))
    draws = np.array([gen_signal("GS1", basis, seed=s).spectrum[0]
                      for s in range(10000)])
    assert 0.45 <= draws.var(ddof=1) <= 0.55


def test_signal_determinism(sensor8):
    _, _, basis = sensor8
    a = gen_signal("GS2", basis, seed=77, bandwidth=5)
    b = gen_signal("GS2", basis, seed=77, bandwidth=5)
    assert np.array_equal(a.values, b.values)


def test_observe_noiseless_and_noisy(sensor10):
    _, _, basis = sensor10
    sig = gen_signal("GS1", basis, seed=2, bandwidth=4)
    idx = [3, 0, 7]
    clean = observe(sig, idx, 0.0)
    assert np.array_equal(clean.values, sig.values[idx])
    assert clean.sample_indices == (3, 0, 7)
    noisy1 = observe(sig, idx, 5e-3, seed=4)
    noisy2 = observe(sig, idx, 5e-3, seed=4)
    assert np.array_equal(noisy1.values, noisy2.values)
    assert np.any(noisy1.values != clean.values)
    with pytest.raises(ValueError):
        observe(sig, [1, 1], 0.0)
    with pytest.raises(ValueError):
        observe(sig, [99], 0.0)


def test_leverage_scores(path2, sensor10):
    _, _, b2 = path2
    assert leverage_scores(b2, 1) == pytest.approx([0.5, 0.5], abs=1e-12)
    _, _, b10 = sensor10
    assert leverage_scores(b10, 10) == pytest.approx(np.full(10, 0.1), abs=1e-12)
    for K in (1, 3, 7):
        assert abs(leverage_scores(b10, K).sum() - 1.0) <= 1e-12


def test_signal_csv_round_trip(tmp_path, sensor8):
    _, _, basis = sensor8
    sig = gen_signal("GS1", basis, seed=5, bandwidth=4)
    path = tmp_path / "sig.csv"
    save_signal_csv(sig, path)
    assert path.read_text().splitlines()[0] == "value"
    loaded = load_signal_csv(path)
    assert np.array_equal(loaded.values, sig.values)
