import math
import os

import numpy as np
import pytest

import cartan

DATA = os.environ.get("CARTAN_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))

X1 = np.array([[2, 1, 0], [1, 3, 1], [0, 1, 4]], dtype=float)
X2 = np.array([[1, 0.5, 0], [0.5, 1, 0.2], [0, 0.2, 0.5]])
X3 = np.array([[5, -1, 0.5], [-1, 2, 0], [0.5, 0, 1]])

# 50-digit reference from tests/oracles/reference_values.py.
G_REF = np.array(
    [
        [1.8212215768074581, 0.57435709848735717, 0.042838540420714852],
        [0.57435709848735717, 1.8933596154050054, 0.42754070137633384],
        [0.042838540420714852, 0.42754070137633384, 1.604645991366809],
    ]
)


def test_eigh_reconstructs():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = a + a.conj().T
    values, frame = cartan.eigh(h)
    assert np.all(np.diff(values) <= 0)
    assert np.allclose(frame @ np.diag(values) @ frame.conj().T, h, atol=1e-12)
    assert np.allclose(np.sort(values), np.linalg.eigvalsh(h), atol=1e-12)


def test_barycenter_matches_reference():
    r = cartan.barycenter([X1, X2, X3], [0.5, 0.3, 0.2], tol=1e-13)
    assert r["converged"]
    assert r["relative_residual"] <= 1e-13
    assert np.max(np.abs(r["point"] - G_REF)) < 1e-12


def test_two_points_give_the_geodesic():
    r = cartan.barycenter([X1, X3], [0.7, 0.3])
    assert cartan.trace_metric(r["point"], cartan.geodesic(X1, X3, 0.3)) < 1e-9


def test_trace_metric_reference():
    assert abs(cartan.trace_metric(X1, X3) - 2.1169627892438624) < 1e-13


def test_wasserstein_reference():
    d1, coupling = cartan.wasserstein([X1, X2, X3], [1 / 3] * 3, [X2, X3, np.eye(3)], [1 / 3] * 3, 1.0)
    assert abs(d1 - 0.63938677303014338) < 1e-12
    assert coupling.shape == (3, 3)
    assert np.allclose(coupling.sum(axis=0), 1 / 3)


def test_compound_and_majorization():
    c = cartan.compound(np.diag([3.0, 2.0, 1.0]), 2)
    assert np.allclose(c, np.diag([6.0, 3.0, 2.0]))
    assert cartan.lipschitz_bound(4, 2) == pytest.approx(math.sqrt(6))
    assert cartan.log_majorize(np.diag([2.0, 2.0]), np.diag([4.0, 1.0]))["holds"]
    assert not cartan.log_majorize(np.diag([4.0, 1.0]), np.diag([2.0, 2.0]))["holds"]


def test_lie_trotter_and_power_mean():
    e = math.e
    target = cartan.lie_trotter_target([np.diag([e * e, 1.0]), np.diag([1.0, e * e])], [0.5, 0.5])
    assert np.allclose(target, np.diag([e, e]))
    curve = cartan.lie_trotter_curve([X1, X2, X3], [0.5, 0.3, 0.2], [0.1], tol=1e-12)
    assert curve["distances"][0] == pytest.approx(0.00022189003612347382, rel=1e-8)
    pm = cartan.power_mean([np.array([[1.0]]), np.array([[4.0]])], [0.5, 0.5], 0.5)
    assert pm[0, 0].real == pytest.approx(2.25)


def test_random_measure_is_deterministic():
    a1, w1 = cartan.random_measure(7, 3, 5, 100.0)
    a2, w2 = cartan.random_measure(7, 3, 5, 100.0)
    assert len(a1) == 5 and sum(w1) == pytest.approx(1.0)
    assert all(np.array_equal(x, y) for x, y in zip(a1, a2))
    assert w1 == w2
    ident, _ = cartan.random_measure(1, 2, 1, 1.0)
    assert np.array_equal(ident[0], np.eye(2))


def test_round_trip(tmp_path):
    atoms, weights = cartan.random_measure(3, 2, 4, 1e3)
    path = str(tmp_path / "mu.json")
    cartan.save_measure(path, atoms, weights)
    back, wb = cartan.load_measure(path)
    assert wb == weights
    assert all(np.array_equal(x, y) for x, y in zip(atoms, back))


def test_errors_map_to_python_exceptions():
    with pytest.raises(cartan.NotPositiveDefinite):
        cartan.trace_metric(np.array([[1.0, 2.0], [2.0, 1.0]]), np.eye(2))
    with pytest.raises(cartan.CartanError):
        cartan.barycenter([np.eye(2)], [0.5])
    with pytest.raises(ValueError):
        cartan.power_mean([np.eye(2)], [1.0], 0.0)
    with pytest.raises(cartan.SchemaError):
        cartan.load_measure(os.path.join(DATA, "bad_weights.json"))
