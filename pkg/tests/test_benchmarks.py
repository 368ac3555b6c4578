import numpy as np
import pytest

from tmobo.problems.benchmarks import base_objectives


def test_zdt1_optimal_slice():
    y = base_objectives("zdt1", np.array([1.0, 0, 0, 0, 0]), 2)
    assert y == pytest.approx([1.0, 0.0])


def test_zdt2_origin():
    y = base_objectives("zdt2", np.zeros(5), 2)
    assert y == pytest.approx([0.0, 1.0])


def test_dtlz2_anchor():
    y = base_objectives("dtlz2", np.array([0.0, 0.5, 0.5, 0.5, 0.5]), 2)
    assert y == pytest.approx([1.0, 0.0], abs=1e-12)


def test_dtlz2_on_unit_sphere_when_optimal():
    rng = np.random.default_rng(0)
    for k in (2, 3):
        x = np.concatenate([rng.random(k - 1), np.full(5 - (k - 1), 0.5)])
        y = base_objectives("dtlz2", x, k)
        assert np.sum(y**2) == pytest.approx(1.0)


def test_dtlz1_optimal_plane():
    rng = np.random.default_rng(1)
    for k in (2, 3):
        x = np.concatenate([rng.random(k - 1), np.full(5 - (k - 1), 0.5)])
        y = base_objectives("dtlz1", x, k)
        assert np.sum(y) == pytest.approx(0.5)


def test_dtlz7_first_objectives_are_coordinates():
    x = np.array([0.3, 0.7, 0.2, 0.9, 0.1])
    y = base_objectives("dtlz7", x, 3)
    assert y[:2] == pytest.approx([0.3, 0.7])
    # last objective per formula
    xk = x[2:]
    u = 1 + 9 * xk.sum() / len(xk)
    h = 3 - sum(fi / (1 + u) * (1 + np.sin(3 * np.pi * fi)) for fi in y[:2])
    assert y[2] == pytest.approx(h * (1 + u))


def test_batch_matches_single():
    rng = np.random.default_rng(2)
    xs = rng.random((10, 5))
    for bench, k in (("zdt1", 2), ("zdt2", 2), ("dtlz1", 3), ("dtlz2", 2), ("dtlz7", 2)):
        batch = base_objectives(bench, xs, k)
        for i, x in enumerate(xs):
            assert batch[i] == pytest.approx(base_objectives(bench, x, k))


def test_invalid_combinations_rejected():
    with pytest.raises(ValueError):
        base_objectives("zdt1", np.zeros(5), 3)
    with pytest.raises(ValueError):
        base_objectives("dtlz2", np.zeros(3), 4)
    with pytest.raises(ValueError):
        base_objectives("nope", np.zeros(3), 2)
    with pytest.raises(ValueError):
        base_objectives("zdt1", np.full(5, 1.5), 2)
