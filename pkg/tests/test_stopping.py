import numpy as np
import pytest

from tmobo.stopping import (
    StoppingConfig,
    conservative_stopping_epoch,
    lcb_trajectory,
    select_augmentation_subset,
    should_stop,
)
from tmobo.surrogate.gp import fit_gp


class StubPosterior:
    """Surrogate with preset per-epoch means and variances."""

    def __init__(self, means, variances):
        self.means = np.asarray(means, dtype=float)
        self.vars = np.asarray(variances, dtype=float)
        self.t_max = self.means.shape[0]

    def posterior_diag(self, Xq, tq):
        idx = np.asarray(tq, dtype=int) - 1
        return self.means[idx], self.vars[idx]

    def condition_on(self, Xn, tn, yn):
        # conditioning zeroes the variance at the observed epoch
        new = StubPosterior(self.means.copy(), self.vars.copy())
        new.vars[int(np.asarray(tn)[0]) - 1] = 0.0
        return new


def constant_lcb_models(lcb, t_max=10):
    # zero variance, mean equal to the requested LCB values
    return [StubPosterior(np.full(t_max, lcb[i]), np.zeros(t_max)) for i in range(2)]


FRONT = np.array([[0.0, 1.0], [1.0, 0.0]])


def test_stopping_epoch_constant_dominating_lcb():
    models = constant_lcb_models((-0.1, 0.2))
    assert conservative_stopping_epoch(models, np.zeros(2), FRONT, beta=2.0) == 10


def test_stopping_epoch_unpromising_lcb():
    models = constant_lcb_models((0.5, 0.5))
    assert conservative_stopping_epoch(models, np.zeros(2), FRONT, beta=2.0) is None


def test_stopping_epoch_partial_promise():
    means1 = np.array([-0.1, -0.1, -0.1, 0.5, 0.5])
    means2 = np.array([0.2, 0.2, 0.2, 0.5, 0.5])
    models = [
        StubPosterior(means1, np.zeros(5)),
        StubPosterior(means2, np.zeros(5)),
    ]
    assert conservative_stopping_epoch(models, np.zeros(2), FRONT, beta=2.0) == 3


def test_should_stop_rules():
    assert should_stop(3, 3) is True
    assert should_stop(2, 7) is False
    assert should_stop(1, None) is True
    assert should_stop(3, 3, strict=True) is False
    assert should_stop(4, 3, strict=True) is True


def test_should_stop_monotone_in_epoch():
    for t_star in (None, 1, 5, 10):
        stopped = False
        for t in range(1, 11):
            now = should_stop(t, t_star)
            if stopped:
                assert now
            stopped = stopped or now


def test_promising_set_grows_with_beta():
    rng = np.random.default_rng(0)
    X = rng.random((15, 2))
    t = rng.integers(1, 9, size=15)
    models = [
        fit_gp(X, t, rng.random(15), "rbf", 8, np.random.default_rng(1)),
        fit_gp(X, t, rng.random(15), "rbf", 8, np.random.default_rng(2)),
    ]
    front = np.array([[0.45, 0.45]])
    x = np.array([0.3, 0.3])

    def promising_set(beta):
        lcb = lcb_trajectory(models, x, beta)
        le = np.all(lcb[:, None, :] <= front[None, :, :], axis=2)
        lt = np.any(lcb[:, None, :] < front[None, :, :], axis=2)
        return set(np.flatnonzero(np.any(le & lt, axis=1)).tolist())

    prev = promising_set(0.5)
    for beta in (1.0, 2.0, 4.0, 8.0):
        cur = promising_set(beta)
        assert prev <= cur
        prev = cur
    t_small = conservative_stopping_epoch(models, x, front, beta=0.5)
    t_large = conservative_stopping_epoch(models, x, front, beta=8.0)
    if t_small is not None:
        assert t_large is not None and t_small <= t_large


def test_zero_variance_uses_mean_only():
    means = np.array([[-0.5, 0.5], [-0.5, 0.5], [2.0, 2.0]])
    models = [
        StubPosterior(means[:, 0], np.zeros(3)),
        StubPosterior(means[:, 1], np.zeros(3)),
    ]
    for beta in (0.1, 2.0, 50.0):
        assert conservative_stopping_epoch(models, np.zeros(2), FRONT, beta=beta) == 2


def test_augmentation_returns_all_when_small():
    models = constant_lcb_models((0.0, 0.0), t_max=6)
    X = np.tile(np.array([0.5, 0.5]), (4, 1))
    t = np.arange(1, 5)
    Y = np.random.default_rng(0).random((4, 2))
    sel = select_augmentation_subset(models, X, t, Y, cap=10)
    assert sel == [0, 1, 2, 3]


def test_augmentation_endpoints_then_normalized_variance():
    # epochs 1..4; endpoints (epochs 1 and 4) anchor; among epochs 2 and 3
    # the normalized variance sums are 1.25 vs 1.50, so epoch 3 wins.
    vars1 = np.array([0.0, 0.2, 0.1, 0.0])
    vars2 = np.array([0.0, 0.1, 0.4, 0.0])
    models = [
        StubPosterior(np.zeros(4), vars1),
        StubPosterior(np.zeros(4), vars2),
    ]
    X = np.tile(np.array([0.5, 0.5]), (4, 1))
    t = np.arange(1, 5)
    Y = np.zeros((4, 2))
    sel = select_augmentation_subset(models, X, t, Y, cap=3)
    assert sel == [0, 2, 3]  # epochs 1, 3, 4


def test_augmentation_size_and_distinct():
    rng = np.random.default_rng(3)
    X = rng.random((20, 2))
    t = np.arange(1, 21)
    Y = rng.random((20, 2))
    models = [
        fit_gp(X[:6], t[:6], Y[:6, 0], "rbf", 20, np.random.default_rng(4)),
        fit_gp(X[:6], t[:6], Y[:6, 1], "rbf", 20, np.random.default_rng(5)),
    ]
    for cap in (1, 2, 5, 10, 25):
        sel = select_augmentation_subset(models, X, t, Y, cap)
        assert len(sel) == min(20, cap)
        assert len(set(sel)) == len(sel)


def test_conditioning_suppresses_repicking():
    rng = np.random.default_rng(6)
    X = rng.random((12, 2))
    t = np.arange(1, 13)
    Y = rng.random((12, 2))
    base = [
        fit_gp(X[:4], t[:4], Y[:4, 0], "rbf", 12, np.random.default_rng(7)),
        fit_gp(X[:4], t[:4], Y[:4, 1], "rbf", 12, np.random.default_rng(8)),
    ]
    model = base[0]
    z = X[5:6], t[5:6]
    _, var_before = model.posterior_diag(*z)
    conditioned = model.condition_on(X[5:6], t[5:6], Y[5:6, 0])
    _, var_after = conditioned.posterior_diag(*z)
    assert var_after[0] <= model.kernel.noise_variance * model.y_scale**2 + 1e-8
    assert var_after[0] < var_before[0]


def test_stopping_config_validation():
    with pytest.raises(ValueError):
        StoppingConfig(beta=0.0)
    with pytest.raises(ValueError):
        StoppingConfig(augment_cap=0)
