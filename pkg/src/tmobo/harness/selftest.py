"""Built-in oracle checks runnable from the CLI (`tmobo selftest`).

Each check validates an implementation path against an independent
computation (enumeration, inclusion-exclusion, or a closed form).
"""

from __future__ import annotations

import numpy as np

from tmobo.core.dominance import dominates
from tmobo.core.hypervolume import hv_inclusion_exclusion, hvi_set, hypervolume
from tmobo.optimizers.sobol import sobol_init
from tmobo.problems.benchmarks import base_objectives
from tmobo.problems.curves import curve


def check_hypervolume_oracle() -> bool:
    rng = np.random.default_rng(2024)
    for k in (2, 3):
        for _ in range(50):
            pts = rng.random((rng.integers(1, 9), k)) * 1.4
            r = np.ones(k)
            a = hypervolume(pts, r)
            b = hv_inclusion_exclusion(pts, r)
            if abs(a - b) > 1e-9 * max(1.0, abs(b)):
                return False
    return True


def check_trajectory_restriction() -> bool:
    rng = np.random.default_rng(7)

    def pareto(vals):
        return {
            i
            for i, v in enumerate(vals)
            if not any(dominates(w, v) for w in vals)
        }

    for _ in range(50):
        nx, nt = rng.integers(1, 7), rng.integers(1, 6)
        f = rng.random((nx, nt, 2))
        flat = [f[i, t] for i in range(nx) for t in range(nt)]
        full = {(i // nt, i % nt) for i in pareto(flat)}
        keep = sorted({i for i, _ in full})
        sub_pairs = [(i, t) for i in keep for t in range(nt)]
        sub = pareto([f[i, t] for i, t in sub_pairs])
        if {sub_pairs[j] for j in sub} != full:
            return False
    return True


def check_zero_variance_tehvi() -> bool:
    from tmobo.acquisition import tehvi

    class Degenerate:
        def __init__(self, col):
            self.col = col
            self.t_max = 4

        def posterior_trajectory_batch(self, Xc):
            q = np.atleast_2d(Xc).shape[0]
            return np.tile(self.col, (q, 1)), np.zeros((q, 4, 4))

    traj = np.array([[0.5, 3.5], [3.0, 3.0], [3.5, 0.5], [2.5, 2.5]])
    models = [Degenerate(traj[:, 0]), Degenerate(traj[:, 1])]
    front = np.array([[1.0, 3.0], [2.0, 1.0]])
    r = np.array([4.0, 4.0])
    val = tehvi(models, np.zeros(2), front, r, M=16, rng=np.random.default_rng(0))
    return val == hvi_set(traj, front, r)


def check_stopping_anchors() -> bool:
    from tmobo.stopping import conservative_stopping_epoch, should_stop

    class Const:
        def __init__(self, value, t_max=10):
            self.value = value
            self.t_max = t_max

        def posterior_diag(self, Xq, tq):
            n = len(np.atleast_1d(tq))
            return np.full(n, self.value), np.zeros(n)

    front = np.array([[0.0, 1.0], [1.0, 0.0]])
    ok = (
        conservative_stopping_epoch(
            [Const(-0.1), Const(0.2)], np.zeros(2), front, 2.0
        )
        == 10
    )
    ok &= (
        conservative_stopping_epoch([Const(0.5), Const(0.5)], np.zeros(2), front, 2.0)
        is None
    )
    ok &= should_stop(3, 3) and not should_stop(2, 7) and should_stop(1, None)
    return bool(ok)


def check_sobol_anchor() -> bool:
    return sobol_init(3, 1).ravel().tolist() == [0.5, 0.75, 0.25]


def check_problem_anchors() -> bool:
    ok = np.allclose(base_objectives("zdt1", np.array([1.0, 0, 0, 0, 0]), 2), [1, 0])
    ok &= np.allclose(base_objectives("zdt2", np.zeros(5), 2), [0, 1])
    ok &= np.allclose(
        base_objectives("dtlz2", np.array([0.0, 0.5, 0.5, 0.5, 0.5]), 2), [1, 0]
    )
    ok &= np.isclose(curve("m_inc", 25, 50), 1.0)
    ok &= np.isclose(curve("periodic", 50, 50), 1.0)
    return bool(ok)


CHECKS = [
    ("hypervolume vs inclusion-exclusion", check_hypervolume_oracle),
    ("trajectory-restricted Pareto set", check_trajectory_restriction),
    ("zero-variance acquisition identity", check_zero_variance_tehvi),
    ("early-stopping anchors", check_stopping_anchors),
    ("sobol base sequence", check_sobol_anchor),
    ("benchmark/curve anchors", check_problem_anchors),
]


def run_selftest(print_fn=print) -> bool:
    all_ok = True
    for name, fn in CHECKS:
        ok = fn()
        all_ok &= ok
        print_fn(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return all_ok
