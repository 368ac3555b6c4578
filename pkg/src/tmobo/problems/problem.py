"""Problem definitions: epoch-dependent objectives with observation noise.

Settings presented to optimizers always live in [0,1]^d; native bounds are
applied inside the problem so GP lengthscales and search radii stay
comparable across problems.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from tmobo.core.domain import Trajectory
from tmobo.problems.benchmarks import BENCHMARK_IDS, base_objectives
from tmobo.problems.curves import CURVE_KINDS, curve

RANGE_SAMPLE_SIZE = 10_000
RANGE_SAMPLE_SEED = 0


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    d: int
    k: int
    t_max: int
    benchmark: str
    curves: tuple[str, ...]
    noise_frac: tuple[float, ...]
    bounds: tuple[tuple[float, float], ...] = ()
    cost_objective: int | None = None

    def __post_init__(self) -> None:
        if self.d < 1 or self.k < 2 or self.t_max < 1:
            raise ValueError("require d >= 1, k >= 2, t_max >= 1")
        if len(self.curves) != self.k:
            raise ValueError("need exactly one curve id per objective")
        for c in self.curves:
            if c not in CURVE_KINDS:
                raise ValueError(f"unknown curve id {c!r}")
        if len(self.noise_frac) != self.k:
            raise ValueError("need one noise fraction per objective")
        if any(nf < 0 for nf in self.noise_frac):
            raise ValueError("noise fractions must be >= 0")
        if self.benchmark not in BENCHMARK_IDS + ("tabular",):
            raise ValueError(f"unknown benchmark {self.benchmark!r}")
        bounds = self.bounds or tuple((0.0, 1.0) for _ in range(self.d))
        if len(bounds) != self.d:
            raise ValueError("need one bounds pair per coordinate")
        object.__setattr__(self, "bounds", tuple((float(a), float(b)) for a, b in bounds))
        if self.cost_objective is not None and not 0 <= self.cost_objective < self.k:
            raise ValueError("cost objective index out of range")

    def to_native(self, x_unit: np.ndarray) -> np.ndarray:
        lo = np.array([b[0] for b in self.bounds])
        hi = np.array([b[1] for b in self.bounds])
        return lo + np.asarray(x_unit) * (hi - lo)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "d": self.d,
            "k": self.k,
            "t_max": self.t_max,
            "benchmark": self.benchmark,
            "curves": list(self.curves),
            "noise_frac": list(self.noise_frac),
            "bounds": [list(b) for b in self.bounds],
            "cost_objective": self.cost_objective,
        }


class Problem:
    """Base interface: noise-free evaluation plus noise scaling."""

    def __init__(self, spec: ProblemSpec) -> None:
        self.spec = spec
        self._ranges: np.ndarray | None = None

    def noise_free(self, x_unit, t: int) -> np.ndarray:
        raise NotImplementedError

    def feasible_settings(self) -> np.ndarray | None:
        """Discrete feasible set, or None when the whole cube is allowed."""
        return None

    def objective_ranges(self) -> np.ndarray:
        if self._ranges is None:
            self._ranges = self._estimate_ranges()
        return self._ranges

    def noise_std(self) -> np.ndarray:
        return np.asarray(self.spec.noise_frac) * self.objective_ranges()

    def _estimate_ranges(self) -> np.ndarray:
        sample = _low_discrepancy_sample(self.spec.d + 1, RANGE_SAMPLE_SIZE, RANGE_SAMPLE_SEED)
        ts = 1 + np.minimum(
            (sample[:, -1] * self.spec.t_max).astype(int), self.spec.t_max - 1
        )
        lo = np.full(self.spec.k, np.inf)
        hi = np.full(self.spec.k, -np.inf)
        for t in np.unique(ts):
            xs = sample[ts == t, : self.spec.d]
            vals = self._noise_free_batch(xs, int(t))
            lo = np.minimum(lo, vals.min(axis=0))
            hi = np.maximum(hi, vals.max(axis=0))
        return hi - lo

    def _noise_free_batch(self, xs: np.ndarray, t: int) -> np.ndarray:
        return np.stack([self.noise_free(x, t) for x in xs])


class SyntheticProblem(Problem):
    """Benchmark landscape scaled per objective by an epoch curve."""

    def noise_free(self, x_unit, t: int) -> np.ndarray:
        return self._noise_free_batch(np.atleast_2d(x_unit), t)[0]

    def _noise_free_batch(self, xs: np.ndarray, t: int) -> np.ndarray:
        spec = self.spec
        if not 1 <= t <= spec.t_max:
            raise ValueError(f"epoch {t} outside 1..{spec.t_max}")
        native = spec.to_native(np.atleast_2d(xs))
        base = base_objectives(spec.benchmark, native, spec.k)
        g = np.array([curve(c, t, spec.t_max) for c in spec.curves])
        return base * g[None, :]


@dataclass
class TrainingSession:
    """One iterative learning run: advances a trajectory epoch by epoch."""

    problem: Problem
    x: np.ndarray
    rng: np.random.Generator
    trajectory: Trajectory = field(init=False)

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=float)
        if self.x.shape != (self.problem.spec.d,):
            raise ValueError("setting dimension mismatch")
        self.trajectory = Trajectory(setting=self.x, k=self.problem.spec.k)

    @property
    def epochs_completed(self) -> int:
        return self.trajectory.last_epoch

    def observe_epoch(self) -> np.ndarray:
        t = self.epochs_completed + 1
        if t > self.problem.spec.t_max:
            raise RuntimeError("session already trained to t_max")
        f = self.problem.noise_free(self.x, t)
        std = self.problem.noise_std()
        y = f + self.rng.normal(0.0, 1.0, size=f.shape) * std
        self.trajectory.append(t, y)
        return y


def _low_discrepancy_sample(d: int, n: int, seed: int) -> np.ndarray:
    eng = qmc.Sobol(d=d, scramble=True, seed=np.random.default_rng(seed))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        return eng.random(n)
