"""Standard multi-objective test landscapes (minimization, x in [0,1]^d).

All functions accept a single setting (d,) or a batch (n, d) and return
objectives of matching leading shape.
"""

from __future__ import annotations

import numpy as np

BENCHMARK_IDS = ("zdt1", "zdt2", "dtlz1", "dtlz2", "dtlz7")


def _check(x: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if np.any(x < -1e-12) or np.any(x > 1 + 1e-12):
        raise ValueError("inputs must lie in the unit cube")
    return np.clip(x, 0.0, 1.0)


def zdt1(x):
    x = _check(x)
    d = x.shape[1]
    if d < 2:
        raise ValueError("zdt1 needs d >= 2")
    u = 1.0 + 9.0 * x[:, 1:].sum(axis=1) / (d - 1)
    f1 = x[:, 0]
    f2 = u * (1.0 - np.sqrt(f1 / u))
    return np.stack([f1, f2], axis=1)


def zdt2(x):
    x = _check(x)
    d = x.shape[1]
    if d < 2:
        raise ValueError("zdt2 needs d >= 2")
    u = 1.0 + 9.0 * x[:, 1:].sum(axis=1) / (d - 1)
    f1 = x[:, 0]
    f2 = u * (1.0 - (f1 / u) ** 2)
    return np.stack([f1, f2], axis=1)


def dtlz1(x, k: int):
    x = _check(x)
    d = x.shape[1]
    _check_dtlz(d, k)
    xk = x[:, k - 1 :]
    u = 100.0 * (
        xk.shape[1]
        + np.sum((xk - 0.5) ** 2 - np.cos(20.0 * np.pi * (xk - 0.5)), axis=1)
    )
    fs = []
    for m in range(k):
        f = 0.5 * (1.0 + u)
        head = k - 1 - m
        if head > 0:
            f = f * np.prod(x[:, :head], axis=1)
        if m > 0:
            f = f * (1.0 - x[:, head])
        fs.append(f)
    return np.stack(fs, axis=1)


def dtlz2(x, k: int):
    x = _check(x)
    d = x.shape[1]
    _check_dtlz(d, k)
    xk = x[:, k - 1 :]
    u = np.sum((xk - 0.5) ** 2, axis=1)
    theta = x[:, : k - 1] * np.pi / 2.0
    fs = []
    for m in range(k):
        f = 1.0 + u
        head = k - 1 - m
        if head > 0:
            f = f * np.prod(np.cos(theta[:, :head]), axis=1)
        if m > 0:
            f = f * np.sin(theta[:, head])
        fs.append(f)
    return np.stack(fs, axis=1)


def dtlz7(x, k: int):
    x = _check(x)
    d = x.shape[1]
    _check_dtlz(d, k)
    xk = x[:, k - 1 :]
    u = 1.0 + 9.0 * xk.sum(axis=1) / xk.shape[1]
    fs = [x[:, m] for m in range(k - 1)]
    fmat = np.stack(fs, axis=1) if fs else np.empty((x.shape[0], 0))
    h = k - np.sum(
        fmat / (1.0 + u[:, None]) * (1.0 + np.sin(3.0 * np.pi * fmat)), axis=1
    )
    fs.append(h * (1.0 + u))
    return np.stack(fs, axis=1)


def _check_dtlz(d: int, k: int) -> None:
    if not 2 <= k <= d:
        raise ValueError(f"dtlz requires 2 <= k <= d, got k={k}, d={d}")


def base_objectives(benchmark: str, x, k: int) -> np.ndarray:
    """Noise-free objective values of the named benchmark."""
    single = np.asarray(x).ndim == 1
    if benchmark in ("zdt1", "zdt2"):
        if k != 2:
            raise ValueError(f"{benchmark} is bi-objective")
        out = zdt1(x) if benchmark == "zdt1" else zdt2(x)
    elif benchmark == "dtlz1":
        out = dtlz1(x, k)
    elif benchmark == "dtlz2":
        out = dtlz2(x, k)
    elif benchmark == "dtlz7":
        out = dtlz7(x, k)
    else:
        raise ValueError(f"unknown benchmark {benchmark!r}")
    return out[0] if single else out
