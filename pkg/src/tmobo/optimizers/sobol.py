"""Low-discrepancy initialization of hyperparameter settings."""

from __future__ import annotations

import warnings

import numpy as np
from scipy.stats import qmc

MAX_SOBOL_DIM = 21201  # direction-number table limit


def sobol_init(n: int, d: int, seed=None) -> np.ndarray:
    """First n points of a Sobol sequence in [0,1)^d.

    With a seed the sequence is Owen-scrambled (seed may be an int or a
    Generator); without one the plain sequence is used, skipping the
    all-zeros origin point.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if d > MAX_SOBOL_DIM:
        raise ValueError(f"d={d} exceeds the supported dimension {MAX_SOBOL_DIM}")
    scramble = seed is not None
    if isinstance(seed, (int, np.integer)):
        seed = np.random.default_rng(seed)
    eng = qmc.Sobol(d=d, scramble=scramble, seed=seed)
    if not scramble:
        eng.fast_forward(1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        return eng.random(n)
