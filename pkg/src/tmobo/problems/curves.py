"""Epoch-dependence curve functions for the synthetic benchmarks.

All curves are strictly positive over 1..t_max so they preserve the
difficulty of the underlying multi-objective landscape.
"""

from __future__ import annotations

import numpy as np

CURVE_KINDS = ("m_inc", "m_dec", "quad", "periodic", "none")


def curve(kind: str, t, t_max: int):
    """Evaluate a curve at integer epochs t (scalar or array), 1-based."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 1) or np.any(t > t_max):
        raise ValueError(f"epochs must lie in 1..{t_max}")
    if kind == "m_inc":
        out = 0.5 + 1.0 / (1.0 + np.exp(-0.2 * (t - t_max / 2.0)))
    elif kind == "m_dec":
        out = 0.3 + 1.0 / (1.0 + np.exp(0.1 * (t - t_max / 3.0)))
    elif kind == "quad":
        out = 0.5 + 2.0 * (t / t_max - 2.0 / 3.0) ** 2
    elif kind == "periodic":
        out = 1.0 + 0.5 * np.sin(4.0 * np.pi * t / t_max)
    elif kind == "none":
        out = np.ones_like(t)
    else:
        raise ValueError(f"unknown curve kind {kind!r}")
    return out if out.ndim else float(out)
