"""Product kernels over (setting, epoch) pairs.

The covariance between query pairs factorizes into a spatial ARD
squared-exponential over settings and a temporal kernel over epochs
rescaled to [0, 1].  Three temporal families are supported:

- ``rbf``: squared-exponential in the rescaled epoch,
- ``exp_decay``: k(t, t') = beta^alpha / (t + t' + beta)^alpha,
- ``linear``: k(t, t') = c0 + c1 * t * t'.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TEMPORAL_KINDS = ("rbf", "exp_decay", "linear")

# Noise bounds are expressed on the noise standard deviation ([1e-6, 1])
# and stored as a variance, keeping noise-free interpolation attainable.
MIN_NOISE_VARIANCE = 1e-12

# log-space search bounds (standardized targets, unit-cube inputs)
LENGTHSCALE_BOUNDS = (5e-3, 10.0)
SIGNAL_BOUNDS = (1e-3, 10.0)
NOISE_BOUNDS = (MIN_NOISE_VARIANCE, 1.0)
EXP_DECAY_ALPHA_BOUNDS = (0.1, 5.0)
EXP_DECAY_BETA_BOUNDS = (0.1, 10.0)
LINEAR_COEF_BOUNDS = (1e-3, 10.0)


@dataclass
class KernelSpec:
    lengthscales: np.ndarray
    signal_variance: float
    temporal_kind: str
    temporal_params: np.ndarray
    noise_variance: float

    def __post_init__(self) -> None:
        self.lengthscales = np.atleast_1d(np.asarray(self.lengthscales, dtype=float))
        self.temporal_params = np.atleast_1d(
            np.asarray(self.temporal_params, dtype=float)
        )
        if self.temporal_kind not in TEMPORAL_KINDS:
            raise ValueError(f"unknown temporal kernel {self.temporal_kind!r}")
        if np.any(self.lengthscales <= 0) or self.signal_variance <= 0:
            raise ValueError("lengthscales and signal variance must be positive")
        if np.any(self.temporal_params <= 0):
            raise ValueError("temporal parameters must be positive")
        expected = 2 if self.temporal_kind in ("exp_decay", "linear") else 1
        if self.temporal_params.shape[0] != expected:
            raise ValueError(
                f"{self.temporal_kind} takes {expected} temporal parameter(s)"
            )
        if self.noise_variance < MIN_NOISE_VARIANCE:
            raise ValueError(f"noise variance must be >= {MIN_NOISE_VARIANCE}")

    @staticmethod
    def default(d: int, temporal_kind: str = "rbf") -> "KernelSpec":
        params = {"rbf": [0.3], "exp_decay": [1.0, 1.0], "linear": [1.0, 1.0]}
        return KernelSpec(
            lengthscales=np.full(d, 0.3),
            signal_variance=1.0,
            temporal_kind=temporal_kind,
            temporal_params=np.array(params[temporal_kind], dtype=float),
            noise_variance=1e-2,
        )


# Exponents are floored at -46 (exp(-46) ~ 1e-20): the tail is swamped by
# the noise term anyway, and subnormal kernel entries wreck BLAS speed.
MIN_EXPONENT = -46.0


def spatial_kernel(X1, X2, lengthscales, signal_variance) -> np.ndarray:
    X1 = np.atleast_2d(X1) / lengthscales
    X2 = np.atleast_2d(X2) / lengthscales
    sq = (
        np.sum(X1**2, axis=1)[:, None]
        - 2.0 * X1 @ X2.T
        + np.sum(X2**2, axis=1)[None, :]
    )
    return signal_variance * np.exp(np.maximum(-0.5 * np.maximum(sq, 0.0), MIN_EXPONENT))


def temporal_kernel(T1, T2, kind: str, params) -> np.ndarray:
    """Temporal covariance on rescaled epochs (column vs row broadcast)."""
    T1 = np.asarray(T1, dtype=float)[:, None]
    T2 = np.asarray(T2, dtype=float)[None, :]
    if kind == "rbf":
        (ell,) = params
        return np.exp(np.maximum(-0.5 * ((T1 - T2) / ell) ** 2, MIN_EXPONENT))
    if kind == "exp_decay":
        alpha, beta = params
        return np.exp(alpha * (np.log(beta) - np.log(T1 + T2 + beta)))
    if kind == "linear":
        c0, c1 = params
        return c0 + c1 * T1 * T2
    raise ValueError(f"unknown temporal kernel {kind!r}")


def kernel_matrix(spec: KernelSpec, X1, T1, X2=None, T2=None) -> np.ndarray:
    if X2 is None:
        X2, T2 = X1, T1
    kx = spatial_kernel(X1, X2, spec.lengthscales, spec.signal_variance)
    kt = temporal_kernel(T1, T2, spec.temporal_kind, spec.temporal_params)
    return kx * kt


def kernel_diag(spec: KernelSpec, X, T) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    if spec.temporal_kind == "rbf":
        kt = np.ones_like(T)
    elif spec.temporal_kind == "exp_decay":
        alpha, beta = spec.temporal_params
        kt = np.exp(alpha * (np.log(beta) - np.log(2.0 * T + beta)))
    else:
        c0, c1 = spec.temporal_params
        kt = c0 + c1 * T * T
    return spec.signal_variance * kt


def kernel_eval(spec: KernelSpec, z1, z2, t_max: int) -> float:
    """Covariance between two query pairs (raw integer epochs)."""
    from tmobo.surrogate.gp import rescale_epochs

    x1, t1 = z1.x, z1.t
    x2, t2 = z2.x, z2.t
    tau = rescale_epochs(np.array([t1, t2]), t_max)
    return float(kernel_matrix(spec, x1[None, :], tau[:1], x2[None, :], tau[1:])[0, 0])


def pack_log_params(spec: KernelSpec) -> np.ndarray:
    return np.log(
        np.concatenate(
            [
                spec.lengthscales,
                [spec.signal_variance],
                spec.temporal_params,
                [spec.noise_variance],
            ]
        )
    )


def unpack_log_params(theta: np.ndarray, d: int, temporal_kind: str) -> KernelSpec:
    vals = np.exp(np.asarray(theta, dtype=float))
    n_temp = 2 if temporal_kind in ("exp_decay", "linear") else 1
    return KernelSpec(
        lengthscales=vals[:d],
        signal_variance=float(vals[d]),
        temporal_kind=temporal_kind,
        temporal_params=vals[d + 1 : d + 1 + n_temp],
        noise_variance=float(vals[d + 1 + n_temp]),
    )


def log_param_bounds(d: int, temporal_kind: str) -> list[tuple[float, float]]:
    bounds = [LENGTHSCALE_BOUNDS] * d + [SIGNAL_BOUNDS]
    if temporal_kind == "rbf":
        bounds += [LENGTHSCALE_BOUNDS]
    elif temporal_kind == "exp_decay":
        bounds += [EXP_DECAY_ALPHA_BOUNDS, EXP_DECAY_BETA_BOUNDS]
    else:
        bounds += [LINEAR_COEF_BOUNDS, LINEAR_COEF_BOUNDS]
    bounds += [NOISE_BOUNDS]
    return [(np.log(lo), np.log(hi)) for lo, hi in bounds]
