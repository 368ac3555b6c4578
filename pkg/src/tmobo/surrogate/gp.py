"""Gaussian-process surrogates over query pairs.

One independent GP per objective: targets are standardized internally,
epochs rescaled to [0, 1], and hyperparameters fitted by maximizing the
log marginal likelihood with a multi-start bounded Powell search
(derivative-free; exact kernel gradients are deliberately not used).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, solve_triangular
from scipy.optimize import minimize

from tmobo.surrogate.kernels import (
    KernelSpec,
    kernel_diag,
    kernel_matrix,
    log_param_bounds,
    pack_log_params,
    spatial_kernel,
    temporal_kernel,
    unpack_log_params,
)

JITTER_BASE = 1e-8
JITTER_STEPS = 7

# Powell evaluation budgets: short probes from each restart, then a longer
# polish from the best point found.  Small training sets get generous
# budgets (evaluations are cheap there); large ones are capped for speed.
def _powell_budgets(n: int) -> tuple[int, int]:
    if n <= 120:
        return 64, 200
    return 32, 96


class FactorizationError(RuntimeError):
    """Raised when a covariance cannot be factorized even with jitter."""


def rescale_epochs(t, t_max: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return (t - 1.0) / max(t_max - 1, 1)


def chol_with_jitter(A: np.ndarray) -> tuple[np.ndarray, float]:
    """Cholesky factor with an escalating jitter ladder.

    Jitter steps are 1e-8 * 10^j (j = 0..6) scaled by the mean diagonal.
    """
    try:
        return np.linalg.cholesky(A), 0.0
    except np.linalg.LinAlgError:
        pass
    scale = float(np.mean(np.diag(A)))
    if scale <= 0.0:
        scale = 1.0
    eye = np.eye(A.shape[0])
    for j in range(JITTER_STEPS):
        jitter = JITTER_BASE * 10.0**j * scale
        try:
            return np.linalg.cholesky(A + jitter * eye), jitter
        except np.linalg.LinAlgError:
            continue
    raise FactorizationError("covariance not positive definite after max jitter")


def factor_covariance(cov: np.ndarray) -> np.ndarray:
    """Factor a posterior covariance for sampling.

    The diagonal is clamped at zero first; an all-zero diagonal denotes a
    degenerate (deterministic) Gaussian and yields a zero factor.
    """
    cov = np.asarray(cov, dtype=float)
    cov = 0.5 * (cov + cov.T)
    diag = np.diag(cov).copy()
    if np.max(diag) <= 0.0:
        return np.zeros_like(cov)
    np.fill_diagonal(cov, np.maximum(diag, 0.0))
    L, _ = chol_with_jitter(cov)
    return L


@dataclass
class PosteriorBelief:
    """Joint Gaussian belief over a list of query pairs (objective units)."""

    mean: np.ndarray
    cov: np.ndarray

    @property
    def variance(self) -> np.ndarray:
        return np.maximum(np.diag(self.cov), 0.0)


class GPModel:
    """A fitted GP: kernel spec, training data, and factorized Gram matrix."""

    def __init__(
        self,
        kernel: KernelSpec,
        X: np.ndarray,
        t: np.ndarray,
        y: np.ndarray,
        t_max: int,
        y_mean: float = 0.0,
        y_scale: float = 1.0,
    ) -> None:
        self.kernel = kernel
        X = np.asarray(X, dtype=float)
        self.X = X if X.ndim == 2 else np.atleast_2d(X)  # prior case: pass (0, d)
        self.t = np.asarray(t, dtype=int).reshape(-1)
        self.y = np.asarray(y, dtype=float).reshape(-1)
        self.t_max = int(t_max)
        self.y_mean = float(y_mean)
        self.y_scale = float(y_scale)
        self.tau = rescale_epochs(self.t, self.t_max)
        n = self.y.shape[0]
        if n:
            K = kernel_matrix(self.kernel, self.X, self.tau)
            K[np.diag_indices_from(K)] += self.kernel.noise_variance
            self.L, _ = chol_with_jitter(K)
            self._y_std = (self.y - self.y_mean) / self.y_scale
            self.alpha = cho_solve((self.L, True), self._y_std, check_finite=False)
        else:
            self.L = np.empty((0, 0))
            self._y_std = np.empty(0)
            self.alpha = np.empty(0)

    @staticmethod
    def build(
        kernel: KernelSpec,
        X,
        t,
        y,
        t_max: int,
        standardize: bool = True,
        y_mean: float | None = None,
        y_scale: float | None = None,
    ) -> "GPModel":
        y = np.asarray(y, dtype=float).reshape(-1)
        if y_mean is None or y_scale is None:
            if standardize and y.size:
                y_mean = float(np.mean(y))
                sd = float(np.std(y))
                y_scale = sd if sd > 1e-12 else 1.0
            else:
                y_mean, y_scale = 0.0, 1.0
        return GPModel(kernel, X, t, y, t_max, y_mean, y_scale)

    @property
    def n(self) -> int:
        return self.y.shape[0]

    def condition_on(self, X_new, t_new, y_new) -> "GPModel":
        """Append observations, keeping hyperparameters and scaling frozen.

        The Cholesky factor is extended by a block update rather than
        recomputed from scratch.
        """
        X_new = np.atleast_2d(np.asarray(X_new, dtype=float))
        t_new = np.atleast_1d(np.asarray(t_new, dtype=int))
        y_new = np.atleast_1d(np.asarray(y_new, dtype=float))
        if self.n == 0:
            return GPModel(
                self.kernel, X_new, t_new, y_new, self.t_max, self.y_mean, self.y_scale
            )
        out = object.__new__(GPModel)
        out.kernel = self.kernel
        out.X = np.concatenate([self.X, X_new], axis=0)
        out.t = np.concatenate([self.t, t_new])
        out.y = np.concatenate([self.y, y_new])
        out.t_max = self.t_max
        out.y_mean = self.y_mean
        out.y_scale = self.y_scale
        out.tau = rescale_epochs(out.t, out.t_max)
        tau_new = rescale_epochs(t_new, self.t_max)
        B = kernel_matrix(self.kernel, self.X, self.tau, X_new, tau_new)
        C = kernel_matrix(self.kernel, X_new, tau_new)
        C[np.diag_indices_from(C)] += self.kernel.noise_variance
        L21 = solve_triangular(self.L, B, lower=True, check_finite=False).T
        S = C - L21 @ L21.T
        L22, _ = chol_with_jitter(S)
        m = t_new.shape[0]
        L_new = np.zeros((self.n + m, self.n + m))
        L_new[: self.n, : self.n] = self.L
        L_new[self.n :, : self.n] = L21
        L_new[self.n :, self.n :] = L22
        out.L = L_new
        out._y_std = (out.y - out.y_mean) / out.y_scale
        out.alpha = cho_solve((out.L, True), out._y_std, check_finite=False)
        return out

    def _cross_cov(self, Xq: np.ndarray, tauq: np.ndarray) -> np.ndarray:
        return kernel_matrix(self.kernel, self.X, self.tau, Xq, tauq)

    def posterior(self, Xq, tq) -> PosteriorBelief:
        """Joint posterior at the given query pairs, in objective units."""
        Xq = np.atleast_2d(np.asarray(Xq, dtype=float))
        tq = np.atleast_1d(np.asarray(tq))
        tauq = rescale_epochs(tq, self.t_max)
        Kqq = kernel_matrix(self.kernel, Xq, tauq)
        if self.n == 0:
            mean = np.full(Xq.shape[0], self.y_mean)
            cov = Kqq * self.y_scale**2
            return PosteriorBelief(mean, cov)
        Kzq = self._cross_cov(Xq, tauq)
        V = solve_triangular(self.L, Kzq, lower=True, check_finite=False)
        mean_std = Kzq.T @ self.alpha
        cov_std = Kqq - V.T @ V
        diag = np.maximum(np.diag(cov_std), 0.0)
        np.fill_diagonal(cov_std, diag)
        return PosteriorBelief(
            mean_std * self.y_scale + self.y_mean, cov_std * self.y_scale**2
        )

    def posterior_diag(self, Xq, tq) -> tuple[np.ndarray, np.ndarray]:
        """Marginal posterior mean and variance (cheaper than full cov)."""
        Xq = np.atleast_2d(np.asarray(Xq, dtype=float))
        tq = np.atleast_1d(np.asarray(tq))
        tauq = rescale_epochs(tq, self.t_max)
        kqq = kernel_diag(self.kernel, Xq, tauq)
        if self.n == 0:
            return np.full(Xq.shape[0], self.y_mean), kqq * self.y_scale**2
        Kzq = self._cross_cov(Xq, tauq)
        V = solve_triangular(self.L, Kzq, lower=True, check_finite=False)
        mean_std = Kzq.T @ self.alpha
        var_std = np.maximum(kqq - np.sum(V**2, axis=0), 0.0)
        return mean_std * self.y_scale + self.y_mean, var_std * self.y_scale**2

    def posterior_trajectory_batch(
        self, Xc: np.ndarray, chunk: int = 128
    ) -> tuple[np.ndarray, np.ndarray]:
        """Joint posterior over the full epoch grid for many candidates.

        Returns means (q, T) and covariances (q, T, T) in objective units.
        """
        Xc = np.atleast_2d(np.asarray(Xc, dtype=float))
        q = Xc.shape[0]
        T = self.t_max
        tau_grid = rescale_epochs(np.arange(1, T + 1), self.t_max)
        Ktt = temporal_kernel(
            tau_grid, tau_grid, self.kernel.temporal_kind, self.kernel.temporal_params
        )
        prior = self.kernel.signal_variance * Ktt
        means = np.empty((q, T))
        covs = np.empty((q, T, T))
        if self.n == 0:
            means[:] = self.y_mean
            covs[:] = prior * self.y_scale**2
            return means, covs
        Kt_train = temporal_kernel(
            self.tau, tau_grid, self.kernel.temporal_kind, self.kernel.temporal_params
        )  # (n, T)
        for start in range(0, q, chunk):
            Xb = Xc[start : start + chunk]
            b = Xb.shape[0]
            Kx = spatial_kernel(
                self.X, Xb, self.kernel.lengthscales, self.kernel.signal_variance
            )  # (n, b)
            rhs = (Kx[:, :, None] * Kt_train[:, None, :]).reshape(self.n, b * T)
            V = solve_triangular(self.L, rhs, lower=True, check_finite=False)
            mean_std = (self.alpha @ rhs).reshape(b, T)
            Vb = V.reshape(self.n, b, T)
            cov_std = prior[None, :, :] - np.einsum("nbt,nbs->bts", Vb, Vb)
            means[start : start + b] = mean_std * self.y_scale + self.y_mean
            covs[start : start + b] = cov_std * self.y_scale**2
        return means, covs

    def log_marginal_likelihood(self) -> float:
        """MLL of the training data under the current kernel (standardized)."""
        if self.n == 0:
            return 0.0
        return float(
            -0.5 * self._y_std @ self.alpha
            - np.sum(np.log(np.diag(self.L)))
            - 0.5 * self.n * np.log(2.0 * np.pi)
        )


class _MLLObjective:
    """Negative MLL over log hyperparameters with cached distance terms."""

    def __init__(self, X, tau, y_std, d, temporal_kind):
        self.n = y_std.shape[0]
        self.y = y_std
        self.d = d
        self.kind = temporal_kind
        diff = X[:, None, :] - X[None, :, :]
        self.Dsq = np.ascontiguousarray(np.moveaxis(diff**2, 2, 0))  # (d, n, n)
        if temporal_kind == "rbf":
            self.Tsq = (tau[:, None] - tau[None, :]) ** 2
        elif temporal_kind == "exp_decay":
            self.Tsum = tau[:, None] + tau[None, :]
        else:
            self.Tprod = tau[:, None] * tau[None, :]
        self._eye = np.eye(self.n)

    def __call__(self, theta: np.ndarray) -> float:
        from tmobo.surrogate.kernels import MIN_EXPONENT

        vals = np.exp(theta)
        ls = vals[: self.d]
        sv = vals[self.d]
        noise = vals[-1]
        tp = vals[self.d + 1 : -1]
        quad = np.einsum("j,jnm->nm", 0.5 / ls**2, self.Dsq)
        if self.kind == "rbf":
            quad = quad + 0.5 * self.Tsq / tp[0] ** 2
            K = sv * np.exp(np.maximum(-quad, MIN_EXPONENT))
        elif self.kind == "exp_decay":
            alpha, beta = tp
            arg = -quad + alpha * (np.log(beta) - np.log(self.Tsum + beta))
            K = sv * np.exp(np.maximum(arg, MIN_EXPONENT))
        else:
            c0, c1 = tp
            K = sv * np.exp(np.maximum(-quad, MIN_EXPONENT)) * (c0 + c1 * self.Tprod)
        K += noise * self._eye
        try:
            L = np.linalg.cholesky(K)
        except np.linalg.LinAlgError:
            return 1e12
        a = solve_triangular(L, self.y, lower=True, check_finite=False)
        return float(
            0.5 * a @ a + np.sum(np.log(np.diag(L))) + 0.5 * self.n * np.log(2 * np.pi)
        )


def fit_gp(
    X,
    t,
    y,
    temporal_kind: str,
    t_max: int,
    rng: np.random.Generator,
    n_restarts: int = 5,
    warm_start: KernelSpec | None = None,
) -> GPModel:
    """Fit hyperparameters by multi-start bounded Powell search on the MLL."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    t = np.asarray(t, dtype=int).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    n, d = X.shape
    if n < 2 or n != t.shape[0] or n != y.shape[0]:
        raise ValueError("need at least two (input, target) pairs")
    if np.unique(np.column_stack([X, t]), axis=0).shape[0] < 2:
        raise ValueError("need at least two distinct inputs")

    y_mean = float(np.mean(y))
    sd = float(np.std(y))
    y_scale = sd if sd > 1e-12 else 1.0
    y_std = (y - y_mean) / y_scale
    tau = rescale_epochs(t, t_max)

    objective = _MLLObjective(X, tau, y_std, d, temporal_kind)
    bounds = log_param_bounds(d, temporal_kind)
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])

    starts = []
    if warm_start is not None and warm_start.temporal_kind == temporal_kind:
        starts.append(np.clip(pack_log_params(warm_start), lo, hi))
    starts.append(
        np.clip(pack_log_params(KernelSpec.default(d, temporal_kind)), lo, hi)
    )
    while len(starts) < n_restarts:
        starts.append(lo + rng.random(lo.shape) * (hi - lo))
    starts = starts[:n_restarts]

    probe_fev, polish_fev = _powell_budgets(n)
    best_theta = None
    best_val = np.inf
    for theta0 in starts:
        f0 = objective(theta0)
        if f0 < best_val:
            best_val, best_theta = f0, theta0
        res = minimize(
            objective,
            theta0,
            method="Powell",
            bounds=bounds,
            options={"maxfev": probe_fev, "xtol": 1e-4, "ftol": 1e-6},
        )
        if res.fun < best_val:
            best_val, best_theta = res.fun, np.clip(res.x, lo, hi)
    res = minimize(
        objective,
        best_theta,
        method="Powell",
        bounds=bounds,
        options={"maxfev": polish_fev, "xtol": 1e-5, "ftol": 1e-8},
    )
    if res.fun < best_val:
        best_val, best_theta = res.fun, np.clip(res.x, lo, hi)

    spec = unpack_log_params(best_theta, d, temporal_kind)
    return GPModel(spec, X, t, y, t_max, y_mean, y_scale)


def sample_trajectories(
    models: list[GPModel],
    x: np.ndarray,
    M: int,
    rng: np.random.Generator | None = None,
    base: np.ndarray | None = None,
) -> np.ndarray:
    """Draw M joint trajectory samples; returns (M, t_max, k).

    Each objective is sampled independently from its joint posterior over
    epochs 1..t_max at setting x.  `base` optionally supplies standard
    normal draws of shape (M, k, t_max) for common random numbers.
    """
    if M < 1:
        raise ValueError("need at least one sample")
    k = len(models)
    t_max = models[0].t_max
    x = np.asarray(x, dtype=float)
    if base is None:
        if rng is None:
            raise ValueError("provide rng or base samples")
        base = rng.standard_normal((M, k, t_max))
    out = np.empty((M, t_max, k))
    ts = np.arange(1, t_max + 1)
    Xq = np.tile(x, (t_max, 1))
    for i, model in enumerate(models):
        post = model.posterior(Xq, ts)
        L = factor_covariance(post.cov)
        out[:, :, i] = post.mean[None, :] + base[:, i, :] @ L.T
    return out
