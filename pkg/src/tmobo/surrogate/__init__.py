from tmobo.surrogate.gp import (
    FactorizationError,
    GPModel,
    PosteriorBelief,
    chol_with_jitter,
    factor_covariance,
    fit_gp,
    rescale_epochs,
    sample_trajectories,
)
from tmobo.surrogate.kernels import (
    TEMPORAL_KINDS,
    KernelSpec,
    kernel_diag,
    kernel_eval,
    kernel_matrix,
    spatial_kernel,
    temporal_kernel,
)

__all__ = [
    "FactorizationError",
    "GPModel",
    "KernelSpec",
    "PosteriorBelief",
    "TEMPORAL_KINDS",
    "chol_with_jitter",
    "factor_covariance",
    "fit_gp",
    "kernel_diag",
    "kernel_eval",
    "kernel_matrix",
    "rescale_epochs",
    "sample_trajectories",
    "spatial_kernel",
    "temporal_kernel",
]
