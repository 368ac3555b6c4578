import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmobo.core.domain import QueryPair
from tmobo.surrogate.kernels import (
    KernelSpec,
    kernel_eval,
    kernel_matrix,
    spatial_kernel,
    temporal_kernel,
)


def make_spec(kind="rbf", sv=1.0, noise=1e-4, d=3):
    params = {"rbf": [0.4], "exp_decay": [1.3, 0.7], "linear": [0.5, 2.0]}[kind]
    return KernelSpec(
        lengthscales=np.full(d, 0.5),
        signal_variance=sv,
        temporal_kind=kind,
        temporal_params=np.array(params),
        noise_variance=noise,
    )


def test_self_similarity_is_maximum():
    spec = make_spec("rbf", sv=2.5)
    z = QueryPair(np.array([0.2, 0.4, 0.9]), 3)
    val = kernel_eval(spec, z, z, t_max=10)
    assert val == pytest.approx(2.5)  # spatial variance x temporal self-value 1
    other = QueryPair(np.array([0.3, 0.4, 0.9]), 5)
    assert kernel_eval(spec, z, other, t_max=10) < val


def test_product_structure_identical_x():
    spec = make_spec("exp_decay", sv=3.0)
    x = np.array([0.1, 0.5, 0.7])
    tau = np.array([0.0, 0.5])
    full = kernel_matrix(spec, x[None, :], tau[:1], x[None, :], tau[1:])[0, 0]
    kt = temporal_kernel(tau[:1], tau[1:], "exp_decay", spec.temporal_params)[0, 0]
    assert full == pytest.approx(3.0 * kt)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_symmetry(data):
    kind = data.draw(st.sampled_from(["rbf", "exp_decay", "linear"]))
    spec = make_spec(kind)
    coords = st.floats(0, 1)
    x1 = np.array(data.draw(st.lists(coords, min_size=3, max_size=3)))
    x2 = np.array(data.draw(st.lists(coords, min_size=3, max_size=3)))
    t1 = data.draw(st.integers(1, 10))
    t2 = data.draw(st.integers(1, 10))
    a = kernel_eval(spec, QueryPair(x1, t1), QueryPair(x2, t2), t_max=10)
    b = kernel_eval(spec, QueryPair(x2, t2), QueryPair(x1, t1), t_max=10)
    assert a == pytest.approx(b, rel=1e-12)


def test_exp_decay_closed_form():
    alpha, beta = 1.3, 0.7
    tau = np.array([0.2, 0.6])
    val = temporal_kernel(tau[:1], tau[1:], "exp_decay", (alpha, beta))[0, 0]
    assert val == pytest.approx(beta**alpha / (0.2 + 0.6 + beta) ** alpha)


def test_linear_closed_form():
    c0, c1 = 0.5, 2.0
    val = temporal_kernel([0.3], [0.4], "linear", (c0, c1))[0, 0]
    assert val == pytest.approx(c0 + c1 * 0.3 * 0.4)


def test_spatial_ard_lengthscales():
    ls = np.array([0.1, 10.0])
    X1 = np.array([[0.0, 0.0]])
    X2 = np.array([[0.1, 0.0], [0.0, 0.1]])
    k = spatial_kernel(X1, X2, ls, 1.0)[0]
    assert k[0] < k[1]  # short lengthscale dimension decays faster


def test_spec_validation():
    with pytest.raises(ValueError):
        make_spec("rbf", noise=1e-13)
    with pytest.raises(ValueError):
        KernelSpec(np.array([0.5]), -1.0, "rbf", np.array([0.3]), 1e-4)
    with pytest.raises(ValueError):
        KernelSpec(np.array([0.5]), 1.0, "exp_decay", np.array([0.3]), 1e-4)
    with pytest.raises(ValueError):
        KernelSpec(np.array([0.5]), 1.0, "warp", np.array([0.3]), 1e-4)


def test_gram_matrices_symmetric_psd():
    rng = np.random.default_rng(0)
    for kind in ("rbf", "exp_decay", "linear"):
        spec = make_spec(kind, d=2)
        X = rng.random((12, 2))
        tau = rng.random(12)
        K = kernel_matrix(spec, X, tau)
        assert np.allclose(K, K.T)
        eig = np.linalg.eigvalsh(K)
        assert eig.min() > -1e-9
