import numpy as np
import pytest

from tmobo.problems import (
    ProblemSpec,
    SyntheticProblem,
    TrainingSession,
    make_problem,
    preset_label,
    preset_names,
    preset_problem,
)
from tmobo.problems.benchmarks import base_objectives
from tmobo.problems.curves import curve
from tmobo.problems.problem import _low_discrepancy_sample


def noise_free_zdt1(curves=("m_inc", "m_inc"), noise=0.0, d=5, t_max=50):
    spec = ProblemSpec(
        name="zdt1-test",
        d=d,
        k=2,
        t_max=t_max,
        benchmark="zdt1",
        curves=curves,
        noise_frac=(noise, noise),
    )
    return SyntheticProblem(spec)


def test_observe_epoch_zero_noise_anchor():
    prob = noise_free_zdt1()
    sess = TrainingSession(prob, np.array([1.0, 0, 0, 0, 0]), np.random.default_rng(0))
    y = None
    for _ in range(25):
        y = sess.observe_epoch()
    assert y == pytest.approx([1.0, 0.0])  # curve value 1.0 at t=25


def test_zero_noise_reproduces_product():
    prob = noise_free_zdt1(curves=("m_dec", "quad"))
    rng = np.random.default_rng(1)
    x = rng.random(5)
    sess = TrainingSession(prob, x, rng)
    base = base_objectives("zdt1", x, 2)
    for t in range(1, prob.spec.t_max + 1):
        y = sess.observe_epoch()
        g = np.array([curve("m_dec", t, 50), curve("quad", t, 50)])
        assert y == pytest.approx(base * g)


def test_noisy_sessions_deterministic_by_seed():
    prob = noise_free_zdt1(noise=0.05)
    x = np.full(5, 0.4)
    t1 = [TrainingSession(prob, x, np.random.default_rng(42)).observe_epoch() for _ in range(1)]
    s1 = TrainingSession(prob, x, np.random.default_rng(42))
    s2 = TrainingSession(prob, x, np.random.default_rng(42))
    for _ in range(10):
        assert s1.observe_epoch().tolist() == s2.observe_epoch().tolist()


def test_session_rejects_past_horizon():
    prob = noise_free_zdt1(t_max=3)
    sess = TrainingSession(prob, np.zeros(5), np.random.default_rng(0))
    for _ in range(3):
        sess.observe_epoch()
    with pytest.raises(RuntimeError):
        sess.observe_epoch()


def test_trajectory_contiguous_from_one():
    prob = noise_free_zdt1()
    sess = TrainingSession(prob, np.zeros(5), np.random.default_rng(0))
    for t in range(1, 6):
        sess.observe_epoch()
        assert sess.trajectory.last_epoch == t
    with pytest.raises(ValueError):
        sess.trajectory.append(9, np.zeros(2))


def test_objective_ranges_cached_and_deterministic():
    prob = noise_free_zdt1(curves=("m_dec", "m_inc"))
    r1 = prob.objective_ranges()
    r2 = prob.objective_ranges()
    assert r1 is r2
    fresh = noise_free_zdt1(curves=("m_dec", "m_inc"))
    assert fresh.objective_ranges().tolist() == r1.tolist()


def test_objective_ranges_near_dense_oracle():
    prob = noise_free_zdt1(curves=("m_dec", "m_inc"))
    est = prob.objective_ranges()
    sample = _low_discrepancy_sample(6, 100_000, 123)
    ts = 1 + np.minimum((sample[:, -1] * 50).astype(int), 49)
    lo = np.full(2, np.inf)
    hi = np.full(2, -np.inf)
    for t in np.unique(ts):
        vals = prob._noise_free_batch(sample[ts == t, :5], int(t))
        lo = np.minimum(lo, vals.min(axis=0))
        hi = np.maximum(hi, vals.max(axis=0))
    dense = hi - lo
    assert np.all(np.abs(est - dense) <= 0.05 * dense)


def test_noise_std_scales_with_range():
    prob = noise_free_zdt1(curves=("m_dec", "m_inc"), noise=0.01)
    assert prob.noise_std() == pytest.approx(0.01 * prob.objective_ranges())


def test_native_bounds_mapping():
    spec = ProblemSpec(
        name="scaled",
        d=2,
        k=2,
        t_max=5,
        benchmark="zdt1",
        curves=("none", "none"),
        noise_frac=(0.0, 0.0),
        bounds=((0.0, 1.0), (0.0, 1.0)),
    )
    prob = SyntheticProblem(spec)
    assert prob.noise_free(np.array([1.0, 0.0]), 1) == pytest.approx([1.0, 0.0])


def test_presets_cover_twenty_problems():
    names = preset_names()
    assert len(names) == 20
    assert len(set(names)) == 20
    assert preset_label("zdt1_mp") == "ZDT1(M-P)"
    prob = preset_problem("zdt1_mm")
    assert prob.spec.curves == ("m_dec", "m_inc")
    assert prob.spec.d == 5 and prob.spec.t_max == 50
    assert prob.spec.noise_frac == (0.01, 0.01)


def test_make_problem_variants():
    p1 = make_problem({"preset": "zdt2_mq", "noise_frac": 0.1})
    assert p1.spec.noise_frac == (0.1, 0.1)
    p2 = make_problem(
        {
            "name": "custom",
            "d": 4,
            "k": 2,
            "t_max": 10,
            "benchmark": "zdt1",
            "curves": ["m_dec", "m_inc"],
            "noise_frac": 0.0,
        }
    )
    assert p2.spec.t_max == 10
    with pytest.raises(ValueError):
        make_problem({"preset": "zdt1_mm", "bogus": 1})
    with pytest.raises(KeyError):
        make_problem({"preset": "zdt9_zz"})


def test_spec_validation():
    with pytest.raises(ValueError):
        ProblemSpec("bad", 5, 2, 50, "zdt1", ("m_inc",), (0.0, 0.0))
    with pytest.raises(ValueError):
        ProblemSpec("bad", 5, 2, 50, "zdt1", ("m_inc", "m_inc"), (-0.1, 0.0))
    with pytest.raises(ValueError):
        ProblemSpec("bad", 5, 1, 50, "zdt1", ("m_inc",), (0.0,))
