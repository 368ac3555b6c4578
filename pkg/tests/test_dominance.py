import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmobo.core.dominance import dominates, non_dominated_mask, pareto_front

vectors = st.lists(
    st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=2, max_size=4
)


def test_dominates_examples():
    assert dominates((1, 2), (2, 2)) is True
    assert dominates((1, 2), (1, 2)) is False
    assert dominates((0.5, 3), (1, 1)) is False


def test_dominates_length_mismatch():
    with pytest.raises(ValueError):
        dominates((1, 2), (1, 2, 3))


@given(vectors)
def test_irreflexive(a):
    assert not dominates(a, a)


@given(st.data())
def test_antisymmetric(data):
    a = data.draw(vectors)
    b = data.draw(st.lists(st.floats(-10, 10), min_size=len(a), max_size=len(a)))
    assert not (dominates(a, b) and dominates(b, a))


@given(st.data())
def test_transitive(data):
    k = data.draw(st.integers(2, 4))
    coord = st.floats(-5, 5)
    a = data.draw(st.lists(coord, min_size=k, max_size=k))
    b = data.draw(st.lists(coord, min_size=k, max_size=k))
    c = data.draw(st.lists(coord, min_size=k, max_size=k))
    if dominates(a, b) and dominates(b, c):
        assert dominates(a, c)


def test_mask_keeps_first_duplicate():
    vals = np.array([[1.0, 3.0], [2.0, 1.0], [1.0, 3.0], [5.0, 5.0]])
    mask = non_dominated_mask(vals)
    assert mask.tolist() == [True, True, False, False]


def test_mask_matches_bruteforce_random():
    rng = np.random.default_rng(7)
    for k in (2, 3, 4):
        for _ in range(25):
            vals = rng.random((rng.integers(1, 12), k)).round(1)
            mask = non_dominated_mask(vals)
            expected = []
            seen = set()
            for i, v in enumerate(vals):
                key = tuple(v)
                dup = key in seen
                seen.add(key)
                dom = any(dominates(w, v) for w in vals)
                expected.append(not dom and not dup)
            assert mask.tolist() == expected


def test_pareto_front_values():
    vals = np.array([[1.0, 3.0], [2.0, 1.0], [3.0, 3.0]])
    front = pareto_front(vals)
    assert sorted(map(tuple, front)) == [(1.0, 3.0), (2.0, 1.0)]
