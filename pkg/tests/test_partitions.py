import pytest
from hypothesis import given
import hypothesis.strategies as st

from vanschur.partitions import (
    AdmissibleBounds,
    as_partition,
    count_admissible,
    dominates,
    enumerate_admissible,
    is_admissible,
)


partitions = st.lists(st.integers(0, 8), min_size=1, max_size=6).map(
    lambda xs: tuple(sorted(xs, reverse=True))
)


def test_dominates_examples():
    assert dominates((2, 0), (1, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2, 0))
    assert not dominates((2, 2, 2, 0), (3, 1, 1, 1))
    assert dominates((1, 1), (1, 1))


def test_dominates_pads_shorter_argument():
    assert dominates((2,), (1, 1))
    assert not dominates((1, 1), (2,))


def test_dominates_rejects_weight_mismatch():
    with pytest.raises(ValueError, match="incomparable"):
        dominates((2, 0), (1, 0))


@given(partitions)
def test_dominates_is_reflexive(lam):
    assert dominates(lam, lam)


@given(partitions, partitions)
def test_dominates_antisymmetric_on_distinct(a, b):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    if sum(a) != sum(b) or a == b:
        return
    assert not (dominates(a, b) and dominates(b, a))


def test_bounds_shape():
    bounds = AdmissibleBounds.of(5, 2)
    assert bounds.upper == (16, 12, 8, 4, 0)
    assert bounds.lower == (8, 8, 8, 8, 8)
    assert sum(bounds.upper) == sum(bounds.lower) == bounds.target_weight == 40


def test_is_admissible_examples():
    assert is_admissible((2, 0), 2, 1)
    assert is_admissible((1, 1), 2, 1)
    assert not is_admissible((3, 0), 2, 1)
    assert not is_admissible((1, 1, 1), 2, 1)  # too many parts
    assert not is_admissible((2, 1), 2, 1)  # wrong weight


def test_enumeration_small():
    assert list(enumerate_admissible(2, 1)) == [(2, 0), (1, 1)]
    assert list(enumerate_admissible(1, 5)) == [(0,)]
    assert count_admissible(5, 1) == 59
    assert count_admissible(6, 2) == 3996


@pytest.mark.parametrize("n,k", [(4, 1), (5, 1), (6, 1), (4, 2), (3, 4)])
def test_enumeration_is_strictly_reverse_lex(n, k):
    out = list(enumerate_admissible(n, k))
    assert all(a > b for a, b in zip(out, out[1:]))
    assert len(set(out)) == len(out)
    assert all(is_admissible(lam, n, k) for lam in out)
    assert all(len(lam) == n for lam in out)


def all_partitions_bounded(w, slots, cap):
    """Independent generator: every partition of w into <= slots parts <= cap."""
    if slots == 0:
        if w == 0:
            yield ()
        return
    for v in range(min(cap, w), -1, -1):
        if v == 0:
            if w == 0:
                yield (0,) * slots
            return
        for tail in all_partitions_bounded(w - v, slots - 1, v):
            yield (v,) + tail


@pytest.mark.parametrize("n,k", [(3, 1), (4, 1), (5, 1), (4, 2), (5, 2), (4, 3)])
def test_enumeration_complete_against_exhaustive_filter(n, k):
    w = k * n * (n - 1)
    brute = sorted(
        (
            lam
            for lam in all_partitions_bounded(w, n, w)
            if is_admissible(lam, n, k)
        ),
        reverse=True,
    )
    assert list(enumerate_admissible(n, k)) == brute


def test_as_partition_validation():
    assert as_partition((3, 1), 4) == (3, 1, 0, 0)
    with pytest.raises(ValueError):
        as_partition((1, 2))
    with pytest.raises(ValueError):
        as_partition((1, -1))
    with pytest.raises(ValueError):
        as_partition((1, 1, 1), 2)
