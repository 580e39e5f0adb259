"""Weight-label validation, enumeration by size, and growth decomposition."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutofflab.partitions import (
    GrowthStep,
    IndexingSetKind,
    LastSign,
    Weight,
    WeightKind,
    enumerate_by_size,
    growth_path,
    partition_counts,
    size_of,
)


def brute_partitions(total: int, max_len: int, max_part: int | None = None):
    """Independent recursive enumeration of bounded-length partitions."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    cap = total if max_part is None else min(total, max_part)
    for first in range(cap, 0, -1):
        for rest in brute_partitions(total - first, max_len - 1, first):
            yield (first,) + rest


# -- validation ------------------------------------------------------------


def test_parts_must_be_non_increasing():
    with pytest.raises(ValueError):
        Weight.of((1, 2), WeightKind.Y)


def test_negative_parts_only_for_z():
    with pytest.raises(ValueError):
        Weight.of((1, -1), WeightKind.Y)
    w = Weight.of((1, -1), WeightKind.Z)
    assert w.parts == (Fraction(1), Fraction(-1))


def test_integer_kinds_reject_halves():
    for kind in (WeightKind.Y, WeightKind.evenY, WeightKind.doubledY,
                 WeightKind.evenOrOddY):
        with pytest.raises(ValueError):
            Weight.of((Fraction(3, 2), Fraction(1, 2)), kind)


def test_even_kind_rejects_odd_parts():
    with pytest.raises(ValueError):
        Weight.of((3, 1), WeightKind.evenY)
    assert Weight.of((4, 2, 0), WeightKind.evenY).size == 6


def test_doubled_kind_needs_paired_parts():
    assert Weight.of((3, 3, 1, 1), WeightKind.doubledY).size == 8
    with pytest.raises(ValueError):
        Weight.of((3, 3, 1, 0), WeightKind.doubledY)
    with pytest.raises(ValueError):
        Weight.of((2, 1, 1, 0), WeightKind.doubledY)


def test_parity_mixed_kinds():
    assert Weight.of((3, 1, 1), WeightKind.evenOrOddY).size == 5
    assert Weight.of((4, 2, 0), WeightKind.evenOrOddY).size == 6
    with pytest.raises(ValueError):
        Weight.of((3, 2, 1), WeightKind.evenOrOddY)
    # zero coordinates are even, so an odd label must have no zeros
    with pytest.raises(ValueError):
        Weight.of((3, 1, 0), WeightKind.evenOrOddY)


def test_half_kind_needs_equal_parity():
    w = Weight.of((Fraction(3, 2), Fraction(1, 2)), WeightKind.halfY)
    assert not w.is_integer
    with pytest.raises(ValueError):
        Weight.of((Fraction(3, 2), 1), WeightKind.halfY)


def test_of_rejects_non_half_values():
    with pytest.raises(ValueError):
        Weight.of((Fraction(1, 3),), WeightKind.Y)


def test_sign_rules():
    with pytest.raises(ValueError):
        Weight.of((2, 1), WeightKind.Y, minus_last=True)
    w = Weight.of((2, 1), WeightKind.signedLastPart, minus_last=True)
    assert w.parts[-1] == -1 and w.size == 3
    # explicit constructor checks
    with pytest.raises(ValueError):
        Weight((4, 0), WeightKind.signedLastPart, LastSign.minus)
    with pytest.raises(ValueError):
        Weight((4, 0), WeightKind.Y, LastSign.plus)
    with pytest.raises(ValueError):
        Weight((4, 2), WeightKind.Y, LastSign.zero)


# -- views and transforms --------------------------------------------------


def test_parts_size_and_str():
    w = Weight.of((Fraction(5, 2), Fraction(1, 2), Fraction(1, 2)),
                  WeightKind.halfY)
    assert w.parts == (Fraction(5, 2), Fraction(1, 2), Fraction(1, 2))
    assert w.size == Fraction(7, 2)
    assert str(w) == "5/2,1/2,1/2"
    v = Weight.of((2, 1, 0))
    assert str(v) == "2,1,0"
    s = Weight.of((2, 1), WeightKind.signedLastPart, minus_last=True)
    assert str(s) == "2,-1"


def test_half_shift_adds_one_half_everywhere():
    w = Weight.of((2, 1, 0))
    shifted = w.half_shift()
    assert shifted.parts == (Fraction(5, 2), Fraction(3, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        shifted.half_shift()


def test_flip_last_only_signed_nonzero():
    w = Weight.of((2, 1), WeightKind.signedLastPart)
    assert w.flip_last().parts[-1] == -1
    assert w.flip_last().flip_last() == w
    z = Weight.of((2, 0), WeightKind.signedLastPart)
    assert z.flip_last() == z
    y = Weight.of((2, 1), WeightKind.Y)
    assert y.flip_last() == y


def test_as_kind_revalidates():
    w = Weight.of((2, 2), WeightKind.Y)
    assert w.as_kind(WeightKind.evenY).kind is WeightKind.evenY
    assert w.as_kind(WeightKind.doubledY).kind is WeightKind.doubledY
    with pytest.raises(ValueError):
        Weight.of((2, 1), WeightKind.Y).as_kind(WeightKind.evenY)
    m = Weight.of((2, 1), WeightKind.signedLastPart, minus_last=True)
    with pytest.raises(ValueError):
        m.as_kind(WeightKind.Y)


def test_size_of_matches_property():
    w = Weight.of((3, 1, 1))
    assert size_of(w) == w.size == 5


# -- counting --------------------------------------------------------------


@pytest.mark.parametrize("max_len", [1, 2, 3, 5])
def test_partition_counts_match_brute_force(max_len):
    counts = partition_counts(12, max_len)
    for s in range(13):
        assert counts[s] == sum(1 for _ in brute_partitions(s, max_len))


def test_counts_of_four():
    # 4, 31, 22, 211, 1111
    assert partition_counts(4, 4)[4] == 5
    assert partition_counts(4, 2)[4] == 3


@pytest.mark.parametrize("x", [0.3, 0.5])
def test_partition_series_bounded_by_five_x(x):
    counts = partition_counts(200, 200)
    partial = sum(counts[s] * x**s for s in range(1, 201))
    rest = 10 * counts[200] * x**200  # crude closing, negligible at x <= 1/2
    assert partial + rest <= 5.0 * x


# -- enumeration -----------------------------------------------------------


def sizes_are_sorted(ws):
    sizes = [w.size for w in ws]
    return all(a <= b for a, b in zip(sizes, sizes[1:]))


def test_enumerate_plain_partitions():
    idx = IndexingSetKind(WeightKind.Y, 3)
    ws = list(enumerate_by_size(idx, 6))
    assert sizes_are_sorted(ws)
    assert len(ws) == len(set(ws))
    counts = partition_counts(6, 3)
    assert len(ws) == sum(counts[s] for s in range(7))
    assert all(w.length == 3 for w in ws)


def test_enumerate_half_partitions():
    idx = IndexingSetKind(WeightKind.halfY, 2)
    ws = list(enumerate_by_size(idx, 4))
    ints = [w for w in ws if w.is_integer]
    halves = [w for w in ws if not w.is_integer]
    counts = partition_counts(4, 2)
    assert len(ints) == sum(counts[s] for s in range(5))
    # halves are integer labels shifted by (1/2, 1/2): size <= 4 - 1
    assert len(halves) == sum(counts[s] for s in range(4))
    assert sizes_are_sorted(ws)


def test_enumerate_even_partitions():
    idx = IndexingSetKind(WeightKind.evenY, 2)
    ws = list(enumerate_by_size(idx, 8))
    assert all(all(p % 2 == 0 for p in w.parts) for w in ws)
    counts = partition_counts(4, 2)
    assert len(ws) == sum(counts[s] for s in range(5))


def test_enumerate_doubled_partitions():
    idx = IndexingSetKind(WeightKind.doubledY, 4)
    ws = list(enumerate_by_size(idx, 8))
    for w in ws:
        nz = [p for p in w.parts if p]
        assert len(nz) % 2 == 0
        assert all(nz[2 * i] == nz[2 * i + 1] for i in range(len(nz) // 2))
    counts = partition_counts(4, 2)
    assert len(ws) == sum(counts[s] for s in range(5))


def test_enumerate_single_parity_partitions():
    idx = IndexingSetKind(WeightKind.evenOrOddY, 2)
    ws = list(enumerate_by_size(idx, 6))
    evens = [w for w in ws if all(p % 2 == 0 for p in w.parts)]
    odds = [w for w in ws if all(p % 2 == 1 for p in w.parts)]
    assert len(evens) + len(odds) == len(ws)
    counts = partition_counts(3, 2)
    assert len(evens) == sum(counts[s] for s in range(4))
    # odd labels: both coordinates odd, total <= 6: (1,1),(3,1),(3,3),(5,1)
    assert {tuple(int(p) for p in w.parts) for w in odds} == \
        {(1, 1), (3, 1), (3, 3), (5, 1)}


def test_enumerate_signed_labels_doubles_nonzero_last():
    idx = IndexingSetKind(WeightKind.signedLastPart, 2)
    ws = list(enumerate_by_size(idx, 3))
    nonzero_last = [w for w in ws if w.parts2[-1] != 0]
    plus = [w for w in nonzero_last if w.last_sign is LastSign.plus]
    minus = [w for w in nonzero_last if w.last_sign is LastSign.minus]
    assert len(plus) == len(minus) > 0
    assert {w.flip_last() for w in plus} == set(minus)


def test_enumerate_fractional_cap():
    idx = IndexingSetKind(WeightKind.halfY, 3)
    ws = list(enumerate_by_size(idx, Fraction(3, 2)))
    assert {str(w) for w in ws} == {"0,0,0", "1,0,0", "1/2,1/2,1/2"}


def test_enumerate_rejects_negative_cap():
    with pytest.raises(ValueError):
        list(enumerate_by_size(IndexingSetKind(WeightKind.Y, 2), -1))


def test_indexing_set_needs_positive_length():
    with pytest.raises(ValueError):
        IndexingSetKind(WeightKind.Y, 0)


# -- growth decomposition --------------------------------------------------


def replay(steps, length):
    current = Weight.zero(length, WeightKind.Y)
    for step in steps:
        assert step.base == current
        current = step.apply()
    return current


@pytest.mark.parametrize("parts", [
    (0, 0), (1, 0), (1, 1), (2, 1), (3, 3, 2), (4, 2, 2, 1), (5, 0, 0),
    (6, 4, 4, 1, 1),
])
def test_growth_path_replays_to_weight(parts):
    w = Weight.of(parts, WeightKind.Y)
    steps = growth_path(w)
    assert replay(steps, w.length) == w
    assert len(steps) == (max(parts) if parts else 0)


def test_growth_path_is_widest_first():
    steps = growth_path(Weight.of((3, 1, 0)))
    assert [(s.l, s.k) for s in steps] == [(2, 1), (1, 1), (1, 2)]


def test_growth_rejects_halves_and_signs():
    from cutofflab.errors import HalfPartitionUnsupported
    with pytest.raises(HalfPartitionUnsupported):
        growth_path(Weight.of((Fraction(1, 2),), WeightKind.halfY))
    with pytest.raises(HalfPartitionUnsupported):
        growth_path(Weight.of((2, 1), WeightKind.signedLastPart,
                              minus_last=True))


def test_growth_step_needs_flat_top():
    with pytest.raises(ValueError):
        GrowthStep(l=2, k=1, base=Weight.of((2, 1, 0))).apply()
    grown = GrowthStep(l=2, k=1, base=Weight.of((2, 2, 0))).apply()
    assert grown.parts == (3, 3, 0)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=7), min_size=1, max_size=5))
def test_growth_path_replays_random_partitions(values):
    parts = tuple(sorted(values, reverse=True))
    w = Weight.of(parts, WeightKind.Y)
    assert replay(growth_path(w), w.length) == w


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=4))
def test_sort_key_orders_by_size_first(values):
    a = Weight.of(tuple(sorted(values, reverse=True)))
    b = Weight.of((sum(values) + 1,) + (0,) * (len(values) - 1))
    assert a.sort_key() < b.sort_key()
