"""Brute-force counting oracles: partitions and overpartitions.

Counts of unrestricted partitions and overpartitions are pinned to
literature values; the structural invariants of the condition sets
(distinct odd parts, frequency caps, parity windows) are exercised by
hand-picked witnesses and hypothesis sweeps over the enumerators.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshelf import partitions
from qshelf.partitions import (
    Overpartition,
    Partition,
    enumerate_overpartitions,
    enumerate_partitions,
    gen_fn,
    ghost_conditions,
    h12_conditions,
    h12_oracle,
    h_conditions,
    h_oracle,
    official_conditions,
    overpartition_accepts,
    overpartition_gen_fn,
    overpartition_witnesses,
    overpartitions_of,
    partitions_of,
    product_side_conditions,
    witnesses,
)

# unrestricted partition numbers p(0)..p(20)
PARTITION_COUNTS = [
    1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297,
    385, 490, 627,
]

# overpartition numbers for n = 0..15
OVERPARTITION_COUNTS = [
    1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232, 344, 504, 728, 1040, 1472,
]

# counts of the merged first-two-column class at k=3, i=2, j=1 over J=0:
# only weights 0..2 admit a partition at all (frozen from the enumerator,
# cross-checked against the combiner matrix entries)
H12_322_10 = [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]


def test_partition_counts_match_literature():
    assert [len(partitions_of(n)) for n in range(21)] == PARTITION_COUNTS


def test_overpartition_counts_match_literature():
    assert [len(overpartitions_of(n)) for n in range(16)] == OVERPARTITION_COUNTS


@given(st.integers(min_value=0, max_value=18))
def test_partitions_have_correct_weight_and_order(n):
    for p in partitions_of(n):
        parts = p.parts()
        assert sum(parts) == n
        assert list(parts) == sorted(parts, reverse=True)


@given(st.integers(min_value=0, max_value=12))
def test_overpartitions_weight_splits_into_plain_and_overlined(n):
    for op in overpartitions_of(n):
        assert sum(m * c for m, c in op.freq.items()) + sum(op.overlined) == n
        assert all(v >= 1 for v in op.overlined)


def test_enumerators_agree_with_materializers():
    for n in range(10):
        assert tuple(enumerate_partitions(n)) == partitions_of(n)
        assert tuple(enumerate_overpartitions(n)) == overpartitions_of(n)


# ---------------------------------------------------------------------------
# partition statistics
# ---------------------------------------------------------------------------

def test_vodd_counts_odd_parts_below_doubled_bound():
    # vodd(t) counts odd parts of size at most 2t
    p = Partition(freq={1: 2, 3: 1, 4: 2, 7: 1}, n=16)
    assert p.vodd(0) == 0
    assert p.vodd(1) == 2  # the two ones
    assert p.vodd(2) == 3  # the three is now inside
    assert p.vodd(4) == 4  # and the seven
    assert p.has_repeated_odd


@given(st.integers(min_value=0, max_value=14))
def test_vodd_is_monotone(n):
    for p in partitions_of(n):
        values = [p.vodd(t) for t in range(0, n + 2)]
        assert values == sorted(values)
        assert values[-1] == sum(c for m, c in p.freq.items() if m % 2)


# ---------------------------------------------------------------------------
# condition sets
# ---------------------------------------------------------------------------

@given(
    st.integers(min_value=2, max_value=4),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=14),
)
@settings(max_examples=40, deadline=None)
def test_official_partitions_have_distinct_small_odds(k, J, n):
    """Accepted partitions never repeat an odd part below the shelf bound."""
    for i in range(1, k + 1):
        cond = official_conditions(k, i, J)
        for p in partitions_of(n):
            if cond.accepts(p):
                seen = [m for m, c in p.freq.items() if m % 2 and m <= 2 * J + 1 and c > 1]
                assert not seen, (k, i, J, p.parts())


def test_witness_lists_match_generating_function():
    cond = official_conditions(3, 2, 1)
    series = gen_fn(cond, 14)
    for n in range(15):
        assert len(witnesses(cond, n)) == series.coefficient(n)


def test_condition_describe_mentions_parameters():
    text = official_conditions(3, 2, 1).describe()
    assert "3" in text and "2" in text


def test_product_side_requires_interior_position():
    with pytest.raises(ValueError):
        product_side_conditions(3, 1)
    with pytest.raises(ValueError):
        product_side_conditions(3, 4)


def test_h12_oracle_frozen_values():
    got = h12_oracle(3, 2, 1, 0, 12)
    assert got.coefficients(0, 13) == H12_322_10


def test_h_oracle_equals_sum_of_column_oracles():
    # the merged class is exactly the union of the first two column classes
    for i in (1, 2, 3):
        merged = h12_oracle(3, i, 1, 0, 10)
        split = h_oracle(3, i, 1, 1, 0, 10) + h_oracle(3, i, 2, 1, 0, 10)
        assert merged == split.truncate(merged.prec)


def test_h_conditions_rejects_out_of_range_column():
    with pytest.raises(ValueError):
        h_conditions(3, 1, 4, 1, 0)


# ---------------------------------------------------------------------------
# overpartition conditions
# ---------------------------------------------------------------------------

def test_ones_bound_is_strict():
    two_ones = Overpartition(freq={1: 2}, overlined=frozenset(), n=2)
    one_plain_one_over = Overpartition(freq={1: 1}, overlined=frozenset({1}), n=2)
    assert not overpartition_accepts(two_ones, 3, 2, ghost=False)
    assert not overpartition_accepts(one_plain_one_over, 3, 2, ghost=False)
    assert overpartition_accepts(two_ones, 3, 3, ghost=False)


def test_ground_window_excludes_saturated_ones_for_ghosts():
    """At the ghost parity with i=k, a saturated block of ones is rejected.

    The pair window at level 0 sees only the ones; its parity test is
    what distinguishes the ghost family from the official one there.
    """
    k = 2
    one = Overpartition(freq={1: 1}, overlined=frozenset(), n=1)
    assert overpartition_accepts(one, k, 2, ghost=False)
    assert not overpartition_accepts(one, k, 2, ghost=True)


def test_overline_counter():
    op = Overpartition(freq={1: 1, 3: 2, 5: 1}, overlined=frozenset({3, 5}), n=20)
    assert op.vover(2) == 0
    assert op.vover(3) == 1
    assert op.vover(5) == 2
    assert op.num_overlined == 2
    assert op.num_parts == 6


@given(
    st.integers(min_value=2, max_value=3),
    st.integers(min_value=0, max_value=9),
    st.booleans(),
)
@settings(max_examples=30, deadline=None)
def test_overpartition_frequency_caps(k, n, ghost):
    for i in range(2, k + 1):
        for op in overpartition_witnesses(k, i, n, ghost):
            assert op.freq.get(1, 0) + (1 in op.overlined) <= i - 1
            for l in range(0, n + 1):
                pair = op.freq.get(l, 0) + op.freq.get(l + 1, 0) + (l + 1 in op.overlined)
                assert pair <= k - 1


def test_overpartition_tensor_keys_are_graded():
    grid = overpartition_gen_fn(2, 2, 8, ghost=False)
    assert grid[(0, 0, 0)] == 1  # the empty overpartition
    for (over, parts, weight), count in grid.items():
        assert count > 0
        assert 0 <= over <= parts <= weight or (parts == 0 and weight == 0)


def test_ghost_and_official_families_differ():
    official = overpartition_gen_fn(2, 2, 8, ghost=False)
    ghost = overpartition_gen_fn(2, 2, 8, ghost=True)
    assert official != ghost
