"""The shelf family: closed forms, route equivalence, and the climb.

The frozen product expansions were generated with an independent engine
(sympy) straight from the factor lists; the closed-form freezes are
regression anchors for series that are cross-verified against counting
oracles elsewhere in the suite.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshelf import faults
from qshelf.series import MismatchError, PrecisionExhaustedError, TruncatedLaurentSeries
from qshelf.shelves import (
    closed_ghost,
    closed_official,
    empirical_hypothesis_check,
    ghost0_closed,
    ghost_position1,
    next_shelf,
    product_side,
    required_truncation,
    shelf0,
    shelf0_sum_form,
)

# independent sympy expansion of the same infinite products, n = 0..25
PRODUCT_EXPANSIONS = {
    (2, 2): [1, 0, 0, 1, 1, 0, 0, 1, 2, 1, 0, 2, 3, 1, 0, 3, 5, 2, 1, 5, 7, 3, 1, 7, 11, 5],
    (3, 2): [1, 1, 1, 1, 2, 3, 3, 3, 5, 7, 7, 8, 11, 14, 15, 17, 23, 28, 30, 34, 43, 52, 56, 63, 79, 93],
    (3, 3): [1, 0, 0, 1, 1, 1, 1, 2, 3, 2, 2, 4, 6, 5, 5, 9, 11, 10, 11, 16, 20, 20, 21, 29, 36, 35],
    (4, 2): [1, 1, 1, 2, 3, 3, 4, 6, 8, 9, 11, 15, 19, 22, 26, 34, 42, 48, 57, 71, 85, 98, 115, 139, 166, 190],
    (4, 3): [1, 1, 1, 1, 2, 3, 3, 4, 6, 8, 9, 10, 14, 18, 20, 24, 31, 38, 43, 50, 63, 76, 86, 100, 122, 145],
    (4, 4): [1, 0, 0, 1, 1, 1, 1, 2, 3, 3, 3, 5, 7, 6, 7, 11, 14, 14, 16, 22, 27, 29, 32, 42, 52, 55],
}

# regression anchors for higher shelves (oracle-verified closed forms)
CLOSED_OFFICIAL = {
    (2, 1, 2): [1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 2, 1, 1],
    (3, 1, 2): [1, 0, 0, 1, 1, 1, 1, 1, 2, 3, 3, 3, 4, 5, 6, 7],
    (3, 2, 3): [1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2],
    (4, 1, 3): [1, 0, 0, 1, 1, 1, 1, 1, 2, 3, 3, 4, 5, 5, 6, 9],
}
CLOSED_GHOST = {
    (2, 1, 2): [1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1],
    (3, 1, 3): [1, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 2, 3, 3, 3],
}


@pytest.mark.parametrize("k,i", sorted(PRODUCT_EXPANSIONS))
def test_product_side_matches_independent_expansion(k, i):
    want = PRODUCT_EXPANSIONS[(k, i)]
    assert product_side(k, i, len(want)).coefficients(0, len(want)) == want


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_shelf0_routes_coincide(k):
    prec = 45
    for i in range(1, k + 1):
        closed = closed_official(k, 0, i, prec)
        assert shelf0_sum_form(k, i, prec) == closed
        if i >= 2:
            assert product_side(k, i, prec) == closed


@pytest.mark.parametrize("key", sorted(CLOSED_OFFICIAL))
def test_closed_official_regression(key):
    k, j, i = key
    want = CLOSED_OFFICIAL[key]
    assert closed_official(k, j, i, len(want)).coefficients(0, len(want)) == want


@pytest.mark.parametrize("key", sorted(CLOSED_GHOST))
def test_closed_ghost_regression(key):
    k, j, i = key
    want = CLOSED_GHOST[key]
    assert closed_ghost(k, j, i, len(want)).coefficients(0, len(want)) == want


def test_ghost_head_collapses_onto_second_official():
    for k in (2, 3, 4):
        assert ghost0_closed(k, 1, 40) == closed_official(k, 0, 2, 40)
        assert closed_ghost(k, 0, 1, 40) == closed_official(k, 0, 2, 40)


def test_ghost_position1_needs_dictionary_above_shelf0():
    with pytest.raises(ValueError):
        closed_ghost(3, 1, 1, 20)
    # the dictionary route exists and lands on the second official
    assert ghost_position1(3, 1, 21) == closed_official(3, 1, 2, 21)


# ---------------------------------------------------------------------------
# the climb
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("k,jmax,prec", [(2, 3, 40), (3, 2, 40), (4, 2, 50)])
def test_climb_reproduces_closed_forms(k, jmax, prec):
    pair = shelf0(k, prec)
    for j in range(1, jmax + 1):
        pair = next_shelf(pair)
        assert pair.j == j
        for i in range(1, k + 1):
            got = pair.official(i)
            assert got == closed_official(k, j, i, got.prec)
        for i in range(2, k + 1):
            got = pair.ghost(i)
            assert got == closed_ghost(k, j, i, got.prec)


def test_shelf_edges_match():
    for k in (2, 3, 4):
        for j in (0, 1, 2):
            assert closed_official(k, j, k, 30) == closed_official(k, j + 1, 1, 30)


@given(
    st.integers(min_value=2, max_value=4),
    st.integers(min_value=1, max_value=3),
)
@settings(max_examples=12, deadline=None)
def test_required_truncation_is_sufficient(k, shelves):
    """Starting at exactly the bound leaves at least one verified exponent."""
    prec = required_truncation(k, shelves, 1)
    pair = shelf0(k, prec)
    for _ in range(shelves):
        pair = next_shelf(pair)
    assert pair.effective_prec >= 1
    assert pair.official(1).coefficient(0) == 1


def test_climb_raises_when_window_runs_out():
    pair = shelf0(4, 8)
    with pytest.raises(PrecisionExhaustedError):
        next_shelf(next_shelf(pair))


def test_position_range_checks():
    pair = shelf0(3, 10)
    with pytest.raises(ValueError):
        pair.official(4)
    with pytest.raises(ValueError):
        pair.ghost(1)


# ---------------------------------------------------------------------------
# leading-term behaviour
# ---------------------------------------------------------------------------

def test_empirical_thresholds():
    for k in (2, 3, 4):
        for j in (0, 1, 2):
            for i in range(1, k + 1):
                res = empirical_hypothesis_check(k, j, i, 30)
                assert res.certified and res.ok
                assert res.threshold == (2 * j + 3 if i == k else 2 * j + 1)
                assert res.valuation >= res.threshold


def test_empirical_ghost_thresholds():
    for k in (2, 3):
        for j in (0, 1, 2):
            for i in range(2, k + 1):
                res = empirical_hypothesis_check(k, j, i, 30, ghost=True)
                assert res.certified and res.ok and res.threshold == 2 * j + 1


def test_empirical_uncertified_when_window_short():
    res = empirical_hypothesis_check(3, 3, 1, 5)
    assert not res.certified and res.ok  # nothing seen, nothing claimed


def test_empirical_rejects_dictionary_only_position():
    with pytest.raises(ValueError):
        empirical_hypothesis_check(3, 1, 1, 20, ghost=True)


# ---------------------------------------------------------------------------
# fault hook
# ---------------------------------------------------------------------------

def test_fault_injection_breaks_the_climb():
    fault = faults.Fault(tag="next-shelf-official", exponent=4, match=(("k", 3), ("j", 1), ("i", 2)))
    with faults.injected(fault):
        pair = next_shelf(shelf0(3, 30))
        got = pair.official(2)
        want = closed_official(3, 1, 2, got.prec)
        assert got.first_mismatch(want) is not None
    clean = next_shelf(shelf0(3, 30)).official(2)
    assert clean == closed_official(3, 1, 2, clean.prec)


def test_fault_requires_matching_ids():
    fault = faults.Fault(tag="closed-official", exponent=3, match=(("k", 2), ("j", 0), ("i", 1)))
    with faults.injected(fault):
        assert closed_official(2, 0, 2, 10) == shelf0_sum_form(2, 2, 10)  # untouched
        assert closed_official(2, 0, 1, 10) != shelf0_sum_form(2, 1, 10)  # corrupted
