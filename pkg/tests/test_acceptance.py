"""End-to-end acceptance battery.

Each test is one acceptance criterion run at its full stated range and
exact tolerance (all arithmetic here is integer-exact; "tolerance" only
ever means a truncation window or a wall-clock budget).  Every criterion
prints a single [PASS]/[FAIL] line; run with ``pytest -s`` or ``-rA`` to
see them all.
"""

from __future__ import annotations

import time
from contextlib import contextmanager

from qshelf import axq, matrices, partitions, shelves
from qshelf.faults import Fault, injected
from qshelf.report import FAIL
from qshelf.series import assert_agree, jacobi_triple_product_check
from qshelf.suites import SuiteConfig, run_suite


@contextmanager
def criterion(name: str, budget: float | None = None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            raise AssertionError(f"took {elapsed:.2f}s, budget {budget:.0f}s")
    except BaseException as err:
        print(f"[FAIL] {name}: {err}")
        raise
    print(f"[PASS] {name} ({elapsed:.2f}s)")


def test_criterion_1_triple_product_through_degree_60():
    with criterion(
        "1: triple product sum = product through q^60 for every substitution, k <= 5",
        budget=1.0,
    ):
        for k in range(2, 6):
            step = 4 * k - 2
            for i in range(1, k + 1):
                end = jacobi_triple_product_check(2 * k - 2 * i + 1, step, 61)
                assert end >= 61, f"k={k} i={i} verified only to q^{end - 1}"


def test_criterion_2_product_side_counts_partitions():
    with criterion(
        "2: product side = difference-condition counts for n <= 25, k in 2..4, 2 <= i <= k",
        budget=30.0,
    ):
        for k in (2, 3, 4):
            for i in range(2, k + 1):
                counts = partitions.gen_fn(partitions.product_side_conditions(k, i), 25)
                assert_agree(
                    counts,
                    shelves.product_side(k, i, 26),
                    f"partition counts k={k} i={i}",
                )


def test_criterion_3_shelf0_three_routes():
    with criterion("3: shelf 0 product = theta sum = closed form through q^60, k <= 5"):
        for k in range(2, 6):
            for i in range(1, k + 1):
                prod = shelves.product_side(k, i, 61)
                assert_agree(
                    prod, shelves.shelf0_sum_form(k, i, 61), f"product vs sum k={k} i={i}"
                )
                assert_agree(
                    prod,
                    shelves.closed_official(k, 0, i, 61),
                    f"product vs closed k={k} i={i}",
                )


def test_criterion_4_climb_matches_closed_forms():
    # every division inside next_shelf is strict (a nonzero coefficient
    # below the q-power aborts), so completing the climb certifies
    # divisibility as well
    with criterion(
        "4: climbing recursion = closed forms for shelves 0..3, start degree 80, k <= 4"
    ):
        for k in range(2, 5):
            pair = shelves.shelf0(k, 81)
            for j in range(0, 4):
                if j > 0:
                    pair = shelves.next_shelf(pair)
                for i in range(1, k + 1):
                    got = pair.official(i)
                    assert_agree(
                        got,
                        shelves.closed_official(k, j, i, got.prec),
                        f"climb official k={k} j={j} i={i}",
                    )
                for i in range(2, k + 1):
                    got = pair.ghost(i)
                    assert_agree(
                        got,
                        shelves.closed_ghost(k, j, i, got.prec),
                        f"climb ghost k={k} j={j} i={i}",
                    )
            assert pair.effective_prec >= 1
            for j in range(0, 3):
                assert_agree(
                    shelves.closed_official(k, j, k, 81),
                    shelves.closed_official(k, j + 1, 1, 81),
                    f"edge match k={k} j={j}",
                )


def test_criterion_5_leading_term_thresholds():
    with criterion(
        "5: val(series - 1) >= 2j+1 (officials; 2j+3 in phase) and >= 2j+1 (ghosts), "
        "k <= 5, j <= 4"
    ):
        for k in range(2, 6):
            for j in range(0, 5):
                for i in range(1, k + 1):
                    res = shelves.empirical_hypothesis_check(k, j, i, 30)
                    want = 2 * j + 3 if i == k else 2 * j + 1
                    assert res.threshold == want
                    assert res.certified and res.ok, f"official k={k} j={j} i={i}: {res}"
                for i in range(1 if j == 0 else 2, k + 1):
                    res = shelves.empirical_hypothesis_check(k, j, i, 30, ghost=True)
                    assert res.threshold == 2 * j + 1
                    assert res.certified and res.ok, f"ghost k={k} j={j} i={i}: {res}"


def test_criterion_6_matrix_routes():
    with criterion(
        "6: inverse pattern, elimination transport, combined descent and both "
        "combiner routes, k <= 5, J <= 2, j <= J+5"
    ):
        prec = 31
        for k in range(2, 6):
            for j in range(1, 8):  # covers every shelf any (J <= 2, j <= J+5) pair visits
                b = matrices.build_b(k, j)
                a = matrices.build_a(k, j)  # verifies its own pattern
                assert a * b == matrices.PolyMatrix.identity(k)
                upper = [shelves.closed_official(k, j, i, prec) for i in range(1, k + 1)]
                lower = [shelves.closed_official(k, j - 1, i, prec) for i in range(1, k + 1)]
                c_side = matrices.build_c(k, j).apply(tuple(upper))
                b_side = b.apply(tuple(lower))
                for i in range(k):
                    assert_agree(c_side[i], b_side[i], f"elimination row {i + 1} k={k} j={j}")
                a_prime = matrices.build_a_prime(k, j)
                assert a_prime.min_exponent() >= 0
                down = a_prime.apply(tuple(upper))
                for i in range(k):
                    assert_agree(down[i], lower[i], f"descent row {i + 1} k={k} j={j}")
            for J in range(0, 3):
                for j in range(J + 1, J + 6):
                    matrices.h_matrix(k, J, j)  # product route == recursion route inside


def test_criterion_7_combinatorial_oracles():
    with criterion(
        "7: combiner entries and column sums count partitions (n <= 20, k <= 4, J <= 1, "
        "j <= J+3); condition counts = closed forms (n <= 25, J <= 2); stabilized "
        "columns through q^20; ghost head through q^40"
    ):
        for k in range(2, 5):
            for J in (0, 1):
                for j in range(J + 1, J + 4):
                    combiner = matrices.h_matrix(k, J, j)
                    for i in range(1, k + 1):
                        for l in range(1, k + 1):
                            assert_agree(
                                combiner.entry(i, l).to_series(21),
                                partitions.h_oracle(k, i, l, j, J, 20),
                                f"entry ({i},{l}) k={k} J={J} j={j}",
                            )
                        assert_agree(
                            (combiner.entry(i, 1) + combiner.entry(i, 2)).to_series(21),
                            partitions.h12_oracle(k, i, j, J, 20),
                            f"merged columns row {i} k={k} J={J} j={j}",
                        )
                for i in range(1, k + 1):
                    got = matrices.h12_stabilized(k, i, J, 20)
                    assert_agree(
                        got,
                        shelves.closed_official(k, J, i, got.prec),
                        f"stabilized k={k} J={J} i={i}",
                    )
            for J in (0, 1, 2):
                for i in range(1, k + 1):
                    assert_agree(
                        partitions.gen_fn(partitions.official_conditions(k, i, J), 25),
                        shelves.closed_official(k, J, i, 26),
                        f"official count k={k} J={J} i={i}",
                    )
                for i in range(2, k + 1):
                    assert_agree(
                        partitions.gen_fn(partitions.ghost_conditions(k, i, J), 25),
                        shelves.closed_ghost(k, J, i, 26),
                        f"ghost count k={k} J={J} i={i}",
                    )
            assert_agree(
                shelves.ghost0_closed(k, 1, 41),
                shelves.closed_official(k, 0, 2, 41),
                f"ghost head k={k}",
            )


def test_criterion_8_trivariate_engine():
    with criterion(
        "8: trivariate route equalities and functional identities (k <= 4, q^60), "
        "dictionary specialization through q^30 (j <= 2), tensor counts to n = 14 (k <= 3)",
        budget=120.0,
    ):
        q_prec = 61
        for k in range(2, 5):
            axq.check_zero_index(k, q_prec)
            axq.check_shift_wrap_first(k, q_prec)
            axq.check_shift_wrap_second(k, q_prec)
            axq.check_rewrite_second(k, q_prec)
            axq.check_top_wraparound(k, q_prec)
            axq.check_ghost_first_division(k, q_prec)
            axq.check_ghost_top(k, q_prec)
            axq.check_ghost_first_forms(k, q_prec)
            axq.check_ghost_raw_zero(k, q_prec)
            for i in range(1, k + 2):
                axq.check_reflection(k, i, q_prec)
            for i in range(2, k + 2):
                axq.check_index_difference(k, i, q_prec)
                axq.check_shift_wrap_general(k, i, q_prec)
            for i in range(3, k + 2):
                axq.check_rewrite_general(k, i, q_prec)
            for i in range(2, k + 1):
                axq.check_ghost_interior_division(k, i, q_prec)
            for i in range(1, k + 1):
                axq.check_ghost_raw_reflection(k, i, q_prec)
                axq.j_tilde_ghost(k, i, q_prec)  # raw / interpolated / direct routes

            for j in range(0, 3):
                for i in range(1, k + 1):
                    assert_agree(
                        axq.dictionary_official(k, j, i, 30),
                        shelves.closed_official(k, j, i, 31),
                        f"dictionary official k={k} j={j} i={i}",
                    )
                for i in range(2, k + 1):
                    assert_agree(
                        axq.dictionary_ghost(k, j, i, 30),
                        shelves.closed_ghost(k, j, i, 31),
                        f"dictionary ghost k={k} j={j} i={i}",
                    )
                assert_agree(
                    axq.dictionary_ghost(k, j, 1, 30),
                    shelves.closed_official(k, j, 2, 31),
                    f"dictionary ghost head k={k} j={j}",
                )

        n_over = 14
        for k in (2, 3):
            for ghost in (False, True):
                for i in range(2 if ghost else 1, k + 1):
                    build = axq.j_tilde_ghost if ghost else axq.j_tilde
                    series = build(k, i, n_over + 1, n_over + 1)
                    got = {
                        (r["a"], r["x"], r["q"]): int(r["coeff"])
                        for r in series.records()
                    }
                    want = partitions.overpartition_gen_fn(k, i, n_over, ghost)
                    for key in sorted(set(got) | set(want)):
                        assert got.get(key, 0) == want.get(key, 0), (
                            f"tensor k={k} i={i} ghost={ghost} at {key}: "
                            f"{got.get(key, 0)} != {want.get(key, 0)}"
                        )


# one scenario per corruptible route: (tag, suite, config, fault kwargs)
FAULT_INVENTORY = [
    (
        "product-side",
        "identities",
        SuiteConfig(k_range=(2, 2), degree=12, n_max=8),
        {"exponent": 5, "match": (("k", 2), ("i", 2))},
    ),
    (
        "shelf0-sum",
        "shelves",
        SuiteConfig(k_range=(3, 3), degree=14, shelf_range=(0, 0)),
        {"exponent": 5, "match": (("k", 3), ("i", 2))},
    ),
    (
        "closed-official",
        "shelves",
        SuiteConfig(k_range=(3, 3), degree=14, shelf_range=(0, 0)),
        {"exponent": 6, "match": (("k", 3), ("j", 0), ("i", 2))},
    ),
    (
        "closed-ghost",
        "shelves",
        SuiteConfig(k_range=(3, 3), degree=16, shelf_range=(0, 1)),
        {"exponent": 5, "match": (("k", 3), ("j", 1), ("i", 2))},
    ),
    (
        "ghost0-closed",
        "shelves",
        SuiteConfig(k_range=(3, 3), degree=14, shelf_range=(0, 0)),
        {"exponent": 5, "match": (("k", 3),)},
    ),
    (
        "next-shelf-official",
        "shelves",
        SuiteConfig(k_range=(3, 3), degree=16, shelf_range=(0, 1)),
        {"exponent": 5, "match": (("k", 3), ("j", 1), ("i", 2))},
    ),
    (
        "next-shelf-ghost",
        "shelves",
        SuiteConfig(k_range=(3, 3), degree=16, shelf_range=(0, 1)),
        {"exponent": 5, "match": (("k", 3), ("j", 1), ("i", 2))},
    ),
    (
        "h12-stabilized",
        "combinatorics",
        SuiteConfig(k_range=(2, 2), degree=14, shelf_range=(0, 1), start_range=(0, 0), n_max=8),
        {"exponent": 5, "match": (("k", 2), ("i", 1), ("J", 0))},
    ),
    (
        "h-entry",
        "combinatorics",
        SuiteConfig(k_range=(2, 2), degree=14, shelf_range=(0, 1), start_range=(0, 0), n_max=8),
        {"exponent": 3, "match": (("k", 2), ("J", 0), ("j", 1), ("i", 1), ("l", 1))},
    ),
    (
        "dictionary-official",
        "axq",
        SuiteConfig(k_range=(2, 2), degree=10, shelf_range=(0, 1), n_max=6),
        {"exponent": 5, "match": (("k", 2), ("j", 1), ("i", 2))},
    ),
    (
        "dictionary-ghost",
        "axq",
        SuiteConfig(k_range=(2, 2), degree=10, shelf_range=(0, 1), n_max=6),
        {"exponent": 5, "match": (("k", 2), ("j", 1), ("i", 2))},
    ),
]


def test_criterion_9_fault_injection_is_detected():
    with criterion(
        "9: corrupting one coefficient on any route yields a FAIL naming the first mismatch"
    ):
        for tag, suite, cfg, kwargs in FAULT_INVENTORY:
            fault = Fault(tag=tag, **kwargs)
            with injected(fault):
                rep = run_suite(suite, cfg)
            assert rep.failed, f"fault on {tag} went unnoticed"
            failing = [r for r in rep.records if r.status == FAIL]
            needle = f"q^{kwargs['exponent']}"
            assert any(needle in r.detail for r in failing), (
                f"fault on {tag}: no failing check named the corrupted power {needle}; "
                f"details: {[r.detail for r in failing]}"
            )
