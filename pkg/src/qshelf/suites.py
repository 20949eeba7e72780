"""Named verification suites over the shelf machinery.

A suite expands a :class:`SuiteConfig` into a flat list of independent
checks.  Checks run on a small thread pool (capped by the QSHELF_THREADS
environment variable) and each produces exactly one record; records are
sorted by id before emission, so two runs with the same configuration
produce byte-identical reports regardless of scheduling.

Failure taxonomy:

* a check that raises :class:`~qshelf.series.SeriesError` (or any of its
  subclasses, which cover every mismatch the exact-arithmetics layers can
  detect) or :class:`CheckFailure` yields a FAIL record whose detail names
  the first offending coefficient or entry;
* a check that raises :class:`SkipCheck` yields a SKIPPED record -- used
  when the requested window is too small to certify anything, instead of
  silently shrinking the claim;
* anything else propagates: an unexpected exception is a harness bug, not
  a verification outcome.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter
from typing import Callable, Iterable

from . import axq, matrices, partitions, shelves
from .report import FAIL, PASS, SKIPPED, CheckRecord, VerificationReport
from .series import (
    SeriesError,
    TruncatedLaurentSeries,
    assert_agree,
    jacobi_triple_product_check,
)

SUITE_NAMES = (
    "identities",
    "shelves",
    "empirical",
    "matrices",
    "combinatorics",
    "axq",
    "all",
)

# windows above these caps stop sharpening the statements being checked
# but keep inflating cost quadratically, so the affected checks clamp and
# say so in their detail strings
STABILIZED_WINDOW_CAP = 40


class ConfigError(Exception):
    """Rejected configuration; the CLI maps this to exit code 2."""


class SkipCheck(Exception):
    """Raised inside a check whose precision prerequisites are unmet."""


class CheckFailure(Exception):
    """Raised inside a check for a failure that is not a series mismatch."""


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    fn: Callable[[], str | None]


def _fmt_range(rng: tuple[int, int]) -> str:
    lo, hi = rng
    return f"{lo}..{hi}"


@dataclass(frozen=True)
class SuiteConfig:
    """Parameter block shared by every suite.

    ``k_range`` bounds the modulus family, ``degree`` is the starting
    q-truncation, ``shelf_range`` the shelves visited by climbing and
    descent checks, ``start_range`` the base shelves for the combiner
    matrices, and ``n_max`` the enumeration bound for the counting
    oracles (``None`` keeps the split defaults: 20 for partitions, 14
    for overpartitions).
    """

    k_range: tuple[int, int] = (3, 3)
    degree: int = 40
    shelf_range: tuple[int, int] = (0, 3)
    start_range: tuple[int, int] = (0, 1)
    n_max: int | None = None

    @property
    def ks(self) -> range:
        return range(self.k_range[0], self.k_range[1] + 1)

    @property
    def shelf_js(self) -> range:
        return range(self.shelf_range[0], self.shelf_range[1] + 1)

    @property
    def starts(self) -> range:
        return range(self.start_range[0], self.start_range[1] + 1)

    @property
    def n_max_partitions(self) -> int:
        return 20 if self.n_max is None else self.n_max

    @property
    def n_max_overpartitions(self) -> int:
        return 14 if self.n_max is None else self.n_max

    def parameters(self) -> dict[str, str]:
        return {
            "degree": str(self.degree),
            "k": _fmt_range(self.k_range),
            "n_max": "default" if self.n_max is None else str(self.n_max),
            "shelves": _fmt_range(self.shelf_range),
            "start_shelf": _fmt_range(self.start_range),
        }


def validate_config(suite: str, cfg: SuiteConfig) -> None:
    """Reject configurations that no check could honour.

    The shelf-climbing checks are the one place where a too-small degree
    cannot be softened into a SKIPPED record: the recursion consumes
    precision as it climbs, so the report would be empty.  The error
    names the smallest degree that works.
    """
    if suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    for label, (lo, hi) in (
        ("k", cfg.k_range),
        ("shelves", cfg.shelf_range),
        ("start-shelf", cfg.start_range),
    ):
        if lo > hi:
            raise ConfigError(f"empty {label} range {lo}..{hi}")
    if cfg.k_range[0] < 2:
        raise ConfigError(f"k must be at least 2, got {cfg.k_range[0]}")
    if cfg.shelf_range[0] < 0 or cfg.start_range[0] < 0:
        raise ConfigError("shelf indices must be nonnegative")
    if cfg.degree < 1:
        raise ConfigError(f"degree must be positive, got {cfg.degree}")
    if cfg.n_max is not None and cfg.n_max < 1:
        raise ConfigError(f"n-max must be positive, got {cfg.n_max}")
    if suite in ("shelves", "all"):
        k_hi = cfg.k_range[1]
        j_hi = cfg.shelf_range[1]
        needed = shelves.required_truncation(k_hi, j_hi, 1)
        if cfg.degree < needed:
            raise ConfigError(
                f"degree {cfg.degree} cannot climb to shelf {j_hi} at k={k_hi}; "
                f"the divisions along the way consume {needed - 1} exponents, "
                f"so the minimum degree is {needed}"
            )


# ---------------------------------------------------------------------------
# small helpers shared by the check bodies
# ---------------------------------------------------------------------------

def _agree(lhs: TruncatedLaurentSeries, rhs: TruncatedLaurentSeries, context: str) -> int:
    """Exact comparison; returns the exclusive end of the common window."""
    return assert_agree(lhs, rhs, context)


def _bundle(pairs: Iterable[tuple[str, TruncatedLaurentSeries, TruncatedLaurentSeries]]) -> str:
    """Compare labelled pairs; report the narrowest verified window."""
    end = None
    count = 0
    for label, lhs, rhs in pairs:
        e = _agree(lhs, rhs, label)
        end = e if end is None else min(end, e)
        count += 1
    if count == 0:
        return "nothing to compare"
    return f"{count} series agree through q^{end - 1}"


# ---------------------------------------------------------------------------
# suite: identities
# ---------------------------------------------------------------------------

def _identities_checks(cfg: SuiteConfig) -> list[Check]:
    checks: list[Check] = []
    deg = cfg.degree
    n_max = cfg.n_max_partitions

    for k in cfg.ks:
        for i in range(1, k + 1):
            z, step = 2 * k - 2 * i + 1, 4 * k - 2

            def jtp(z=z, step=step) -> str:
                end = jacobi_triple_product_check(z, step, deg + 1)
                return f"theta sum and product agree through q^{end - 1}"

            checks.append(
                Check(
                    f"identities.triple-product.k{k:02d}.i{i:02d}",
                    "alternating theta sum equals its three-factor product form",
                    jtp,
                )
            )

        for i in range(2, k + 1):

            def parts(k=k, i=i) -> str:
                oracle = partitions.gen_fn(
                    partitions.product_side_conditions(k, i), n_max
                )
                end = _agree(
                    shelves.product_side(k, i, n_max + 1),
                    oracle,
                    f"product vs allowed-parts count k={k} i={i}",
                )
                return f"counts agree through n={end - 1}"

            checks.append(
                Check(
                    f"identities.product-parts.k{k:02d}.i{i:02d}",
                    "infinite product expands to the allowed-residue partition count",
                    parts,
                )
            )

            def full(k=k, i=i) -> str:
                oracle = partitions.gen_fn(
                    partitions.official_conditions(k, i, 0), n_max
                )
                end = _agree(
                    shelves.product_side(k, i, n_max + 1),
                    oracle,
                    f"product vs difference-condition count k={k} i={i}",
                )
                return f"counts agree through n={end - 1}"

            checks.append(
                Check(
                    f"identities.sum-product.k{k:02d}.i{i:02d}",
                    "difference-condition count matches the allowed-residue product",
                    full,
                )
            )
    return checks


# ---------------------------------------------------------------------------
# suite: shelves
# ---------------------------------------------------------------------------

def _shelves_checks(cfg: SuiteConfig) -> list[Check]:
    checks: list[Check] = []
    deg = cfg.degree
    j_lo, j_hi = cfg.shelf_range

    for k in cfg.ks:
        for i in range(1, k + 1):

            def sum_route(k=k, i=i) -> str:
                end = _agree(
                    shelves.shelf0_sum_form(k, i, deg + 1),
                    shelves.closed_official(k, 0, i, deg + 1),
                    f"shelf-0 sum vs closed k={k} i={i}",
                )
                return f"agree through q^{end - 1}"

            checks.append(
                Check(
                    f"shelves.shelf0-sum.k{k:02d}.i{i:02d}",
                    "two-term theta sum reproduces the closed form on shelf 0",
                    sum_route,
                )
            )

        for i in range(2, k + 1):

            def product_route(k=k, i=i) -> str:
                end = _agree(
                    shelves.product_side(k, i, deg + 1),
                    shelves.closed_official(k, 0, i, deg + 1),
                    f"shelf-0 product vs closed k={k} i={i}",
                )
                return f"agree through q^{end - 1}"

            checks.append(
                Check(
                    f"shelves.shelf0-product.k{k:02d}.i{i:02d}",
                    "infinite product reproduces the closed form on shelf 0",
                    product_route,
                )
            )

        def ghost_head(k=k) -> str:
            end = _agree(
                shelves.ghost0_closed(k, 1, deg + 1),
                shelves.closed_official(k, 0, 2, deg + 1),
                f"shelf-0 ghost head k={k}",
            )
            return f"agree through q^{end - 1}"

        checks.append(
            Check(
                f"shelves.ghost-head.k{k:02d}",
                "extending the ghost sum to position 1 reproduces the second official",
                ghost_head,
            )
        )

        def climb(k=k) -> str:
            pair = shelves.shelf0(k, deg + 1)
            verified = 0
            for j in range(0, j_hi + 1):
                if j > 0:
                    pair = shelves.next_shelf(pair)
                if j < j_lo:
                    continue
                for i in range(1, k + 1):
                    got = pair.official(i)
                    _agree(
                        got,
                        shelves.closed_official(k, j, i, got.prec),
                        f"climb official k={k} j={j} i={i}",
                    )
                    verified += 1
                for i in range(2, k + 1):
                    got = pair.ghost(i)
                    _agree(
                        got,
                        shelves.closed_ghost(k, j, i, got.prec),
                        f"climb ghost k={k} j={j} i={i}",
                    )
                    verified += 1
            return (
                f"{verified} series across shelves {j_lo}..{j_hi}; "
                f"final window q^{pair.effective_prec - 1}"
            )

        checks.append(
            Check(
                f"shelves.climb.k{k:02d}",
                "iterated two-term recursion reproduces every closed form",
                climb,
            )
        )

        for j in range(j_lo, j_hi):

            def edge(k=k, j=j) -> str:
                end = _agree(
                    shelves.closed_official(k, j, k, deg + 1),
                    shelves.closed_official(k, j + 1, 1, deg + 1),
                    f"edge match k={k} j={j}",
                )
                return f"agree through q^{end - 1}"

            checks.append(
                Check(
                    f"shelves.edge.k{k:02d}.j{j:02d}",
                    "top of one shelf coincides with the bottom of the next",
                    edge,
                )
            )
    return checks


# ---------------------------------------------------------------------------
# suite: empirical
# ---------------------------------------------------------------------------

def _empirical_checks(cfg: SuiteConfig) -> list[Check]:
    checks: list[Check] = []
    deg = cfg.degree

    def probe(k: int, j: int, i: int, ghost: bool) -> str:
        res = shelves.empirical_hypothesis_check(k, j, i, deg + 1, ghost=ghost)
        if not res.certified:
            raise SkipCheck(
                f"window reaches q^{res.valuation - 1} but the threshold is "
                f"{res.threshold}; raise --degree to at least {res.threshold}"
            )
        if not res.ok:
            raise CheckFailure(
                f"series deviates from 1 at q^{res.valuation}, below the "
                f"threshold {res.threshold}"
            )
        return f"valuation of (series - 1) is {res.valuation} >= {res.threshold}"

    for k in cfg.ks:
        for j in cfg.shelf_js:
            for i in range(1, k + 1):
                checks.append(
                    Check(
                        f"empirical.official.k{k:02d}.j{j:02d}.i{i:02d}",
                        "official series deviates from 1 only beyond the shelf threshold",
                        lambda k=k, j=j, i=i: probe(k, j, i, False),
                    )
                )
            ghost_lo = 2 if j > 0 else 1
            for i in range(ghost_lo, k + 1):
                checks.append(
                    Check(
                        f"empirical.ghost.k{k:02d}.j{j:02d}.i{i:02d}",
                        "ghost series deviates from 1 only beyond the shelf threshold",
                        lambda k=k, j=j, i=i: probe(k, j, i, True),
                    )
                )
    return checks


# ---------------------------------------------------------------------------
# suite: matrices
# ---------------------------------------------------------------------------

def _matrices_checks(cfg: SuiteConfig) -> list[Check]:
    checks: list[Check] = []
    deg = cfg.degree
    descent_js = [j for j in cfg.shelf_js if j >= 1]

    for k in cfg.ks:
        for j in descent_js:

            def inverse(k=k, j=j) -> str:
                matrices.build_a(k, j)
                return "pattern inverse times elimination matrix is the identity"

            checks.append(
                Check(
                    f"matrices.inverse.k{k:02d}.j{j:02d}",
                    "structured inverse of the elimination matrix checks out",
                    inverse,
                )
            )

            def nonneg(k=k, j=j) -> str:
                a_prime = matrices.build_a_prime(k, j)
                return (
                    "combined descent matrix has minimum exponent "
                    f"{a_prime.min_exponent()}"
                )

            checks.append(
                Check(
                    f"matrices.nonnegative.k{k:02d}.j{j:02d}",
                    "combined descent matrix is free of negative exponents",
                    nonneg,
                )
            )

            def descent(k=k, j=j) -> str:
                upper = [shelves.closed_official(k, j, i, deg + 1) for i in range(1, k + 1)]
                lower = [
                    shelves.closed_official(k, j - 1, i, deg + 1) for i in range(1, k + 1)
                ]
                c_side = matrices.build_c(k, j).apply(upper)
                b_side = matrices.build_b(k, j).apply(lower)
                pairs = [
                    (f"elimination row {i} k={k} j={j}", c_side[i - 1], b_side[i - 1])
                    for i in range(1, k + 1)
                ]
                detail = _bundle(pairs)
                a_side = matrices.build_a_prime(k, j).apply(upper)
                pairs = [
                    (f"descent row {i} k={k} j={j}", a_side[i - 1], lower[i - 1])
                    for i in range(1, k + 1)
                ]
                _bundle(pairs)
                return detail

            checks.append(
                Check(
                    f"matrices.descent.k{k:02d}.j{j:02d}",
                    "one shelf of officials maps onto the previous shelf both ways",
                    descent,
                )
            )

        for J in cfg.starts:
            for j in range(J + 1, J + 6):

                def routes(k=k, J=J, j=j) -> str:
                    matrices.h_matrix(k, J, j)
                    return "ordered product and recursion agree entry by entry"

                checks.append(
                    Check(
                        f"matrices.h-routes.k{k:02d}.J{J:02d}.j{j:02d}",
                        "both constructions of the combiner matrix coincide",
                        routes,
                    )
                )

            def first_level(k=k, J=J) -> str:
                got = matrices.h_matrix(k, J, J + 1)
                want = matrices.h_first_level(k, J)
                if got != want:
                    for r in range(1, k + 1):
                        for c in range(1, k + 1):
                            if got.entry(r, c) != want.entry(r, c):
                                raise CheckFailure(
                                    f"first-level entry ({r},{c}) differs for k={k} J={J}"
                                )
                return "computed first level matches the explicit pattern"

            checks.append(
                Check(
                    f"matrices.h-first.k{k:02d}.J{J:02d}",
                    "first combiner level matches its explicit closed pattern",
                    first_level,
                )
            )

            def transport(k=k, J=J) -> str:
                j = J + 2
                combiner = matrices.h_matrix(k, J, j)
                high = [shelves.closed_official(k, j, i, deg + 1) for i in range(1, k + 1)]
                low = [shelves.closed_official(k, J, i, deg + 1) for i in range(1, k + 1)]
                moved = combiner.apply(high)
                return _bundle(
                    (f"transport row {i} k={k} J={J} j={j}", moved[i - 1], low[i - 1])
                    for i in range(1, k + 1)
                )

            checks.append(
                Check(
                    f"matrices.transport.k{k:02d}.J{J:02d}",
                    "combiner matrix carries a whole shelf down to the base shelf",
                    transport,
                )
            )
    return checks


# ---------------------------------------------------------------------------
# suite: combinatorics
# ---------------------------------------------------------------------------

def _combinatorics_checks(cfg: SuiteConfig) -> list[Check]:
    checks: list[Check] = []
    deg = cfg.degree
    n_max = cfg.n_max_partitions
    window = min(deg, STABILIZED_WINDOW_CAP)

    for k in cfg.ks:
        for J in cfg.starts:

            def officials(k=k, J=J) -> str:
                return _bundle(
                    (
                        f"official count k={k} J={J} i={i}",
                        partitions.gen_fn(partitions.official_conditions(k, i, J), n_max),
                        shelves.closed_official(k, J, i, n_max + 1),
                    )
                    for i in range(1, k + 1)
                )

            checks.append(
                Check(
                    f"combinatorics.official-counts.k{k:02d}.J{J:02d}",
                    "difference-condition counts expand the official series",
                    officials,
                )
            )

            def ghosts(k=k, J=J) -> str:
                return _bundle(
                    (
                        f"ghost count k={k} J={J} i={i}",
                        partitions.gen_fn(partitions.ghost_conditions(k, i, J), n_max),
                        shelves.closed_ghost(k, J, i, n_max + 1),
                    )
                    for i in range(2, k + 1)
                )

            checks.append(
                Check(
                    f"combinatorics.ghost-counts.k{k:02d}.J{J:02d}",
                    "flipped-parity counts expand the ghost series",
                    ghosts,
                )
            )

            for j in range(J + 1, J + 4):

                def entries(k=k, J=J, j=j) -> str:
                    combiner = matrices.h_matrix(k, J, j)
                    return _bundle(
                        (
                            f"combiner entry ({i},{l}) k={k} J={J} j={j}",
                            matrices.h_entry_series(
                                combiner.entry(i, l), n_max + 1, "h-entry", k=k, J=J, j=j, i=i, l=l
                            ),
                            partitions.h_oracle(k, i, l, j, J, n_max),
                        )
                        for i in range(1, k + 1)
                        for l in range(1, k + 1)
                    )

                checks.append(
                    Check(
                        f"combinatorics.h-entries.k{k:02d}.J{J:02d}.j{j:02d}",
                        "every combiner entry counts its residual partition class",
                        entries,
                    )
                )

                def columns(k=k, J=J, j=j) -> str:
                    combiner = matrices.h_matrix(k, J, j)
                    return _bundle(
                        (
                            f"combined columns row {i} k={k} J={J} j={j}",
                            matrices.h_entry_series(
                                combiner.entry(i, 1) + combiner.entry(i, 2),
                                n_max + 1,
                                "h-entry",
                                k=k,
                                J=J,
                                j=j,
                                i=i,
                                l=0,
                            ),
                            partitions.h12_oracle(k, i, j, J, n_max),
                        )
                        for i in range(1, k + 1)
                    )

                checks.append(
                    Check(
                        f"combinatorics.h12.k{k:02d}.J{J:02d}.j{j:02d}",
                        "first two combiner columns count their merged partition class",
                        columns,
                    )
                )

            for i in range(1, k + 1):

                def stabilized(k=k, J=J, i=i) -> str:
                    got = matrices.h12_stabilized(k, i, J, window)
                    end = _agree(
                        got,
                        shelves.closed_official(k, J, i, got.prec),
                        f"stabilized columns k={k} i={i} J={J}",
                    )
                    capped = " (capped)" if window < deg else ""
                    return f"stable from the start, agree through q^{end - 1}{capped}"

                checks.append(
                    Check(
                        f"combinatorics.h12-stabilized.k{k:02d}.J{J:02d}.i{i:02d}",
                        "stabilized column sums recover the base-shelf official",
                        stabilized,
                    )
                )

        def ghost_head(k=k) -> str:
            end = _agree(
                shelves.ghost0_closed(k, 1, deg + 1),
                shelves.closed_official(k, 0, 2, deg + 1),
                f"ghost head k={k}",
            )
            return f"agree through q^{end - 1}"

        checks.append(
            Check(
                f"combinatorics.ghost-head.k{k:02d}",
                "ghost sum at position 1 collapses onto the second official",
                ghost_head,
            )
        )
    return checks


# ---------------------------------------------------------------------------
# suite: axq (the trivariate engine)
# ---------------------------------------------------------------------------

def _axq_checks(cfg: SuiteConfig) -> list[Check]:
    checks: list[Check] = []
    deg = cfg.degree
    q_prec = 2 * deg + 1
    n_over = cfg.n_max_overpartitions

    for k in cfg.ks:
        simple = [
            ("zero-index", "raw family vanishes at index 0", lambda k=k: axq.check_zero_index(k, q_prec)),
            ("wrap-first", "first member reproduces the top member after x steps to xq", lambda k=k: axq.check_shift_wrap_first(k, q_prec)),
            ("wrap-second", "second member splits across the two top members", lambda k=k: axq.check_shift_wrap_second(k, q_prec)),
            ("rewrite-second", "second wrap identity solved by exact division", lambda k=k: axq.check_rewrite_second(k, q_prec)),
            ("top-wraparound", "index k+1 collapses onto index k-1", lambda k=k: axq.check_top_wraparound(k, q_prec)),
            ("ghost-first-division", "first ghost closes the strict-division recursion", lambda k=k: axq.check_ghost_first_division(k, q_prec)),
            ("ghost-top", "top ghost equals the official one index down", lambda k=k: axq.check_ghost_top(k, q_prec)),
            ("ghost-first-forms", "both closed forms of the first ghost coincide", lambda k=k: axq.check_ghost_first_forms(k, q_prec)),
            ("ghost-raw-zero", "ghost interpolation vanishes at index 0", lambda k=k: axq.check_ghost_raw_zero(k, q_prec)),
        ]
        for name, anchor, fn in simple:
            checks.append(
                Check(
                    f"axq.{name}.k{k:02d}",
                    anchor,
                    (lambda fn=fn: (fn(), f"verified through q^{q_prec - 1}")[1]),
                )
            )

        for i in range(1, k + 2):
            checks.append(
                Check(
                    f"axq.reflection.k{k:02d}.i{i:02d}",
                    "cleared negative index mirrors the positive index",
                    lambda k=k, i=i: (
                        axq.check_reflection(k, i, q_prec),
                        f"verified through q^{q_prec - 1}",
                    )[1],
                )
            )
        for i in range(2, k + 2):
            checks.append(
                Check(
                    f"axq.index-difference.k{k:02d}.i{i:02d}",
                    "index step of the raw family factors through the combined family",
                    lambda k=k, i=i: (
                        axq.check_index_difference(k, i, q_prec),
                        f"verified through q^{q_prec - 1}",
                    )[1],
                )
            )
            checks.append(
                Check(
                    f"axq.wrap-general.k{k:02d}.i{i:02d}",
                    "general index-step identity under x steps to xq",
                    lambda k=k, i=i: (
                        axq.check_shift_wrap_general(k, i, q_prec),
                        f"verified through q^{q_prec - 1}",
                    )[1],
                )
            )
        for i in range(3, k + 2):
            checks.append(
                Check(
                    f"axq.rewrite-general.k{k:02d}.i{i:02d}",
                    "general index step solved by strict power division",
                    lambda k=k, i=i: (
                        axq.check_rewrite_general(k, i, q_prec),
                        f"verified through q^{q_prec - 1}",
                    )[1],
                )
            )
        for i in range(2, k + 1):
            checks.append(
                Check(
                    f"axq.ghost-division.k{k:02d}.i{i:02d}",
                    "both strict-division routes through an interior ghost agree",
                    lambda k=k, i=i: (
                        axq.check_ghost_interior_division(k, i, q_prec),
                        f"verified through q^{q_prec - 1}",
                    )[1],
                )
            )
        for i in range(1, k + 1):
            checks.append(
                Check(
                    f"axq.ghost-raw-reflection.k{k:02d}.i{i:02d}",
                    "ghost interpolation mirrors its cleared negative index",
                    lambda k=k, i=i: (
                        axq.check_ghost_raw_reflection(k, i, q_prec),
                        f"verified through q^{q_prec - 1}",
                    )[1],
                )
            )
            checks.append(
                Check(
                    f"axq.ghost-routes.k{k:02d}.i{i:02d}",
                    "raw, interpolated and direct ghost constructions coincide",
                    lambda k=k, i=i: (
                        axq.j_tilde_ghost(k, i, q_prec),
                        f"three routes agree through q^{q_prec - 1}",
                    )[1],
                )
            )

        for j in cfg.shelf_js:

            def dict_officials(k=k, j=j) -> str:
                return _bundle(
                    (
                        f"dictionary official k={k} j={j} i={i}",
                        axq.dictionary_official(k, j, i, deg),
                        shelves.closed_official(k, j, i, deg + 1),
                    )
                    for i in range(1, k + 1)
                )

            checks.append(
                Check(
                    f"axq.dictionary-officials.k{k:02d}.j{j:02d}",
                    "monomial specialization lands on every official closed form",
                    dict_officials,
                )
            )

            def dict_ghosts(k=k, j=j) -> str:
                return _bundle(
                    (
                        f"dictionary ghost k={k} j={j} i={i}",
                        axq.dictionary_ghost(k, j, i, deg),
                        shelves.closed_ghost(k, j, i, deg + 1),
                    )
                    for i in range(2, k + 1)
                )

            checks.append(
                Check(
                    f"axq.dictionary-ghosts.k{k:02d}.j{j:02d}",
                    "monomial specialization lands on every ghost closed form",
                    dict_ghosts,
                )
            )

            def ghost_at_1(k=k, j=j) -> str:
                end = _agree(
                    axq.dictionary_ghost(k, j, 1, deg),
                    shelves.closed_official(k, j, 2, deg + 1),
                    f"dictionary ghost at position 1, k={k} j={j}",
                )
                return f"agree through q^{end - 1}"

            checks.append(
                Check(
                    f"axq.ghost-at-1.k{k:02d}.j{j:02d}",
                    "dictionary image of the first ghost equals the second official",
                    ghost_at_1,
                )
            )

        def tensor(k=k, ghost=False) -> str:
            lo = 2 if ghost else 1
            total = 0
            for i in range(lo, k + 1):
                build = axq.j_tilde_ghost if ghost else axq.j_tilde
                series = build(k, i, n_over + 1, n_over + 1)
                got = {
                    (r["a"], r["x"], r["q"]): int(r["coeff"])
                    for r in series.records()
                }
                want = partitions.overpartition_gen_fn(k, i, n_over, ghost)
                for key in sorted(set(got) | set(want)):
                    a, x, q = key
                    g, w = got.get(key, 0), want.get(key, 0)
                    if g != w:
                        raise CheckFailure(
                            f"tensor mismatch k={k} i={i} at a^{a} x^{x} q^{q}: "
                            f"series {g} != count {w}"
                        )
                    total += 1
            return f"{total} tensor entries agree through weight {n_over}"

        checks.append(
            Check(
                f"axq.tensor-official.k{k:02d}",
                "trivariate coefficients count the flat overpartition classes",
                lambda k=k: tensor(k, False),
            )
        )
        checks.append(
            Check(
                f"axq.tensor-ghost.k{k:02d}",
                "trivariate ghost coefficients count the flipped-parity classes",
                lambda k=k: tensor(k, True),
            )
        )
    return checks


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------

_SUITES: dict[str, Callable[[SuiteConfig], list[Check]]] = {
    "identities": _identities_checks,
    "shelves": _shelves_checks,
    "empirical": _empirical_checks,
    "matrices": _matrices_checks,
    "combinatorics": _combinatorics_checks,
    "axq": _axq_checks,
}


def build_checks(suite: str, cfg: SuiteConfig) -> list[Check]:
    validate_config(suite, cfg)
    if suite == "all":
        out: list[Check] = []
        for name in SUITE_NAMES[:-1]:
            out.extend(_SUITES[name](cfg))
        return out
    return _SUITES[suite](cfg)


def _worker_count(n_checks: int) -> int:
    cap = os.environ.get("QSHELF_THREADS", "")
    try:
        cap_n = int(cap) if cap else 0
    except ValueError:
        raise ConfigError(f"QSHELF_THREADS must be an integer, got {cap!r}")
    workers = os.cpu_count() or 1
    if cap_n > 0:
        workers = min(workers, cap_n)
    return max(1, min(workers, n_checks))


def _run_one(check: Check) -> CheckRecord:
    start = perf_counter()
    try:
        detail = check.fn() or ""
        status = PASS
    except SkipCheck as exc:
        status, detail = SKIPPED, str(exc)
    except (SeriesError, CheckFailure, ValueError, ZeroDivisionError, OverflowError) as exc:
        status, detail = FAIL, str(exc)
    return CheckRecord(
        check_id=check.check_id,
        anchor=check.anchor,
        status=status,
        detail=detail,
        elapsed=perf_counter() - start,
    )


def run_suite(suite: str, cfg: SuiteConfig | None = None) -> VerificationReport:
    """Expand, execute, and collect one suite into a sorted report."""
    cfg = cfg or SuiteConfig()
    checks = build_checks(suite, cfg)
    seen: set[str] = set()
    for check in checks:
        if check.check_id in seen:
            raise ConfigError(f"duplicate check id {check.check_id}")
        seen.add(check.check_id)
    workers = _worker_count(len(checks))
    if workers <= 1 or len(checks) <= 1:
        records = [_run_one(c) for c in checks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, checks))
    return VerificationReport(suite=suite, parameters=cfg.parameters(), records=tuple(records))
