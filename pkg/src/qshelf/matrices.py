"""Exact Laurent-polynomial matrices that move series between shelves.

One shelf's officials satisfy a linear system: a lower-triangular matrix
acting on the current shelf equals a sparse reversal matrix acting on the
previous shelf.  Inverting the reversal matrix and composing gives the
descent matrix whose running products (the h matrices) express any shelf-J
series as a finite combination of a later shelf's series.  Everything here
is exact polynomial arithmetic; no truncation is involved until a matrix
meets a series.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import faults
from .series import LaurentPoly, SeriesError, TruncatedLaurentSeries


class PatternMismatchError(SeriesError):
    """A transcribed matrix pattern failed its defining algebraic check."""


class NoStabilizationError(SeriesError):
    """The first-two-columns sum failed to stabilize within the level budget."""


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix of exact Laurent polynomials."""

    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_rows(rows: list[list[LaurentPoly]]) -> "PolyMatrix":
        return PolyMatrix(tuple(tuple(row) for row in rows))

    @staticmethod
    def identity(k: int) -> "PolyMatrix":
        return PolyMatrix.from_rows(
            [
                [LaurentPoly.one() if r == c else LaurentPoly.zero() for c in range(k)]
                for r in range(k)
            ]
        )

    def entry(self, r: int, c: int) -> LaurentPoly:
        """1-based access; out-of-range indices never wrap around."""
        if not (1 <= r <= self.size and 1 <= c <= self.size):
            raise IndexError(f"entry ({r},{c}) outside a {self.size}x{self.size} matrix")
        return self.entries[r - 1][c - 1]

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        k = self.size
        rows = []
        for r in range(k):
            row = []
            for c in range(k):
                acc = LaurentPoly.zero()
                for m in range(k):
                    left = self.entries[r][m]
                    right = other.entries[m][c]
                    if not left.is_zero() and not right.is_zero():
                        acc = acc + left * right
                row.append(acc)
            rows.append(row)
        return PolyMatrix.from_rows(rows)

    def apply(self, vec: tuple[TruncatedLaurentSeries, ...]) -> tuple[TruncatedLaurentSeries, ...]:
        """Matrix-vector product against truncated series, windows propagated."""
        k = self.size
        out = []
        for r in range(k):
            pieces = [
                self.entries[r][c].mul_series(vec[c])
                for c in range(k)
                if not self.entries[r][c].is_zero()
            ]
            if not pieces:
                out.append(TruncatedLaurentSeries.zero(min(v.prec for v in vec)))
                continue
            acc = pieces[0]
            for p in pieces[1:]:
                acc = acc + p
            out.append(acc)
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def min_exponent(self) -> int | None:
        exps = [
            p.min_exponent()
            for row in self.entries
            for p in row
            if not p.is_zero()
        ]
        return min(exps) if exps else None

    def to_json(self) -> list[list[dict]]:
        return [[p.to_json_dict() for p in row] for row in self.entries]


def build_b(k: int, j: int) -> PolyMatrix:
    """Reversal-with-difference matrix acting on the previous shelf.

    Row 1 picks the top of the previous shelf; row r >= 2 pairs positions
    k-r+1 and k-r+3 with weight q^(-2j(r-2)).
    """
    if k < 2 or j < 1:
        raise ValueError(f"bad matrix parameters k={k} j={j}")
    rows = [[LaurentPoly.zero() for _ in range(k)] for _ in range(k)]
    rows[0][k - 1] = LaurentPoly.one()
    for r in range(2, k + 1):
        w = -2 * j * (r - 2)
        rows[r - 1][k - r] = LaurentPoly.monomial(1, w)
        if k - r + 3 <= k:
            rows[r - 1][k - r + 2] = LaurentPoly.monomial(-1, w)
    return PolyMatrix.from_rows(rows)


def build_c(k: int, j: int) -> PolyMatrix:
    """Lower-triangular matrix acting on the current shelf."""
    if k < 2 or j < 1:
        raise ValueError(f"bad matrix parameters k={k} j={j}")
    unit = LaurentPoly.from_terms({0: 1, 2 * j: 1})
    rows = [[LaurentPoly.zero() for _ in range(k)] for _ in range(k)]
    rows[0][0] = LaurentPoly.one()
    rows[1][0] = LaurentPoly.monomial(1, 2 * j - 1)
    for r in range(2, k + 1):
        rows[r - 1][r - 1] = unit
        if r >= 3:
            rows[r - 1][r - 2] = unit.scale_shift(1, -1)
    return PolyMatrix.from_rows(rows)


def build_a(k: int, j: int) -> PolyMatrix:
    """Transcribed inverse of the reversal matrix; verified against it.

    Row m climbs the even-offset staircase q^(2j(c-2)) for columns
    c = k-m+1, k-m-1, ..., 3, then closes with a bare 1 in column 1 or 2
    according to the parity of k-m.  The product with the reversal matrix
    is checked to be the identity on every construction.
    """
    if k < 2 or j < 1:
        raise ValueError(f"bad matrix parameters k={k} j={j}")
    rows = [[LaurentPoly.zero() for _ in range(k)] for _ in range(k)]
    for m in range(1, k + 1):
        for c in range(k - m + 1, 2, -2):
            rows[m - 1][c - 1] = LaurentPoly.monomial(1, 2 * j * (c - 2))
        if (k - m) % 2 == 0:
            rows[m - 1][0] = LaurentPoly.one()
        else:
            rows[m - 1][1] = LaurentPoly.one()
    a = PolyMatrix.from_rows(rows)
    if a * build_b(k, j) != PolyMatrix.identity(k):
        raise PatternMismatchError(f"inverse pattern failed for k={k} j={j}")
    return a


def build_a_prime(k: int, j: int) -> PolyMatrix:
    """Descent matrix: inverse pattern composed with the triangular matrix.

    For j >= 1 every entry is a genuine polynomial (no negative powers),
    which is asserted because the h products inherit exactness from it.
    """
    ap = build_a(k, j) * build_c(k, j)
    low = ap.min_exponent()
    if low is not None and low < 0:
        raise PatternMismatchError(
            f"descent matrix for k={k} j={j} has a negative exponent {low}"
        )
    return ap


# ---------------------------------------------------------------------------
# running products of descent matrices
# ---------------------------------------------------------------------------

def h_by_product(k: int, J: int, j: int) -> PolyMatrix:
    """Ordered product of descent matrices for levels J+1 .. j."""
    if not (k >= 2 and 0 <= J <= j):
        raise ValueError(f"bad h parameters k={k} J={J} j={j}")
    acc = PolyMatrix.identity(k)
    for level in range(J + 1, j + 1):
        acc = acc * build_a_prime(k, level)
    return acc


def h_by_recursion(k: int, J: int, j: int) -> PolyMatrix:
    """Same matrices by the row recursion, never materializing the factors.

    Each new entry splits the previous row into the two parity classes
    below a column-dependent cutoff, weights one class by q^(2j-1), and
    doubles through the two-rung column prefactor.
    """
    if not (k >= 2 and 0 <= J <= j):
        raise ValueError(f"bad h parameters k={k} J={J} j={j}")
    cur = PolyMatrix.identity(k)
    for level in range(J + 1, j + 1):
        rows = []
        for i in range(1, k + 1):
            prev_row = cur.entries[i - 1]
            row = []
            for l in range(1, k + 1):
                matched = LaurentPoly.zero()
                unmatched = LaurentPoly.zero()
                for m in range(1, k + 1):
                    if (m - l - k) % 2 == 0:
                        if m <= k - l:
                            matched = matched + prev_row[m - 1]
                    elif m <= k - l + 1:
                        unmatched = unmatched + prev_row[m - 1]
                bracket = matched.scale_shift(1, 2 * level - 1) + unmatched
                entry = bracket.scale_shift(1, 2 * level * (l - 1))
                if l > 1:
                    entry = entry + bracket.scale_shift(1, 2 * level * (l - 2))
                row.append(entry)
            rows.append(row)
        cur = PolyMatrix.from_rows(rows)
    return cur


def h_first_level(k: int, J: int) -> PolyMatrix:
    """Explicit closed pattern for the first level above the base shelf."""
    rows = []
    for i in range(1, k + 1):
        row = []
        for l in range(1, k + 1):
            if l > k - i + 1:
                row.append(LaurentPoly.zero())
                continue
            rungs = LaurentPoly.monomial(1, (l - 1) * (2 * J + 2))
            if l > 1:
                rungs = rungs + LaurentPoly.monomial(1, (l - 2) * (2 * J + 2))
            if (l + k - 1 - i) % 2 == 0:
                row.append(rungs)
            elif l <= k - i:
                row.append(rungs.scale_shift(1, 2 * J + 1))
            else:
                row.append(LaurentPoly.zero())
        rows.append(row)
    return PolyMatrix.from_rows(rows)


def h_matrix(k: int, J: int, j: int) -> PolyMatrix:
    """Two-route h matrix; the routes must agree entry by entry."""
    prod = h_by_product(k, J, j)
    rec = h_by_recursion(k, J, j)
    if prod != rec:
        for r in range(1, k + 1):
            for c in range(1, k + 1):
                if prod.entry(r, c) != rec.entry(r, c):
                    raise PatternMismatchError(
                        f"h routes disagree at entry ({r},{c}) for k={k} J={J} j={j}"
                    )
    return prod


def h_entry_series(poly: LaurentPoly, prec: int, tag: str, **ids: int) -> TruncatedLaurentSeries:
    return faults.tweak(tag, poly.to_series(prec), **ids)


def h12_stabilized(
    k: int, i: int, J: int, window: int, max_level: int | None = None
) -> TruncatedLaurentSeries:
    """Stabilized sum of the first two columns of row i, through ``window``.

    Levels advance until two consecutive sums agree on the window, the
    level has passed the valuation horizon 2j + 1 > window (the shelf-j
    series differ from 1 only beyond that exponent, so earlier agreement
    can be transient -- at k = 2 consecutive levels pair up while still
    wrong), and all later columns have valuation beyond the window.  The
    stable value is the shelf-J official series.  Raises
    NoStabilizationError if the level budget runs out first.
    """
    if max_level is None:
        max_level = J + window // 2 + 4
    prec = window + 1
    cur = PolyMatrix.identity(k)
    previous: TruncatedLaurentSeries | None = None
    for level in range(J + 1, max_level + 1):
        cur = cur * build_a_prime(k, level)
        row = cur.entries[i - 1]
        s = (row[0] + row[1]).to_series(prec)
        if previous is not None and 2 * level + 1 > window and s.agrees_with(previous):
            tail_vals = [
                row[l].min_exponent() for l in range(2, k) if not row[l].is_zero()
            ]
            if all(v is not None and v > window for v in tail_vals) or not tail_vals:
                return faults.tweak("h12-stabilized", s, k=k, i=i, J=J)
        previous = s
    raise NoStabilizationError(
        f"no stabilization for k={k} i={i} J={J} within level {max_level}"
    )
