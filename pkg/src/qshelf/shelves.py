"""Official and ghost series on every shelf, by three independent routes.

A shelf is a block of k-1 consecutive positions; position i on shelf j has
linear index (k-1)j + i.  The same series arises as (a) an explicit
infinite product (shelf 0 only), (b) an alternating sum against the
triple-product normalizer, and (c) a closed hypergeometric-style sum valid
on every shelf.  ``next_shelf`` advances a whole shelf at once through the
two-term recursions with strict q-power divisibility, so iterating it from
shelf 0 gives a fourth, fully independent route to every higher shelf.

All series are power series normalized to constant term 1 and are carried
at a fixed window ``prec``; divisions shrink the window honestly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import faults
from .series import (
    LaurentPoly,
    PrecisionExhaustedError,
    TruncatedLaurentSeries,
    assert_agree,
    f_inverse,
    pochhammer,
)


@dataclass(frozen=True)
class ShelfLabel:
    """Position i (1..k) on shelf j; linear index (k-1)*j + i.

    The top of one shelf is the bottom of the next: (j, k) and (j+1, 1)
    name the same series, and the canonical form prefers (j+1, 1).
    """

    k: int
    j: int
    i: int

    def __post_init__(self) -> None:
        if not (self.k >= 2 and self.j >= 0 and 1 <= self.i <= self.k):
            raise ValueError(f"bad shelf label k={self.k} j={self.j} i={self.i}")

    @property
    def linear(self) -> int:
        return (self.k - 1) * self.j + self.i

    @staticmethod
    def from_linear(k: int, linear: int) -> "ShelfLabel":
        if linear < 1:
            raise ValueError("linear index starts at 1")
        j, r = divmod(linear - 1, k - 1)
        return ShelfLabel(k, j, r + 1)

    def canonical(self) -> "ShelfLabel":
        return ShelfLabel.from_linear(self.k, self.linear)


def _one_plus_q_power(exponent: int, prec: int) -> TruncatedLaurentSeries:
    one = TruncatedLaurentSeries.one(prec)
    if exponent >= prec:
        return one
    return one + TruncatedLaurentSeries.monomial(1, exponent, prec)


def _validate(k: int, j: int, i: int, prec: int) -> None:
    if not (k >= 2 and j >= 0 and 1 <= i <= k and prec >= 1):
        raise ValueError(f"bad shelf parameters k={k} j={j} i={i} prec={prec}")


def product_side(k: int, i: int, prec: int) -> TruncatedLaurentSeries:
    """Shelf-0 official series as an infinite product.

    The normalizer contributes all parts not congruent to 2 mod 4; the
    three extra products carve out two odd residue classes mod 4k-2 and
    make the class of 2k-1 distinct.
    """
    _validate(k, 0, i, prec)
    mod = 4 * k - 2
    s = (
        f_inverse(prec)
        * pochhammer(2 * k - 2 * i + 1, mod, None, prec)
        * pochhammer(2 * k + 2 * i - 3, mod, None, prec)
        * pochhammer(mod, mod, None, prec)
    ).truncate(prec)
    return faults.tweak("product-side", s, k=k, i=i)


def shelf0_sum_form(k: int, i: int, prec: int) -> TruncatedLaurentSeries:
    """Shelf-0 official series as an alternating two-term theta sum."""
    _validate(k, 0, i, prec)
    acc = [0] * prec
    n = 0
    while True:
        base = (4 * k - 2) * n * (n - 1) // 2 + (2 * i + 2 * k - 3) * n
        if base >= prec:
            break
        sgn = -1 if n % 2 else 1
        acc[base] += sgn
        tail = base + (2 * k - 2 * i + 1) * (2 * n + 1)
        if tail < prec:
            acc[tail] -= sgn
        n += 1
    s = f_inverse(prec) * TruncatedLaurentSeries.make(0, acc, prec)
    return faults.tweak("shelf0-sum", s.truncate(prec), k=k, i=i)


def _bracket_poly(k: int, j: int, i: int, n: int, ghost: bool) -> LaurentPoly:
    # trailing bracket of the closed-form summand; the ghost variant gains
    # an extra (1 + q^{2(2n+j+1)}) factor
    w = 2 * n + j + 1
    terms: dict[int, int] = {}
    for e, c in (
        (0, 1),
        (2 * w * (k - i + 1), -1),
        (2 * n + 2 * j + 1, 1),
        (2 * n + 2 * j + 1 + 2 * w * (k - i), -1),
    ):
        terms[e] = terms.get(e, 0) + c
    poly = LaurentPoly.from_terms(terms)
    if ghost:
        poly = poly * LaurentPoly.from_terms({0: 1, 2 * w: 1})
    return poly


def _closed_form(k: int, j: int, i: int, prec: int, ghost: bool) -> TruncatedLaurentSeries:
    total = TruncatedLaurentSeries.zero(prec)
    linear = 2 * k * (j + 1) + 2 * (i - j - (1 if ghost else 0)) - 3
    n = 0
    while True:
        base = (4 * k - 2) * n * (n - 1) // 2 + linear * n
        if base >= prec:
            break
        num = pochhammer(2 * j + 2, 2, n, prec, sign=-1) * pochhammer(
            2 * (n + 1), 2, j, prec
        )
        den = pochhammer(2, 2, n, prec, sign=-1) * pochhammer(
            2 * n + 1, 2, j + 1, prec, sign=-1
        )
        if ghost:
            den = den * pochhammer(2 * j + 2, 2, 1, prec, sign=-1)
        bracket = _bracket_poly(k, j, i, n, ghost).to_series(prec)
        term = num * den.invert() * bracket
        sgn = -1 if n % 2 else 1
        total = total + term.scale(sgn).shift(base).truncate(prec)
        n += 1
    return (f_inverse(prec) * total).truncate(prec)


def closed_official(k: int, j: int, i: int, prec: int) -> TruncatedLaurentSeries:
    """Closed-form official series at shelf j, position i."""
    _validate(k, j, i, prec)
    return faults.tweak("closed-official", _closed_form(k, j, i, prec, False), k=k, j=j, i=i)


def closed_ghost(k: int, j: int, i: int, prec: int) -> TruncatedLaurentSeries:
    """Closed-form ghost series at shelf j, position i.

    Canonical for 2 <= i <= k.  Position 1 is allowed on shelf 0 only,
    where the same sum extends and reproduces the position-2 official.
    """
    _validate(k, j, i, prec)
    if i == 1 and j > 0:
        raise ValueError("ghost position 1 on a higher shelf comes from the dictionary")
    return faults.tweak("closed-ghost", _closed_form(k, j, i, prec, True), k=k, j=j, i=i)


def ghost0_closed(k: int, i: int, prec: int) -> TruncatedLaurentSeries:
    """Shelf-0 ghost series by its standalone two-term sum."""
    _validate(k, 0, i, prec)
    acc = [0] * prec
    n = 0
    while True:
        base = (4 * k - 2) * n * (n - 1) // 2 + (2 * k + 2 * i - 5) * n
        if base >= prec:
            break
        sgn = -1 if n % 2 else 1
        gap = (2 * k - 2 * i + 1) * (2 * n + 1)
        for e, c in ((0, 1), (2 * (2 * n + 1), 1), (gap, -1), (gap + 2 * (2 * n + 1), -1)):
            if base + e < prec:
                acc[base + e] += sgn * c
        n += 1
    one_plus_q2 = _one_plus_q_power(2, prec)
    s = f_inverse(prec) * one_plus_q2.invert() * TruncatedLaurentSeries.make(0, acc, prec)
    return faults.tweak("ghost0-closed", s.truncate(prec), k=k, i=i)


# ---------------------------------------------------------------------------
# shelves as units, and the recursion that climbs them
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShelfPair:
    """Officials (positions 1..k) and ghosts (positions 2..k) of one shelf."""

    k: int
    j: int
    officials: tuple[TruncatedLaurentSeries, ...]
    ghosts: tuple[TruncatedLaurentSeries, ...]

    def official(self, i: int) -> TruncatedLaurentSeries:
        if not 1 <= i <= self.k:
            raise ValueError(f"official position {i} out of range 1..{self.k}")
        return self.officials[i - 1]

    def ghost(self, i: int) -> TruncatedLaurentSeries:
        if not 2 <= i <= self.k:
            raise ValueError(f"ghost position {i} out of range 2..{self.k}")
        return self.ghosts[i - 2]

    @property
    def effective_prec(self) -> int:
        return min(s.prec for s in self.officials + self.ghosts)


def shelf0(k: int, prec: int, route: str = "closed") -> ShelfPair:
    """Build shelf 0 from closed forms (or the product / sum routes)."""
    builders = {
        "closed": lambda i: closed_official(k, 0, i, prec),
        "product": lambda i: product_side(k, i, prec),
        "sum": lambda i: shelf0_sum_form(k, i, prec),
    }
    if route not in builders:
        raise ValueError(f"unknown shelf-0 route {route!r}")
    officials = tuple(builders[route](i) for i in range(1, k + 1))
    ghosts = tuple(closed_ghost(k, 0, i, prec) for i in range(2, k + 1))
    return ShelfPair(k, 0, officials, ghosts)


def _ghosts_for_shelf(
    k: int, j: int, officials: tuple[TruncatedLaurentSeries, ...]
) -> tuple[TruncatedLaurentSeries, ...]:
    # interpolation between neighbours, with the top position folding back;
    # on windows shorter than the bump exponent the unit truncates to 1
    prec = min(s.prec for s in officials)
    unit = _one_plus_q_power(2 * j + 2, prec).invert()
    out = []
    for i in range(2, k):
        num = officials[i - 2] + officials[i].shift(2 * (j + 1)).truncate(prec)
        out.append(faults.tweak("next-shelf-ghost", (num * unit).truncate(prec), k=k, j=j, i=i))
    num = officials[k - 2] - officials[k - 1].shift(2 * j + 1).truncate(prec)
    out.append(faults.tweak("next-shelf-ghost", (num * unit).truncate(prec), k=k, j=j, i=k))
    return tuple(out)


def next_shelf(pair: ShelfPair, min_window: int = 1) -> ShelfPair:
    """Advance one shelf via the two-term recursions.

    Each new position divides a combined numerator by an exact q power
    (strict: any nonzero coefficient below it is an error), and positions
    3..k are computed by both alternative numerators, which must agree.
    Raises PrecisionExhaustedError when the surviving window would drop
    below ``min_window``.
    """
    k, j = pair.k, pair.j
    new: list[TruncatedLaurentSeries] = [pair.official(k)]
    if k >= 2:
        numer = (
            pair.official(k - 1)
            - pair.ghost(k)
            - new[0].shift(2 * (j + 1) - 1).truncate(pair.official(k - 1).prec)
        )
        g2 = numer.divide_exact_by_q_power(2 * (j + 1))
        assert_agree(g2, pair.ghost(k), f"shelf step tautology k={k} j->{j + 1} position 2")
        new.append(g2)
    for i in range(3, k + 1):
        prev = new[i - 2]
        exp_a = 2 * (j + 1) * (i - 1)
        numer_a = (
            pair.official(k - i + 1)
            - pair.ghost(k - i + 2)
            - prev.shift(exp_a - 1).truncate(pair.official(1).prec)
        )
        cand_a = numer_a.divide_exact_by_q_power(exp_a)
        exp_b = 2 * (j + 1) * (i - 2)
        numer_b = (
            pair.ghost(k - i + 2)
            - pair.official(k - i + 3)
            - prev.shift(exp_b - 1).truncate(pair.official(1).prec)
        )
        cand_b = numer_b.divide_exact_by_q_power(exp_b)
        assert_agree(cand_a, cand_b, f"alternative numerators k={k} j->{j + 1} position {i}")
        new.append(cand_a.truncate(cand_a.common_prec(cand_b)))
    officials = tuple(
        faults.tweak("next-shelf-official", s, k=k, j=j + 1, i=pos + 1)
        for pos, s in enumerate(new)
    )
    ghosts = _ghosts_for_shelf(k, j + 1, officials)
    result = ShelfPair(k, j + 1, officials, ghosts)
    if result.effective_prec < min_window:
        raise PrecisionExhaustedError(
            f"window fell to {result.effective_prec} advancing to shelf {j + 1}; "
            f"restart with a larger truncation"
        )
    return result


def required_truncation(k: int, shelves: int, window: int) -> int:
    """Smallest starting window that provably survives ``shelves`` steps.

    Each step to shelf s costs 2*s*(k-1) exponents of precision (the
    deepest division on that step), so the losses telescope.
    """
    return window + (k - 1) * shelves * (shelves + 1)


def ghost_position1(k: int, j: int, prec: int) -> TruncatedLaurentSeries:
    """Ghost at position 1: shelf 0 extends the closed sum; higher shelves
    take the trivariate dictionary definition (a pass-through)."""
    if j == 0:
        return closed_ghost(k, 0, 1, prec)
    from . import axq

    return axq.dictionary_ghost(k, j, 1, prec - 1)


# ---------------------------------------------------------------------------
# leading-term hypothesis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmpiricalResult:
    k: int
    j: int
    i: int
    ghost: bool
    threshold: int
    valuation: int
    certified: bool
    ok: bool


def empirical_hypothesis_check(
    k: int, j: int, i: int, prec: int, ghost: bool = False
) -> EmpiricalResult:
    """Check that the series is 1 plus terms of valuation >= 2j+1.

    The official series at the top of a shelf already belongs to the next
    shelf, so its threshold tightens to 2j+3.  ``certified`` is False when
    the window is too small to decide: nothing nonzero was seen but the
    window stops short of the threshold.
    """
    if ghost and i == 1 and j > 0:
        raise ValueError("ghost position 1 above shelf 0 is dictionary-defined")
    s = closed_ghost(k, j, i, prec) if ghost else closed_official(k, j, i, prec)
    threshold = 2 * j + 3 if (not ghost and i == k) else 2 * j + 1
    diff = s - TruncatedLaurentSeries.one(prec)
    val = diff.valuation()
    if val is not None:
        return EmpiricalResult(k, j, i, ghost, threshold, val, True, val >= threshold)
    return EmpiricalResult(
        k, j, i, ghost, threshold, diff.prec, diff.prec >= threshold, True
    )
