"""Exact trivariate (a; x; q) series engine.

The shelf series embed into a three-variable family: a counts one kind of
part, x counts all parts, q counts the weight.  This module builds the two
official families (single-index and shifted-index), their ghost
counterparts, verifies the functional equations relating them, and
specializes back to the univariate shelf series through the substitution
a -> 1/q, x -> q^(2j), q -> q^2.

Representation: a mapping (a_exp, x_exp) -> dense q-coefficient list, with
two rectangular truncation windows q_prec and x_prec.  All exponents are
nonnegative; negative-index family members are only ever handled after
clearing the x power that makes them polynomial.  Multiplication uses the
packed integer convolution from the series core per slice pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import faults
from .series import (
    NotDivisibleError,
    SeriesError,
    TruncatedLaurentSeries,
    convolve,
)


class RouteMismatchError(SeriesError):
    """Independently computed routes to the same series disagree."""


class NegativeExponentError(SeriesError):
    """An operation would have produced a negative exponent."""


class SupportError(SeriesError):
    """A monomial violates the q-dominance support invariant."""


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _norm(
    raw: dict[tuple[int, int], list[int]], q_prec: int, x_prec: int
) -> dict[tuple[int, int], tuple[int, ...]]:
    out = {}
    for (a, x), coeffs in raw.items():
        if x >= x_prec:
            continue
        if len(coeffs) > q_prec:
            coeffs = coeffs[:q_prec]
        coeffs = _trim(list(coeffs))
        if coeffs:
            out[(a, x)] = tuple(coeffs)
    return out


@dataclass(frozen=True)
class TriSeries:
    """Truncated power series in a, x, q with exact integer coefficients."""

    terms: dict[tuple[int, int], tuple[int, ...]]
    q_prec: int
    x_prec: int
    _q_val: int = field(init=False, repr=False, compare=False)
    _x_val: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        q_val, x_val = self.q_prec, self.x_prec
        for (_, x), coeffs in self.terms.items():
            for n, c in enumerate(coeffs):
                if c:
                    q_val = min(q_val, n)
                    break
            x_val = min(x_val, x)
        object.__setattr__(self, "_q_val", q_val)
        object.__setattr__(self, "_x_val", x_val)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(q_prec: int, x_prec: int) -> "TriSeries":
        return TriSeries({}, q_prec, x_prec)

    @staticmethod
    def monomial(
        coeff: int, a: int, x: int, q: int, q_prec: int, x_prec: int
    ) -> "TriSeries":
        if a < 0 or x < 0 or q < 0:
            raise NegativeExponentError(f"monomial exponents a={a} x={x} q={q}")
        raw = {}
        if coeff and q < q_prec and x < x_prec:
            raw[(a, x)] = [0] * q + [coeff]
        return TriSeries(_norm(raw, q_prec, x_prec), q_prec, x_prec)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, x: int, q: int) -> int:
        if q >= self.q_prec or x >= self.x_prec:
            raise SeriesError(
                f"coefficient a={a} x={x} q={q} beyond windows "
                f"({self.q_prec}, {self.x_prec})"
            )
        coeffs = self.terms.get((a, x), ())
        return coeffs[q] if q < len(coeffs) else 0

    def records(self, q_max: int | None = None) -> list[dict]:
        """Flat serialization; coefficients as decimal strings."""
        rows = []
        for (a, x), coeffs in self.terms.items():
            for q, c in enumerate(coeffs):
                if c and (q_max is None or q <= q_max):
                    rows.append((q, a, x, c))
        rows.sort()
        return [{"q": q, "a": a, "x": x, "coeff": str(c)} for q, a, x, c in rows]

    def support_violation(self) -> tuple[int, int, int] | None:
        """First monomial whose q-exponent fails to dominate a and x."""
        worst = None
        for (a, x), coeffs in self.terms.items():
            bound = max(a, x)
            for q, c in enumerate(coeffs):
                if c and q < bound:
                    cand = (q, a, x)
                    if worst is None or cand < worst:
                        worst = cand
                    break
        return worst

    def assert_support(self, context: str) -> "TriSeries":
        bad = self.support_violation()
        if bad is not None:
            q, a, x = bad
            raise SupportError(
                f"{context}: monomial a^{a} x^{x} q^{q} violates q-dominance"
            )
        return self

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "TriSeries") -> "TriSeries":
        qp = min(self.q_prec, other.q_prec)
        xp = min(self.x_prec, other.x_prec)
        raw: dict[tuple[int, int], list[int]] = {
            key: list(coeffs) for key, coeffs in self.terms.items()
        }
        for key, coeffs in other.terms.items():
            tgt = raw.get(key)
            if tgt is None:
                raw[key] = list(coeffs)
            else:
                if len(tgt) < len(coeffs):
                    tgt.extend([0] * (len(coeffs) - len(tgt)))
                for n, c in enumerate(coeffs):
                    tgt[n] += c
        return TriSeries(_norm(raw, qp, xp), qp, xp)

    def __neg__(self) -> "TriSeries":
        return self.scale(-1)

    def __sub__(self, other: "TriSeries") -> "TriSeries":
        return self + (-other)

    def scale(self, c: int) -> "TriSeries":
        if c == 0:
            return TriSeries.zero(self.q_prec, self.x_prec)
        return TriSeries(
            {key: tuple(c * v for v in coeffs) for key, coeffs in self.terms.items()},
            self.q_prec,
            self.x_prec,
        )

    def __mul__(self, other: "TriSeries") -> "TriSeries":
        qp = min(self.q_prec + other._q_val, other.q_prec + self._q_val)
        xp = min(self.x_prec + other._x_val, other.x_prec + self._x_val)
        raw: dict[tuple[int, int], list[int]] = {}
        for (a1, x1), c1 in self.terms.items():
            for (a2, x2), c2 in other.terms.items():
                x = x1 + x2
                if x >= xp:
                    continue
                prod = convolve(list(c1), list(c2), out_len=qp)
                key = (a1 + a2, x)
                tgt = raw.get(key)
                if tgt is None:
                    raw[key] = prod
                else:
                    if len(tgt) < len(prod):
                        tgt.extend([0] * (len(prod) - len(tgt)))
                    for n, c in enumerate(prod):
                        tgt[n] += c
        return TriSeries(_norm(raw, qp, xp), qp, xp)

    def mul_monomial(self, coeff: int, da: int, dx: int, dq: int) -> "TriSeries":
        """Multiply by an exact monomial; widens windows accordingly."""
        if da < 0 or dx < 0 or dq < 0:
            raise NegativeExponentError(f"monomial shift a={da} x={dx} q={dq}")
        qp, xp = self.q_prec + dq, self.x_prec + dx
        raw = {}
        for (a, x), coeffs in self.terms.items():
            raw[(a + da, x + dx)] = [0] * dq + [coeff * c for c in coeffs]
        return TriSeries(_norm(raw, qp, xp), qp, xp)

    # -- the operations the functional equations need -----------------------

    def substitute_x_to_xq(self) -> "TriSeries":
        """x -> xq.  Needs x_prec >= q_prec so dropped slices stay beyond q_prec."""
        if self.x_prec < self.q_prec:
            raise SeriesError(
                f"x -> xq substitution needs x_prec >= q_prec, have "
                f"({self.q_prec}, {self.x_prec})"
            )
        raw = {}
        for (a, x), coeffs in self.terms.items():
            raw[(a, x)] = [0] * x + list(coeffs)
        return TriSeries(_norm(raw, self.q_prec, self.x_prec), self.q_prec, self.x_prec)

    def divide_one_plus_x_qpow(self, c: int) -> "TriSeries":
        """Exact division by the unit 1 + x*q^c (c in {0, 1})."""
        by_ax: dict[int, dict[int, list[int]]] = {}
        for (a, x), coeffs in self.terms.items():
            by_ax.setdefault(a, {})[x] = list(coeffs)
        raw: dict[tuple[int, int], list[int]] = {}
        for a, slices in by_ax.items():
            prev: list[int] | None = None
            for x in range(self.x_prec):
                cur = slices.get(x, [])
                if prev is not None:
                    shifted = [0] * c + prev
                    if len(cur) < len(shifted):
                        cur = cur + [0] * (len(shifted) - len(cur))
                    cur = [u - v for u, v in zip(cur, shifted + [0] * (len(cur) - len(shifted)))]
                cur = _trim(cur[: self.q_prec])
                if cur:
                    raw[(a, x)] = cur
                prev = cur
        return TriSeries(_norm(raw, self.q_prec, self.x_prec), self.q_prec, self.x_prec)

    def divide_by_xq_power(self, m: int) -> "TriSeries":
        """Strict division by (xq)^m; every monomial must carry x^m q^m."""
        if m == 0:
            return self
        raw = {}
        for (a, x), coeffs in self.terms.items():
            if x < m:
                q = next(n for n, c in enumerate(coeffs) if c)
                raise NotDivisibleError(x, coeffs[q] if q < len(coeffs) else 0)
            for q, c in enumerate(coeffs):
                if c and q < m:
                    raise NotDivisibleError(q, c)
            raw[(a, x - m)] = list(coeffs[m:])
        return TriSeries(
            _norm(raw, self.q_prec - m, self.x_prec - m),
            self.q_prec - m,
            self.x_prec - m,
        )

    # -- comparison ---------------------------------------------------------

    def first_mismatch(self, other: "TriSeries") -> tuple[int, int, int, int, int] | None:
        """Earliest differing monomial on the common windows, or None."""
        qp = min(self.q_prec, other.q_prec)
        xp = min(self.x_prec, other.x_prec)
        bad = None
        for key in set(self.terms) | set(other.terms):
            a, x = key
            if x >= xp:
                continue
            lhs = self.terms.get(key, ())
            rhs = other.terms.get(key, ())
            for q in range(min(qp, max(len(lhs), len(rhs)))):
                lc = lhs[q] if q < len(lhs) else 0
                rc = rhs[q] if q < len(rhs) else 0
                if lc != rc:
                    cand = (q, a, x, lc, rc)
                    if bad is None or cand[:3] < bad[:3]:
                        bad = cand
                    break
        return bad

    def agrees_with(self, other: "TriSeries") -> bool:
        return self.first_mismatch(other) is None


def tri_assert_agree(lhs: TriSeries, rhs: TriSeries, context: str) -> None:
    bad = lhs.first_mismatch(rhs)
    if bad is not None:
        q, a, x, lc, rc = bad
        raise RouteMismatchError(
            f"routes disagree in {context} at a^{a} x^{x} q^{q}: {lc} != {rc}"
        )


# ---------------------------------------------------------------------------
# cached structural factors
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _inv_qfact(r: int, q_prec: int) -> tuple[int, ...]:
    """1 / (q; q)_r as a dense q-list."""
    if r == 0:
        return (1,)
    prev = list(_inv_qfact(r - 1, q_prec))
    cur = prev + [0] * (q_prec - len(prev))
    for n in range(r, q_prec):
        cur[n] += cur[n - r]
    return tuple(_trim(cur[:q_prec]))


@lru_cache(maxsize=None)
def _inv_q2fact(n: int, q_prec: int) -> tuple[int, ...]:
    """1 / (q^2; q^2)_n as a dense q-list."""
    if n == 0:
        return (1,)
    prev = list(_inv_q2fact(n - 1, q_prec))
    cur = prev + [0] * (q_prec - len(prev))
    for m in range(2 * n, q_prec):
        cur[m] += cur[m - 2 * n]
    return tuple(_trim(cur[:q_prec]))


def _neg_x_poch(n: int, x_start: int, q_prec: int, x_prec: int) -> TriSeries:
    """Product of (1 + x q^(x_start + t)) for t < n."""
    acc = TriSeries.monomial(1, 0, 0, 0, q_prec, x_prec)
    for t in range(n):
        factor = TriSeries.monomial(1, 0, 0, 0, q_prec, x_prec) + TriSeries.monomial(
            1, 0, 1, x_start + t, q_prec, x_prec
        )
        acc = acc * factor
    return acc


def _a_poch(n: int, q_prec: int, x_prec: int) -> TriSeries:
    """Product of (a + q^t) for t < n: the fraction-free cleared factorial."""
    acc = TriSeries.monomial(1, 0, 0, 0, q_prec, x_prec)
    for t in range(n):
        factor = TriSeries.monomial(1, 1, 0, 0, q_prec, x_prec) + TriSeries.monomial(
            1, 0, 0, t, q_prec, x_prec
        )
        acc = acc * factor
    return acc


def _axq_infinite(start: int, q_prec: int, x_prec: int) -> TriSeries:
    """(-a x q^start; q)_infinity expanded by exponent count."""
    raw: dict[tuple[int, int], list[int]] = {}
    r = 0
    while start * r + r * (r - 1) // 2 < q_prec and r < x_prec:
        base = start * r + r * (r - 1) // 2
        tail = _inv_qfact(r, q_prec - base)
        raw[(r, r)] = [0] * base + list(tail)
        r += 1
    return TriSeries(_norm(raw, q_prec, x_prec), q_prec, x_prec)


def _inv_x_infinite(start: int, q_prec: int, x_prec: int) -> TriSeries:
    """1 / (x q^start; q)_infinity expanded by exponent count."""
    raw: dict[tuple[int, int], list[int]] = {}
    r = 0
    while start * r < q_prec and r < x_prec:
        base = start * r
        tail = _inv_qfact(r, q_prec - base)
        raw[(0, r)] = [0] * base + list(tail)
        r += 1
    return TriSeries(_norm(raw, q_prec, x_prec), q_prec, x_prec)


@lru_cache(maxsize=None)
def _core(n: int, shifted: bool, q_prec: int, x_prec: int) -> TriSeries:
    """Shared factor of the n-th summand, independent of both k and i.

    shifted=False is the raw family (x-run from q^0, tails at n and n+1);
    shifted=True is the combined family after x -> xq (run from q^1, tails
    at n+1 and n+2).
    """
    x_start, a_start, inv_start = (1, n + 2, n + 1) if shifted else (0, n + 1, n)
    acc = _neg_x_poch(n, x_start, q_prec, x_prec) * _a_poch(n, q_prec, x_prec)
    q2 = _inv_q2fact(n, q_prec)
    acc = acc * TriSeries(_norm({(0, 0): list(q2)}, q_prec, x_prec), q_prec, x_prec)
    acc = acc * _axq_infinite(a_start, q_prec, x_prec)
    acc = acc * _inv_x_infinite(inv_start, q_prec, x_prec)
    return acc


def _accumulate(
    total: dict[tuple[int, int], list[int]],
    core: TriSeries,
    monomials: list[tuple[int, int, int, int]],
    q_prec: int,
    x_prec: int,
) -> None:
    """total += core * (sum of coeff * a^da x^dx q^dq monomials)."""
    for coeff, da, dx, dq in monomials:
        if dq >= q_prec:
            continue
        for (a, x), coeffs in core.terms.items():
            xx = x + dx
            if xx >= x_prec:
                continue
            key = (a + da, xx)
            tgt = total.setdefault(key, [])
            stop = min(len(coeffs), q_prec - dq)
            if len(tgt) < dq + stop:
                tgt.extend([0] * (dq + stop - len(tgt)))
            for q in range(stop):
                tgt[dq + q] += coeff * coeffs[q]


# ---------------------------------------------------------------------------
# the series families
# ---------------------------------------------------------------------------

def _windows(q_prec: int, x_prec: int | None) -> tuple[int, int]:
    if x_prec is None:
        x_prec = q_prec
    return q_prec, x_prec


@lru_cache(maxsize=None)
def h_tilde(k: int, i: int, q_prec: int, x_prec: int | None = None) -> TriSeries:
    """Raw family member for i >= 0; index 0 vanishes identically.

    Negative indices carry negative x powers and are reachable only through
    the cleared builder ``h_tilde_cleared_negative``.
    """
    q_prec, x_prec = _windows(q_prec, x_prec)
    if k < 2:
        raise ValueError(f"family needs k >= 2, got {k}")
    if i < 0:
        raise NegativeExponentError(
            f"index {i} < 0 has negative x powers; use the cleared builder"
        )
    total: dict[tuple[int, int], list[int]] = {}
    n = 0
    while True:
        base = k * n * n - n * (n - 1) // 2 + n - i * n
        if base < 0:
            raise NegativeExponentError(f"summand exponent {base} at n={n}")
        if base >= q_prec:
            break
        sign = -1 if n % 2 else 1
        monomials = [
            (sign, 0, (k - 1) * n, base),
            (-sign, 0, (k - 1) * n + i, base + 2 * n * i),
        ]
        _accumulate(total, _core(n, False, q_prec, x_prec), monomials, q_prec, x_prec)
        n += 1
    return TriSeries(_norm(total, q_prec, x_prec), q_prec, x_prec)


@lru_cache(maxsize=None)
def h_tilde_cleared_negative(
    k: int, i: int, q_prec: int, x_prec: int | None = None
) -> TriSeries:
    """x^i times the raw family member at index -i, built directly (i >= 0)."""
    q_prec, x_prec = _windows(q_prec, x_prec)
    if k < 2 or i < 0:
        raise ValueError(f"bad cleared-negative parameters k={k} i={i}")
    total: dict[tuple[int, int], list[int]] = {}
    n = 0
    while True:
        low = k * n * n - n * (n - 1) // 2 + n - i * n
        high = k * n * n - n * (n - 1) // 2 + n + i * n
        if low < 0:
            raise NegativeExponentError(f"summand exponent {low} at n={n}")
        if low >= q_prec:
            break
        sign = -1 if n % 2 else 1
        monomials = [
            (sign, 0, (k - 1) * n + i, high),
            (-sign, 0, (k - 1) * n, low),
        ]
        _accumulate(total, _core(n, False, q_prec, x_prec), monomials, q_prec, x_prec)
        n += 1
    return TriSeries(_norm(total, q_prec, x_prec), q_prec, x_prec)


@lru_cache(maxsize=None)
def _j_tilde_direct(k: int, i: int, q_prec: int, x_prec: int) -> TriSeries:
    """Single-sum form of the combined family, 1 <= i <= k + 1."""
    total: dict[tuple[int, int], list[int]] = {}
    n = 0
    while True:
        base = k * n * n - n * (n - 1) // 2 + k * n - i * n
        if base < 0:
            raise NegativeExponentError(f"summand exponent {base} at n={n}")
        if base >= q_prec:
            break
        sign = -1 if n % 2 else 1
        monomials = [
            (sign, 0, (k - 1) * n, base),
            (-sign, 0, (k - 1) * n + i, base + (2 * n + 1) * i),
            (sign, 1, (k - 1) * n + 1, base + n + 1),
            (-sign, 1, (k - 1) * n + i, base + n + 1 + (2 * n + 1) * (i - 1)),
        ]
        _accumulate(total, _core(n, True, q_prec, x_prec), monomials, q_prec, x_prec)
        n += 1
    return TriSeries(_norm(total, q_prec, x_prec), q_prec, x_prec)


@lru_cache(maxsize=None)
def j_tilde(k: int, i: int, q_prec: int, x_prec: int | None = None) -> TriSeries:
    """Combined family: both construction routes computed and compared.

    Route one is the defining combination of two raw members after x -> xq;
    route two is the single-sum form.  Index 0 is the cleared special case
    -a times the substituted index-1 raw member (single route).
    """
    q_prec, x_prec = _windows(q_prec, x_prec)
    if k < 2 or not (0 <= i <= k + 1):
        raise ValueError(f"bad combined-family parameters k={k} i={i}")
    if i == 0:
        return h_tilde(k, 1, q_prec, x_prec).substitute_x_to_xq().mul_monomial(
            -1, 1, 0, 0
        ).truncated(q_prec, x_prec)
    via_raw = h_tilde(k, i, q_prec, x_prec).substitute_x_to_xq()
    if i >= 2:
        lower = h_tilde(k, i - 1, q_prec, x_prec).substitute_x_to_xq()
        via_raw = via_raw + lower.mul_monomial(1, 1, 1, 1).truncated(q_prec, x_prec)
    direct = _j_tilde_direct(k, i, q_prec, x_prec)
    tri_assert_agree(direct, via_raw, f"combined family k={k} i={i}")
    return direct.assert_support(f"combined family k={k} i={i}")


@lru_cache(maxsize=None)
def _j_ghost_direct(k: int, i: int, q_prec: int, x_prec: int) -> TriSeries:
    """Single-sum form of the ghost family, 1 <= i <= k."""
    total: dict[tuple[int, int], list[int]] = {}
    n = 0
    while True:
        base = k * n * n - n * (n - 1) // 2 + k * n - (i + 1) * n
        if base < 0:
            raise NegativeExponentError(f"summand exponent {base} at n={n}")
        if base >= q_prec:
            break
        sign = -1 if n % 2 else 1
        inner = [
            (sign, 0, (k - 1) * n, base),
            (-sign, 0, (k - 1) * n + i, base + (2 * n + 1) * i),
            (sign, 1, (k - 1) * n + 1, base + n + 1),
            (-sign, 1, (k - 1) * n + i, base + n + 1 + (2 * n + 1) * (i - 1)),
        ]
        monomials = list(inner) + [
            (c, da, dx + 1, dq + 2 * n + 1) for c, da, dx, dq in inner
        ]
        _accumulate(total, _core(n, True, q_prec, x_prec), monomials, q_prec, x_prec)
        n += 1
    raw = TriSeries(_norm(total, q_prec, x_prec), q_prec, x_prec)
    return raw.divide_one_plus_x_qpow(1)


@lru_cache(maxsize=None)
def h_tilde_ghost(k: int, i: int, q_prec: int, x_prec: int | None = None) -> TriSeries:
    """Ghost interpolation of the raw family: (up + x*down) / (1 + x)."""
    q_prec, x_prec = _windows(q_prec, x_prec)
    if k < 2 or i < 0:
        raise ValueError(f"bad ghost-raw parameters k={k} i={i}")
    if i == 0:
        return TriSeries.zero(q_prec, x_prec)
    up = h_tilde(k, i + 1, q_prec, x_prec)
    if i >= 2:
        down = h_tilde(k, i - 1, q_prec, x_prec).mul_monomial(1, 0, 1, 0)
        up = up + down.truncated(q_prec, x_prec)
    return up.divide_one_plus_x_qpow(0)


@lru_cache(maxsize=None)
def j_tilde_ghost(k: int, i: int, q_prec: int, x_prec: int | None = None) -> TriSeries:
    """Ghost combined family by three routes, which must agree.

    Route one combines two ghost-raw members after x -> xq; route two
    interpolates neighbouring combined members through (1 + xq); route
    three is the single-sum form.
    """
    q_prec, x_prec = _windows(q_prec, x_prec)
    if k < 2 or not (1 <= i <= k):
        raise ValueError(f"bad ghost-family parameters k={k} i={i}")
    via_raw = h_tilde_ghost(k, i, q_prec, x_prec).substitute_x_to_xq()
    lower = h_tilde_ghost(k, i - 1, q_prec, x_prec).substitute_x_to_xq()
    via_raw = (via_raw + lower.mul_monomial(1, 1, 1, 1).truncated(q_prec, x_prec))
    interp = (
        j_tilde(k, i + 1, q_prec, x_prec)
        + j_tilde(k, i - 1, q_prec, x_prec).mul_monomial(1, 0, 1, 1).truncated(
            q_prec, x_prec
        )
    ).divide_one_plus_x_qpow(1)
    direct = _j_ghost_direct(k, i, q_prec, x_prec)
    tri_assert_agree(direct, via_raw, f"ghost family k={k} i={i} (raw route)")
    tri_assert_agree(direct, interp, f"ghost family k={k} i={i} (interpolation)")
    return direct.assert_support(f"ghost family k={k} i={i}")


# TriSeries.truncated is referenced above; attach here to keep the dataclass brief.
def _truncated(self: TriSeries, q_prec: int, x_prec: int) -> TriSeries:
    if q_prec > self.q_prec or x_prec > self.x_prec:
        raise SeriesError(
            f"cannot widen windows ({self.q_prec}, {self.x_prec}) -> "
            f"({q_prec}, {x_prec})"
        )
    raw = {key: list(coeffs) for key, coeffs in self.terms.items()}
    return TriSeries(_norm(raw, q_prec, x_prec), q_prec, x_prec)


TriSeries.truncated = _truncated


# ---------------------------------------------------------------------------
# dictionary specialization back to the univariate shelves
# ---------------------------------------------------------------------------

def specialize_dictionary(t: TriSeries, j_shelf: int, n_prec: int) -> TruncatedLaurentSeries:
    """a -> q^(-1), x -> q^(2 j_shelf), q -> q^2; exact through degree n_prec - 1.

    Soundness needs both windows beyond the target and the q-dominance
    support invariant: a dropped monomial then lands beyond the target
    because 2q - a >= q >= max(q_prec, x_prec).
    """
    if t.q_prec < n_prec or t.x_prec < n_prec:
        raise SeriesError(
            f"windows ({t.q_prec}, {t.x_prec}) too small for target {n_prec}"
        )
    t.assert_support("dictionary input")
    out = [0] * n_prec
    for (a, x), coeffs in t.terms.items():
        for q, c in enumerate(coeffs):
            if not c:
                continue
            e = 2 * q - a + 2 * j_shelf * x
            if e < 0:
                raise NegativeExponentError(
                    f"dictionary image exponent {e} from a^{a} x^{x} q^{q}"
                )
            if e < n_prec:
                out[e] += c
    return TruncatedLaurentSeries.make(0, out, n_prec)


def dictionary_official(k: int, j: int, i: int, degree: int) -> TruncatedLaurentSeries:
    """Univariate official series at shelf j, position i, via the dictionary."""
    if not (1 <= i <= k and j >= 0):
        raise ValueError(f"bad dictionary position k={k} j={j} i={i}")
    q_prec = 2 * degree + 1
    tri = j_tilde(k, k - i + 1, q_prec)
    s = specialize_dictionary(tri, j, degree + 1)
    return faults.tweak("dictionary-official", s, k=k, j=j, i=i)


def dictionary_ghost(k: int, j: int, i: int, degree: int) -> TruncatedLaurentSeries:
    """Univariate ghost series at shelf j, position i, via the dictionary.

    For j >= 1 and i = 1 this is the defining construction: the shelf
    recursions never produce that position directly.
    """
    if not (1 <= i <= k and j >= 0):
        raise ValueError(f"bad dictionary position k={k} j={j} i={i}")
    q_prec = 2 * degree + 1
    tri = j_tilde_ghost(k, k - i + 1, q_prec)
    s = specialize_dictionary(tri, j, degree + 1)
    return faults.tweak("dictionary-ghost", s, k=k, j=j, i=i)


# ---------------------------------------------------------------------------
# the functional-equation checks
# ---------------------------------------------------------------------------

def check_zero_index(k: int, q_prec: int) -> None:
    """Index 0 of the raw family vanishes identically."""
    got = h_tilde(k, 0, q_prec)
    if not got.is_zero():
        rec = got.records()[0]
        raise RouteMismatchError(f"raw index 0 not zero for k={k}: {rec}")


def check_reflection(k: int, i: int, q_prec: int) -> None:
    """Cleared negative index equals minus the positive index."""
    tri_assert_agree(
        h_tilde_cleared_negative(k, i, q_prec),
        -h_tilde(k, i, q_prec),
        f"reflection k={k} i={i}",
    )


def check_index_difference(k: int, i: int, q_prec: int) -> None:
    """Stepping the raw index by two factors through the combined family."""
    lhs = h_tilde(k, i, q_prec) - h_tilde(k, i - 2, q_prec)
    bridge = j_tilde(k, k - i + 1, q_prec)
    rhs = (bridge + bridge.mul_monomial(1, 0, 1, 0).truncated(q_prec, q_prec)).mul_monomial(
        1, 0, i - 2, 0
    )
    tri_assert_agree(lhs, rhs.truncated(q_prec, q_prec), f"index difference k={k} i={i}")


def check_shift_wrap_first(k: int, q_prec: int) -> None:
    """Index 1 equals the top index after x -> xq."""
    tri_assert_agree(
        j_tilde(k, 1, q_prec),
        j_tilde(k, k, q_prec).substitute_x_to_xq(),
        f"shift wrap (first) k={k}",
    )


def check_shift_wrap_second(k: int, q_prec: int) -> None:
    """Index 2 splits into the two top indices after x -> xq."""
    top = j_tilde(k, k, q_prec).substitute_x_to_xq()
    next_top = j_tilde(k, k - 1, q_prec).substitute_x_to_xq()
    rhs = (
        next_top
        + next_top.mul_monomial(1, 0, 1, 1).truncated(q_prec, q_prec)
        + top.mul_monomial(1, 1, 1, 1).truncated(q_prec, q_prec)
    )
    tri_assert_agree(j_tilde(k, 2, q_prec), rhs, f"shift wrap (second) k={k}")


def check_shift_wrap_general(k: int, i: int, q_prec: int) -> None:
    """The index-step identity for 2 <= i <= k + 1."""
    lhs = j_tilde(k, i, q_prec) - j_tilde(k, i - 2, q_prec)
    low = j_tilde(k, k - i + 1, q_prec).substitute_x_to_xq()
    high = j_tilde(k, k - i + 2, q_prec).substitute_x_to_xq()
    inner = low + high.mul_monomial(1, 1, 0, 0).truncated(q_prec, q_prec)
    rhs = (inner + inner.mul_monomial(1, 0, 1, 1).truncated(q_prec, q_prec)).mul_monomial(
        1, 0, i - 2, i - 2
    )
    tri_assert_agree(lhs, rhs.truncated(q_prec, q_prec), f"index step k={k} i={i}")


def check_rewrite_second(k: int, q_prec: int) -> None:
    """Solve the second shift-wrap identity for the substituted member."""
    num = j_tilde(k, 2, q_prec) - j_tilde(k, 1, q_prec).mul_monomial(1, 1, 1, 1).truncated(
        q_prec, q_prec
    )
    tri_assert_agree(
        num.divide_one_plus_x_qpow(1),
        j_tilde(k, k - 1, q_prec).substitute_x_to_xq(),
        f"rewrite (second) k={k}",
    )


def check_rewrite_general(k: int, i: int, q_prec: int) -> None:
    """Solve the index-step identity with strict (xq)-power division."""
    num = (j_tilde(k, i, q_prec) - j_tilde(k, i - 2, q_prec)).divide_by_xq_power(i - 2)
    part = num.divide_one_plus_x_qpow(1)
    high = j_tilde(k, k - i + 2, q_prec).substitute_x_to_xq()
    got = part - high.mul_monomial(1, 1, 0, 0).truncated(part.q_prec, part.x_prec)
    tri_assert_agree(
        got,
        j_tilde(k, k - i + 1, q_prec).substitute_x_to_xq(),
        f"rewrite (general) k={k} i={i}",
    )


def check_top_wraparound(k: int, q_prec: int) -> None:
    """Index k+1 collapses onto index k-1."""
    tri_assert_agree(
        j_tilde(k, k + 1, q_prec),
        j_tilde(k, k - 1, q_prec),
        f"top wraparound k={k}",
    )


def check_ghost_first_division(k: int, q_prec: int) -> None:
    """The first ghost closes the strict-division recursion tautologically."""
    ghost1 = j_tilde_ghost(k, 1, q_prec)
    num = (j_tilde(k, 2, q_prec) - ghost1).divide_by_xq_power(1)
    top = j_tilde(k, k, q_prec).substitute_x_to_xq()
    got = num - top.mul_monomial(1, 1, 0, 0).truncated(num.q_prec, num.x_prec)
    expected = j_tilde(k, k - 1, q_prec).substitute_x_to_xq()
    tri_assert_agree(got, expected, f"ghost first division k={k} (recursion)")
    tri_assert_agree(got, ghost1, f"ghost first division k={k} (tautology)")


def check_ghost_interior_division(k: int, i: int, q_prec: int) -> None:
    """Both strict-division routes through the ghost agree, 2 <= i <= k."""
    ghost = j_tilde_ghost(k, i - 1, q_prec)
    high = j_tilde(k, k - i + 2, q_prec).substitute_x_to_xq()
    expected = j_tilde(k, k - i + 1, q_prec).substitute_x_to_xq()
    num_a = (j_tilde(k, i, q_prec) - ghost).divide_by_xq_power(i - 1)
    got_a = num_a - high.mul_monomial(1, 1, 0, 0).truncated(num_a.q_prec, num_a.x_prec)
    num_b = (ghost - j_tilde(k, i - 2, q_prec)).divide_by_xq_power(i - 2)
    got_b = num_b - high.mul_monomial(1, 1, 0, 0).truncated(num_b.q_prec, num_b.x_prec)
    tri_assert_agree(got_a, expected, f"ghost division k={k} i={i} (route a)")
    tri_assert_agree(got_b, expected, f"ghost division k={k} i={i} (route b)")


def check_ghost_top(k: int, q_prec: int) -> None:
    """The top ghost equals the official member one index down."""
    tri_assert_agree(
        j_tilde_ghost(k, k, q_prec),
        j_tilde(k, k - 1, q_prec),
        f"ghost top k={k}",
    )


def check_ghost_first_forms(k: int, q_prec: int) -> None:
    """Two closed forms for the first ghost."""
    ghost1 = j_tilde_ghost(k, 1, q_prec)
    form_a = (
        j_tilde(k, 2, q_prec)
        - j_tilde(k, 1, q_prec).mul_monomial(1, 1, 1, 1).truncated(q_prec, q_prec)
    ).divide_one_plus_x_qpow(1)
    form_b = h_tilde(k, 2, q_prec).substitute_x_to_xq().divide_one_plus_x_qpow(1)
    tri_assert_agree(ghost1, form_a, f"first ghost form a k={k}")
    tri_assert_agree(ghost1, form_b, f"first ghost form b k={k}")


def check_ghost_raw_zero(k: int, q_prec: int) -> None:
    """The ghost-raw interpolation vanishes at index 0."""
    numerator = h_tilde(k, 1, q_prec) + h_tilde_cleared_negative(k, 1, q_prec)
    if not numerator.is_zero():
        rec = numerator.records()[0]
        raise RouteMismatchError(f"ghost-raw index 0 numerator not zero for k={k}: {rec}")


def check_ghost_raw_reflection(k: int, i: int, q_prec: int) -> None:
    """Cleared negative ghost-raw equals minus the positive one, i >= 1."""
    cleared = (
        h_tilde_cleared_negative(k, i - 1, q_prec).mul_monomial(1, 0, 1, 0).truncated(
            q_prec, q_prec
        )
        + h_tilde_cleared_negative(k, i + 1, q_prec)
    ).divide_one_plus_x_qpow(0)
    tri_assert_agree(
        cleared,
        -h_tilde_ghost(k, i, q_prec),
        f"ghost-raw reflection k={k} i={i}",
    )
