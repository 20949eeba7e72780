"""Exact truncated Laurent series over arbitrary-precision integers.

A series value represents full knowledge of every coefficient of q^e for
e < prec and no knowledge beyond.  Coefficients below ``low`` are exactly
zero; the dense tuple ``coeffs`` covers exponents ``low .. prec-1``.  Every
operation propagates the precision window honestly: results never claim
coefficients that the inputs cannot prove.

The module also provides the exact sparse Laurent polynomial type used by
the matrix layer, the q-Pochhammer constructors, and the triple-product
self-check that anchors the shelf-0 identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class SeriesError(Exception):
    """Base class for arithmetic contract violations in this package."""


class AllZeroError(SeriesError):
    """Inversion of a series that is zero on its whole known window."""


class NotAUnitError(SeriesError):
    """Inversion requires the lowest known coefficient to be +1 or -1."""


class NotDivisibleError(SeriesError):
    """Strict division hit a nonzero coefficient below the divisor power."""

    def __init__(self, exponent: int, coefficient: int):
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(
            f"not divisible: coefficient {coefficient} at exponent {exponent}"
        )


class DivergentProductError(SeriesError):
    """Infinite Pochhammer product whose factors do not tend to 1."""


class PrecisionExhaustedError(SeriesError):
    """A requested coefficient or window lies beyond what is provable."""


class MismatchError(SeriesError):
    """Two routes to the same series disagree at a known exponent."""

    def __init__(self, exponent: int, lhs: int, rhs: int, context: str = ""):
        self.exponent = exponent
        self.lhs = lhs
        self.rhs = rhs
        self.context = context
        where = f" in {context}" if context else ""
        super().__init__(
            f"mismatch{where} at q^{exponent}: {lhs} != {rhs}"
        )


# ---------------------------------------------------------------------------
# dense integer convolution
# ---------------------------------------------------------------------------

_SCHOOLBOOK_LIMIT = 1024


def convolve(a: Sequence[int], b: Sequence[int], out_len: int | None = None) -> list[int]:
    """Exact convolution of two integer coefficient lists.

    Truncates the result to ``out_len`` coefficients when given.  Large
    products are routed through a Kronecker packing: each operand is split
    into its positive and negative parts, packed into a single big integer
    with fixed-width slots, and multiplied with CPython's subquadratic
    bignum multiplication.
    """
    la, lb = len(a), len(b)
    if out_len is None:
        out_len = la + lb - 1 if la and lb else 0
    if out_len <= 0 or not la or not lb:
        return []
    full = min(out_len, la + lb - 1)
    if la * lb <= _SCHOOLBOOK_LIMIT:
        out = [0] * full
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb and i + j < full:
                        out[i + j] += ca * cb
        return out
    ma = max(max(a), -min(a))
    mb = max(max(b), -min(b))
    if ma == 0 or mb == 0:
        return [0] * full
    # slot width: room for sum of min(la, lb) products of bounded magnitude
    bits = ma.bit_length() + mb.bit_length() + min(la, lb).bit_length() + 1
    width = (bits + 7) // 8

    def split(cs: Sequence[int]) -> tuple[int, int]:
        pos = b"".join(
            (c if c > 0 else 0).to_bytes(width, "little") for c in cs
        )
        neg = b"".join(
            (-c if c < 0 else 0).to_bytes(width, "little") for c in cs
        )
        return int.from_bytes(pos, "little"), int.from_bytes(neg, "little")

    pa, na = split(a)
    pb, nb = split(b)
    plus = pa * pb + na * nb
    minus = pa * nb + na * pb
    mask = (1 << (8 * width * full)) - 1
    pbytes = (plus & mask).to_bytes(width * full, "little")
    mbytes = (minus & mask).to_bytes(width * full, "little")
    out = []
    for t in range(full):
        lo = t * width
        hi = lo + width
        out.append(
            int.from_bytes(pbytes[lo:hi], "little")
            - int.from_bytes(mbytes[lo:hi], "little")
        )
    return out


# ---------------------------------------------------------------------------
# truncated Laurent series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedLaurentSeries:
    """Laurent series known exactly for exponents below ``prec``.

    Invariants: ``low <= prec``; ``len(coeffs) == prec - low``; if nonzero,
    ``coeffs[0] != 0`` (so ``low`` is the valuation); the zero-on-window
    series stores ``low == prec`` and an empty tuple.
    """

    low: int
    coeffs: tuple[int, ...]
    prec: int

    # -- constructors -------------------------------------------------------

    @staticmethod
    def make(low: int, coeffs: Iterable[int], prec: int) -> "TruncatedLaurentSeries":
        cs = list(coeffs)
        if len(cs) > prec - low:
            raise ValueError("coefficient list extends beyond the precision window")
        cs.extend([0] * (prec - low - len(cs)))
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        if start == len(cs):
            return TruncatedLaurentSeries(prec, (), prec)
        return TruncatedLaurentSeries(low + start, tuple(cs[start:]), prec)

    @staticmethod
    def zero(prec: int) -> "TruncatedLaurentSeries":
        return TruncatedLaurentSeries(prec, (), prec)

    @staticmethod
    def one(prec: int) -> "TruncatedLaurentSeries":
        return TruncatedLaurentSeries.monomial(1, 0, prec)

    @staticmethod
    def monomial(coefficient: int, exponent: int, prec: int) -> "TruncatedLaurentSeries":
        if coefficient == 0 or exponent >= prec:
            return TruncatedLaurentSeries.zero(prec)
        return TruncatedLaurentSeries.make(exponent, [coefficient], prec)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def valuation(self) -> int | None:
        """Exponent of the lowest known nonzero term, or None if all-zero."""
        return None if self.is_zero() else self.low

    def coefficient(self, exponent: int) -> int:
        if exponent >= self.prec:
            raise PrecisionExhaustedError(
                f"coefficient of q^{exponent} unknown (window ends at {self.prec})"
            )
        if exponent < self.low:
            return 0
        return self.coeffs[exponent - self.low]

    def coefficients(self, lo: int, hi: int) -> list[int]:
        """Known coefficients for exponents lo..hi-1 (hi must be <= prec)."""
        return [self.coefficient(e) for e in range(lo, hi)]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "TruncatedLaurentSeries") -> "TruncatedLaurentSeries":
        prec = min(self.prec, other.prec)
        low = min(self.low, other.low, prec)
        out = [0] * (prec - low)
        for s in (self, other):
            for idx, c in enumerate(s.coeffs):
                e = s.low + idx
                if e < prec:
                    out[e - low] += c
        return TruncatedLaurentSeries.make(low, out, prec)

    def __neg__(self) -> "TruncatedLaurentSeries":
        return TruncatedLaurentSeries(self.low, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other: "TruncatedLaurentSeries") -> "TruncatedLaurentSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedLaurentSeries") -> "TruncatedLaurentSeries":
        # unknown tails first interfere at min(a.prec + b.low, b.prec + a.low)
        prec = min(self.prec + other.low, other.prec + self.low)
        if self.is_zero() or other.is_zero():
            return TruncatedLaurentSeries.zero(prec)
        low = self.low + other.low
        out = convolve(self.coeffs, other.coeffs, prec - low)
        return TruncatedLaurentSeries.make(low, out, prec)

    def scale(self, c: int) -> "TruncatedLaurentSeries":
        if c == 0:
            return TruncatedLaurentSeries.zero(self.prec)
        return TruncatedLaurentSeries(self.low, tuple(c * x for x in self.coeffs), self.prec)

    def shift(self, m: int) -> "TruncatedLaurentSeries":
        """Multiply by q^m (m may be negative)."""
        return TruncatedLaurentSeries(self.low + m, self.coeffs, self.prec + m)

    def invert(self) -> "TruncatedLaurentSeries":
        if self.is_zero():
            raise AllZeroError("cannot invert a series with no known nonzero term")
        lead = self.coeffs[0]
        if lead not in (1, -1):
            raise NotAUnitError(f"lowest coefficient {lead} at q^{self.low} is not a unit")
        v = self.low
        window = self.prec - v
        u = [lead * c for c in self.coeffs]  # u[0] == 1
        inv = [0] * window
        inv[0] = 1
        for m in range(1, window):
            acc = 0
            for t in range(1, m + 1):
                if u[t] and inv[m - t]:
                    acc += u[t] * inv[m - t]
            inv[m] = -acc
        return TruncatedLaurentSeries.make(-v, [lead * c for c in inv], self.prec - 2 * v)

    def divide_by_q_power(self, m: int) -> "TruncatedLaurentSeries":
        """Shift down by q^m; the result may be a genuine Laurent series."""
        return self.shift(-m)

    def divide_exact_by_q_power(self, m: int) -> "TruncatedLaurentSeries":
        """Divide by q^m, demanding that all coefficients below m vanish."""
        if self.prec < m:
            raise PrecisionExhaustedError(
                f"window ends at {self.prec}, cannot certify divisibility by q^{m}"
            )
        if not self.is_zero() and self.low < m:
            raise NotDivisibleError(self.low, self.coeffs[0])
        return self.shift(-m)

    def substitute_q_power(self, m: int) -> "TruncatedLaurentSeries":
        """Replace q by q^m (m >= 1); exponents and the window scale by m."""
        if m < 1:
            raise ValueError("substitution power must be >= 1")
        if self.is_zero():
            return TruncatedLaurentSeries.zero(self.prec * m)
        out = [0] * ((self.prec - 1) * m + 1 - self.low * m)
        for idx, c in enumerate(self.coeffs):
            out[idx * m] = c
        return TruncatedLaurentSeries.make(self.low * m, out, self.prec * m)

    def truncate(self, prec: int) -> "TruncatedLaurentSeries":
        """Narrow the window; never widens it."""
        if prec >= self.prec:
            return self
        keep = max(prec - self.low, 0)
        return TruncatedLaurentSeries.make(min(self.low, prec), self.coeffs[:keep], prec)

    # -- comparison on the provable overlap ---------------------------------

    def first_mismatch(
        self, other: "TruncatedLaurentSeries", through: int | None = None
    ) -> tuple[int, int, int] | None:
        """First exponent where the two known windows disagree, or None.

        Only the overlap of the known windows (optionally capped at
        ``through``) is compared; beyond it nothing can be asserted.
        """
        hi = min(self.prec, other.prec)
        if through is not None:
            hi = min(hi, through + 1)
        lo = min(self.low, other.low, hi)
        for e in range(lo, hi):
            ca = self.coefficient(e)
            cb = other.coefficient(e)
            if ca != cb:
                return (e, ca, cb)
        return None

    def agrees_with(self, other: "TruncatedLaurentSeries", through: int | None = None) -> bool:
        return self.first_mismatch(other, through) is None

    def common_prec(self, other: "TruncatedLaurentSeries") -> int:
        return min(self.prec, other.prec)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        """Decimal-string coefficients so no consumer silently loses exactness."""
        return {
            "low": self.low,
            "prec": self.prec,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "TruncatedLaurentSeries":
        return TruncatedLaurentSeries.make(
            int(data["low"]), [int(c) for c in data["coeffs"]], int(data["prec"])
        )

    def __str__(self) -> str:
        if self.is_zero():
            return f"0 + O(q^{self.prec})"
        parts = []
        for idx, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*q^{self.low + idx}")
            if len(parts) == 8:
                parts.append("...")
                break
        return " + ".join(parts) + f" + O(q^{self.prec})"


def assert_agree(
    lhs: TruncatedLaurentSeries,
    rhs: TruncatedLaurentSeries,
    context: str,
    through: int | None = None,
) -> int:
    """Raise MismatchError on disagreement; return the compared window end."""
    bad = lhs.first_mismatch(rhs, through)
    if bad is not None:
        raise MismatchError(bad[0], bad[1], bad[2], context)
    hi = min(lhs.prec, rhs.prec)
    return hi if through is None else min(hi, through + 1)


# ---------------------------------------------------------------------------
# exact Laurent polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """Exact sparse Laurent polynomial: exponent -> nonzero coefficient."""

    terms: Mapping[int, int]

    @staticmethod
    def from_terms(terms: Mapping[int, int]) -> "LaurentPoly":
        return LaurentPoly({e: c for e, c in terms.items() if c})

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly({})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def monomial(coefficient: int, exponent: int) -> "LaurentPoly":
        return LaurentPoly.from_terms({exponent: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def min_exponent(self) -> int | None:
        return min(self.terms) if self.terms else None

    def max_exponent(self) -> int | None:
        return max(self.terms) if self.terms else None

    def coefficient(self, exponent: int) -> int:
        return self.terms.get(exponent, 0)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_terms(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero()
        if len(self.terms) > 8 and len(other.terms) > 8:
            lo = self.min_exponent() + other.min_exponent()
            a0, a1 = self.min_exponent(), self.max_exponent()
            b0, b1 = other.min_exponent(), other.max_exponent()
            da = [0] * (a1 - a0 + 1)
            for e, c in self.terms.items():
                da[e - a0] = c
            db = [0] * (b1 - b0 + 1)
            for e, c in other.terms.items():
                db[e - b0] = c
            conv = convolve(da, db)
            return LaurentPoly.from_terms({lo + i: c for i, c in enumerate(conv) if c})
        out: dict[int, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly.from_terms(out)

    def scale_shift(self, coefficient: int, exponent: int) -> "LaurentPoly":
        if coefficient == 0:
            return LaurentPoly.zero()
        return LaurentPoly({e + exponent: c * coefficient for e, c in self.terms.items()})

    def mul_series(self, s: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
        """Exact-polynomial times truncated series, with honest precision."""
        if self.is_zero():
            return TruncatedLaurentSeries.zero(s.prec)
        prec = min(s.prec + e for e in self.terms)
        acc = TruncatedLaurentSeries.zero(prec)
        for e, c in sorted(self.terms.items()):
            acc = acc + s.shift(e).scale(c).truncate(prec)
        return acc

    def to_series(self, prec: int) -> TruncatedLaurentSeries:
        lo = min(self.min_exponent() or 0, prec)
        out = [0] * max(prec - lo, 0)
        for e, c in self.terms.items():
            if e < prec:
                out[e - lo] += c
        return TruncatedLaurentSeries.make(lo, out, prec)

    def to_json_dict(self) -> dict:
        return {str(e): str(c) for e, c in sorted(self.terms.items())}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*q^{e}" for e, c in sorted(self.terms.items()))


# ---------------------------------------------------------------------------
# q-Pochhammer products and the modified-distinct-parts normalizer
# ---------------------------------------------------------------------------

def pochhammer(
    exponent: int,
    step: int,
    count: int | None,
    prec: int,
    sign: int = 1,
) -> TruncatedLaurentSeries:
    """Truncated product of (1 - sign*q^(exponent + step*t)) for t < count.

    ``count=None`` means the infinite product, which only converges (as a
    formal series) when the factor exponents strictly increase from a
    positive start; otherwise DivergentProductError is raised.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if count is None:
        if exponent <= 0 or step <= 0:
            raise DivergentProductError(
                f"infinite product with start q^{exponent}, step {step} does not converge"
            )
        count = 0
        while exponent + step * count < prec:
            count += 1
    acc = [0] * prec
    if prec > 0:
        acc[0] = 1
    for t in range(count):
        e = exponent + step * t
        if e >= prec:
            break  # factor is 1 + O(q^prec)
        if e < 0:
            raise ValueError("pochhammer factors must have nonnegative exponents")
        # in-place multiply by (1 - sign*q^e), highest index first
        if e == 0:
            base = 1 - sign
            acc = [c * base for c in acc]
            continue
        for i in range(prec - 1, e - 1, -1):
            acc[i] -= sign * acc[i - e]
    return TruncatedLaurentSeries.make(0, acc, prec)


@lru_cache(maxsize=None)
def f_inverse(prec: int) -> TruncatedLaurentSeries:
    """Inverse of the product of (1 - q^m) over m not congruent to 2 mod 4.

    Its coefficients count partitions into parts not congruent to 2 mod 4;
    this is the common normalizing factor of every shelf series here.
    """
    acc = [0] * prec
    if prec > 0:
        acc[0] = 1
    for m in range(1, prec):
        if m % 4 == 2:
            continue
        for i in range(prec - 1, m - 1, -1):
            acc[i] -= acc[i - m]
    return TruncatedLaurentSeries.make(0, acc, prec).invert()


def jacobi_triple_product_check(z_exponent: int, q_step: int, prec: int) -> int:
    """Compare the alternating theta sum with its infinite-product form.

    Both sides are specialized by the monomial substitution z -> q^z_exponent,
    q -> q^q_step, which keeps every product exponent positive as long as
    |z_exponent| < q_step.  Returns the verified window end; raises
    MismatchError with the first differing coefficient otherwise.
    """
    if q_step < 1 or abs(z_exponent) >= q_step:
        raise ValueError("require q_step >= 1 and |z_exponent| < q_step")
    acc = [0] * prec
    n = 0
    while True:
        e1 = q_step * n * n + z_exponent * n
        if e1 >= prec:
            break
        sgn = -1 if n % 2 else 1
        acc[e1] += sgn
        e2 = e1 + (q_step - z_exponent) * (2 * n + 1)
        if e2 < prec:
            acc[e2] -= sgn
        n += 1
    lhs = TruncatedLaurentSeries.make(0, acc, prec)
    rhs = (
        pochhammer(2 * q_step, 2 * q_step, None, prec)
        * pochhammer(q_step + z_exponent, 2 * q_step, None, prec)
        * pochhammer(q_step - z_exponent, 2 * q_step, None, prec)
    )
    return assert_agree(lhs, rhs, f"triple product z_exp={z_exponent} step={q_step}")
