"""Brute-force partition and overpartition oracles.

Everything here counts by direct enumeration and predicate filtering, with
no series arithmetic at all, so these counts are an independent route
against which the analytic machinery is checked coefficient by
coefficient.

Frequency conventions: ``f(b)`` is the multiplicity of the part ``b``
(``f(0) == 0`` always), ``vodd(t)`` counts odd parts that are at most
``2t``.  Predicates only ever consult part sizes up to two beyond the
largest part, which a test enforces with a recording frequency map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterator, Mapping

from .series import TruncatedLaurentSeries


@dataclass(frozen=True)
class Partition:
    """Integer partition stored as part -> multiplicity."""

    freq: Mapping[int, int]
    n: int

    def f(self, part: int) -> int:
        return self.freq.get(part, 0)

    @cached_property
    def max_part(self) -> int:
        return max(self.freq) if self.freq else 0

    @cached_property
    def min_part(self) -> int | None:
        return min(self.freq) if self.freq else None

    @cached_property
    def _odd_prefix(self) -> tuple[int, ...]:
        limit = self.max_part // 2 + 2
        pre = [0] * (limit + 1)
        for b, c in self.freq.items():
            if b % 2:
                idx = (b + 1) // 2  # smallest t with 2t >= b
                if idx <= limit:
                    pre[idx] += c
        acc = 0
        for t in range(limit + 1):
            acc += pre[t]
            pre[t] = acc
        return tuple(pre)

    def vodd(self, t: int) -> int:
        """Number of odd parts of size at most 2t."""
        pre = self._odd_prefix
        return pre[t] if t < len(pre) else pre[-1]

    @cached_property
    def has_repeated_odd(self) -> bool:
        return any(b % 2 and c > 1 for b, c in self.freq.items())

    def parts(self) -> tuple[int, ...]:
        out: list[int] = []
        for b in sorted(self.freq, reverse=True):
            out.extend([b] * self.freq[b])
        return tuple(out)

    def __str__(self) -> str:
        return "+".join(map(str, self.parts())) if self.freq else "(empty)"


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, largest part first within each partition."""
    if n < 0:
        return ()
    out: list[Partition] = []

    def rec(remaining: int, cap: int, acc: dict[int, int]) -> None:
        if remaining == 0:
            out.append(Partition(dict(acc), n))
            return
        for part in range(min(cap, remaining), 0, -1):
            for mult in range(1, remaining // part + 1):
                acc[part] = mult
                rec(remaining - part * mult, part - 1, acc)
            del acc[part]

    rec(n, n, {})
    return tuple(out)


def enumerate_partitions(n: int) -> Iterator[Partition]:
    return iter(partitions_of(n))


# ---------------------------------------------------------------------------
# condition families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionSet:
    """A named membership predicate over partitions."""

    name: str
    params: tuple[tuple[str, int], ...]
    accepts: Callable[[Partition], bool]

    def describe(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


def _shelf_core(
    p: Partition, k: int, i: int, J: int, parity_target: int, check_parity: bool
) -> bool:
    # distinct odd parts
    if p.has_repeated_odd:
        return False
    # smallest part must clear the shelf floor
    if p.min_part is not None and p.min_part <= 2 * J:
        return False
    get = p.freq.get
    # band just above the floor is narrowed by the position index
    if get(2 * J + 1, 0) + get(2 * J + 2, 0) > k - i:
        return False
    for t in range(0, p.max_part // 2 + 2):
        trip = get(2 * t, 0) + get(2 * t + 1, 0) + get(2 * t + 2, 0)
        if trip > k - 1:
            return False
        if check_parity and trip == k - 1:
            load = t * get(2 * t, 0) + (t + 1) * (get(2 * t + 1, 0) + get(2 * t + 2, 0))
            if (load - parity_target - p.vodd(t)) % 2:
                return False
    return True


def official_conditions(k: int, i: int, J: int, check_parity: bool = True) -> ConditionSet:
    """Sum-side conditions for the official series at shelf J, position i.

    Distinct odds, the capped band above 2J, triple-frequency caps with the
    parity rule on saturated triples, and all parts above 2J.  At J=0 this
    is the sum side of the unrefined identities.
    """
    if not (k >= 2 and 1 <= i <= k and J >= 0):
        raise ValueError(f"bad official condition parameters k={k} i={i} J={J}")
    target = (k - 1) * J + k - i

    def accepts(p: Partition) -> bool:
        return _shelf_core(p, k, i, J, target, check_parity)

    return ConditionSet("official", (("k", k), ("i", i), ("J", J)), accepts)


def ghost_conditions(k: int, i: int, J: int) -> ConditionSet:
    """Ghost variant: identical except the saturated-triple parity flips.

    Canonically stated for 2 <= i <= k; i = 1 is accepted as the natural
    extension of the same predicate.
    """
    if not (k >= 2 and 1 <= i <= k and J >= 0):
        raise ValueError(f"bad ghost condition parameters k={k} i={i} J={J}")
    target = (k - 1) * J + k - i + 1

    def accepts(p: Partition) -> bool:
        return _shelf_core(p, k, i, J, target, True)

    return ConditionSet("ghost", (("k", k), ("i", i), ("J", J)), accepts)


def h_conditions(k: int, i: int, l: int, j: int, J: int) -> ConditionSet:
    """Conditions matched by the (i, l) combiner polynomial at level j > J."""
    if not (k >= 2 and 1 <= i <= k and 1 <= l <= k and j >= J + 1 and J >= 0):
        raise ValueError(f"bad h condition parameters k={k} i={i} l={l} j={j} J={J}")
    target = (k - 1) * J + k - i
    want_even = (l + (k - 1) * (j - J) - i) % 2 == 0
    allowed_top = {x for x in (l - 1, l - 2) if x >= 0}

    def accepts(p: Partition) -> bool:
        if p.max_part > 2 * j:
            return False
        if p.freq.get(2 * j, 0) not in allowed_top:
            return False
        if (p.vodd(j) % 2 == 0) != want_even:
            return False
        return _shelf_core(p, k, i, J, target, True)

    return ConditionSet(
        "h", (("k", k), ("i", i), ("l", l), ("j", j), ("J", J)), accepts
    )


def h12_conditions(k: int, i: int, j: int, J: int) -> ConditionSet:
    """Conditions for the sum of the first two combiner columns at level j.

    The union of the two column classes: the top even part 2j absent with
    either parity of odd parts, or present exactly once with the parity
    required by the second column.
    """
    if not (k >= 2 and 1 <= i <= k and j >= J + 1 and J >= 0):
        raise ValueError(f"bad h12 condition parameters k={k} i={i} j={j} J={J}")
    target = (k - 1) * J + k - i
    want_even_if_top = (2 + (k - 1) * (j - J) - i) % 2 == 0

    def accepts(p: Partition) -> bool:
        if p.max_part > 2 * j:
            return False
        top = p.freq.get(2 * j, 0)
        if top > 1:
            return False
        if top == 1 and (p.vodd(j) % 2 == 0) != want_even_if_top:
            return False
        return _shelf_core(p, k, i, J, target, True)

    return ConditionSet("h12", (("k", k), ("i", i), ("j", j), ("J", J)), accepts)


def product_side_conditions(k: int, i: int) -> ConditionSet:
    """Allowed-parts interpretation of the product form, for 2 <= i <= k.

    Even parts are multiples of 4 not divisible by 8k-4; odd parts avoid
    two residue classes mod 4k-2; parts in the class of 2k-1 are distinct.
    """
    if not (k >= 2 and 2 <= i <= k):
        raise ValueError(f"bad product-side parameters k={k} i={i}")
    mod = 4 * k - 2
    banned = {(2 * k - 2 * i + 1) % mod, (2 * k + 2 * i - 3) % mod}
    single = (2 * k - 1) % mod

    def accepts(p: Partition) -> bool:
        for b, c in p.freq.items():
            if b % 2 == 0:
                if b % 4 != 0 or b % (8 * k - 4) == 0:
                    return False
            else:
                r = b % mod
                if r in banned:
                    return False
                if r == single and c > 1:
                    return False
        return True

    return ConditionSet("product", (("k", k), ("i", i)), accepts)


def gen_fn(conditions: ConditionSet, n_max: int) -> TruncatedLaurentSeries:
    """Counting generating function of a condition set through degree n_max."""
    counts = [
        sum(1 for p in partitions_of(n) if conditions.accepts(p))
        for n in range(n_max + 1)
    ]
    return TruncatedLaurentSeries.make(0, counts, n_max + 1)


def witnesses(conditions: ConditionSet, n: int) -> list[Partition]:
    """Partitions of n matching the condition set (for mismatch debugging)."""
    return [p for p in partitions_of(n) if conditions.accepts(p)]


def h_oracle(k: int, i: int, l: int, j: int, J: int, n_max: int) -> TruncatedLaurentSeries:
    return gen_fn(h_conditions(k, i, l, j, J), n_max)


def h12_oracle(k: int, i: int, j: int, J: int, n_max: int) -> TruncatedLaurentSeries:
    return gen_fn(h12_conditions(k, i, j, J), n_max)


# ---------------------------------------------------------------------------
# overpartitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Overpartition:
    """Overpartition: plain multiplicities plus a set of overlined values."""

    freq: Mapping[int, int]
    overlined: frozenset[int]
    n: int

    @cached_property
    def max_part(self) -> int:
        vals = set(self.freq) | self.overlined
        return max(vals) if vals else 0

    @cached_property
    def num_parts(self) -> int:
        return sum(self.freq.values()) + len(self.overlined)

    @property
    def num_overlined(self) -> int:
        return len(self.overlined)

    def vover(self, l: int) -> int:
        """Number of overlined parts of size at most l."""
        return sum(1 for v in self.overlined if v <= l)

    def parts(self) -> tuple[str, ...]:
        out: list[str] = []
        for v in sorted(set(self.freq) | self.overlined, reverse=True):
            if v in self.overlined:
                out.append(f"{v}~")
            out.extend([str(v)] * self.freq.get(v, 0))
        return tuple(out)

    def __str__(self) -> str:
        return "+".join(self.parts()) if self.parts() else "(empty)"


@lru_cache(maxsize=None)
def overpartitions_of(n: int) -> tuple[Overpartition, ...]:
    if n < 0:
        return ()
    out: list[Overpartition] = []

    def rec(remaining: int, cap: int, freq: dict[int, int], over: set[int]) -> None:
        if remaining == 0:
            out.append(Overpartition(dict(freq), frozenset(over), n))
            return
        for v in range(min(cap, remaining), 0, -1):
            maxtot = remaining // v
            for o in (0, 1):
                if o:
                    over.add(v)
                for extra in range(1 - o, maxtot - o + 1):
                    if extra:
                        freq[v] = extra
                    rec(remaining - v * (extra + o), v - 1, freq, over)
                    if extra:
                        del freq[v]
                if o:
                    over.discard(v)

    rec(n, n, {}, set())
    return tuple(out)


def enumerate_overpartitions(n: int) -> Iterator[Overpartition]:
    return iter(overpartitions_of(n))


def overpartition_accepts(op: Overpartition, k: int, i: int, ghost: bool) -> bool:
    """Frequency conditions on overpartitions for the trivariate series.

    Ones (plain or overlined) are capped at i-1; for every l >= 0 the count
    f(l) + f(l+1) + [l+1 overlined] is capped at k-1, and saturated pairs
    obey a parity rule driven by the number of overlined parts up to l.
    The ghost flag selects which parity the saturated pairs must hit.

    The window at l = 0 (where f(0) = 0, so the pair is just the count of
    ones) matters: under the cap on ones it is vacuous for the official
    parity, but for the ghost parity at i = k it excludes overpartitions
    with exactly k-1 ones, which the series genuinely omits.
    """
    get = op.freq.get
    over = op.overlined
    if get(1, 0) + (1 in over) > i - 1:
        return False
    base = i if ghost else i + 1
    for l in range(0, op.max_part + 1):
        pair = get(l, 0) + get(l + 1, 0) + (l + 1 in over)
        if pair > k - 1:
            return False
        if pair == k - 1:
            load = l * get(l, 0) + (l + 1) * (get(l + 1, 0) + (l + 1 in over))
            if (load - base - op.vover(l)) % 2:
                return False
    return True


def overpartition_gen_fn(
    k: int, i: int, n_max: int, ghost: bool
) -> dict[tuple[int, int, int], int]:
    """Tensor of counts keyed (overlined, parts, weight) through weight n_max."""
    out: dict[tuple[int, int, int], int] = {}
    for n in range(n_max + 1):
        for op in overpartitions_of(n):
            if overpartition_accepts(op, k, i, ghost):
                key = (op.num_overlined, op.num_parts, n)
                out[key] = out.get(key, 0) + 1
    return out


def overpartition_witnesses(k: int, i: int, n: int, ghost: bool) -> list[Overpartition]:
    return [op for op in overpartitions_of(n) if overpartition_accepts(op, k, i, ghost)]
