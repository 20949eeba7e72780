"""Deliberate single-coefficient corruption hook.

The verification harness must prove it can actually detect a wrong
coefficient, so every computation route passes its result through
``tweak`` before returning.  When a fault is installed and its tag and
parameters match, exactly one coefficient is perturbed; otherwise the
series passes through untouched.  Production runs keep the hook empty.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field

from .series import TruncatedLaurentSeries


@dataclass(frozen=True)
class Fault:
    tag: str
    exponent: int
    delta: int = 1
    match: tuple[tuple[str, int], ...] = ()

    def matches(self, tag: str, ids: dict[str, int]) -> bool:
        if tag != self.tag:
            return False
        return all(ids.get(key) == val for key, val in self.match)


_active: list[Fault] = []


def install(fault: Fault) -> None:
    _active.append(fault)


def clear() -> None:
    _active.clear()


def active() -> tuple[Fault, ...]:
    return tuple(_active)


@contextmanager
def injected(fault: Fault):
    install(fault)
    try:
        yield
    finally:
        clear()


def tweak(tag: str, series: TruncatedLaurentSeries, **ids: int) -> TruncatedLaurentSeries:
    """Return the series, corrupted at one exponent if a matching fault is set."""
    if not _active:
        return series
    for fault in _active:
        if fault.matches(tag, ids) and fault.exponent < series.prec:
            bump = TruncatedLaurentSeries.monomial(
                fault.delta, fault.exponent, series.prec
            )
            return series + bump
    return series


def parse_fault(text: str) -> Fault:
    """Parse ``tag@exponent[:delta][:k=2,j=1,i=3]`` into a Fault."""
    pieces = text.split(":")
    head = pieces[0]
    if "@" not in head:
        raise ValueError(f"fault spec {text!r} needs tag@exponent")
    tag, _, exp = head.partition("@")
    delta = 1
    match: list[tuple[str, int]] = []
    for piece in pieces[1:]:
        if "=" in piece:
            for kv in piece.split(","):
                key, _, val = kv.partition("=")
                match.append((key.strip(), int(val)))
        else:
            delta = int(piece)
    return Fault(tag=tag.strip(), exponent=int(exp), delta=delta, match=tuple(match))
