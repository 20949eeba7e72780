#!/usr/bin/env python3
"""Tabulate the leading-term valuations across the shelf grid.

For every series on shelves j_lo..j_hi the table shows val(series - 1),
i.e. the first exponent where the series departs from 1, next to the
threshold it is expected to clear (2j+1 off phase, 2j+3 in phase at
i = k; ghosts always 2j+1).  A ``!`` marks a violation, ``>=N`` means
the window ended before any deviation appeared (valuation at least N).

    python scripts/valuation_table.py --k 2..5 --shelves 0..4 --prec 40
"""

from __future__ import annotations

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qshelf.shelves import empirical_hypothesis_check


def parse_range(text: str, single_low: int | None = None) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return (single_low if single_low is not None else value), value


def cell(k: int, j: int, i: int, prec: int, ghost: bool) -> str:
    res = empirical_hypothesis_check(k, j, i, prec, ghost=ghost)
    if not res.certified:
        return f">={res.valuation}?"
    text = f">={res.valuation}" if res.valuation >= prec else str(res.valuation)
    if not res.ok:
        text += "!"
    return f"{text}/{res.threshold}"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", default="2..5", help="modulus family range")
    parser.add_argument("--shelves", default="0..4", help="shelf range")
    parser.add_argument("--prec", type=int, default=40, help="truncation window")
    args = parser.parse_args(argv)

    k_lo, k_hi = parse_range(args.k)
    j_lo, j_hi = parse_range(args.shelves, single_low=0)
    violations = 0

    for k in range(k_lo, k_hi + 1):
        print(f"\nk = {k}  (columns are positions; each cell is valuation/threshold)")
        width = 9
        header = "  j  " + "".join(f"{f'i={i}':>{width}}" for i in range(1, k + 1))
        print(header + "   | ghosts " + "".join(f"{f'i={i}':>{width}}" for i in range(2, k + 1)))
        for j in range(j_lo, j_hi + 1):
            officials = []
            for i in range(1, k + 1):
                text = cell(k, j, i, args.prec, False)
                violations += text.count("!")
                officials.append(f"{text:>{width}}")
            ghosts = []
            for i in range(2, k + 1):
                text = cell(k, j, i, args.prec, True)
                violations += text.count("!")
                ghosts.append(f"{text:>{width}}")
            print(f"  {j:<3}" + "".join(officials) + "   |        " + "".join(ghosts))

    if violations:
        print(f"\n{violations} threshold violations", file=sys.stderr)
        return 1
    print("\nall valuations clear their thresholds")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
