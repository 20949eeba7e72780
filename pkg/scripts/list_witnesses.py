#!/usr/bin/env python3
"""List the partitions (or overpartitions) a shelf series actually counts.

Examples:

    python scripts/list_witnesses.py 3 2 9            # official, shelf 0
    python scripts/list_witnesses.py 3 2 9 --shelf 1  # one shelf up
    python scripts/list_witnesses.py 3 2 9 --ghost    # flipped parity class
    python scripts/list_witnesses.py 3 2 8 --over     # overpartition tensor class
    python scripts/list_witnesses.py 3 2 8 --over --ghost

Each witness is printed as its weakly decreasing part list; overlined
parts carry a trailing tilde.  The count is cross-checked against the
generating-series coefficient before the script reports success.
"""

from __future__ import annotations

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qshelf import partitions


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("k", type=int, help="modulus family (k >= 2)")
    parser.add_argument("i", type=int, help="position within the shelf")
    parser.add_argument("n", type=int, help="weight to enumerate")
    parser.add_argument("--shelf", type=int, default=0, metavar="J", help="shelf index")
    parser.add_argument("--ghost", action="store_true", help="flip the parity condition")
    parser.add_argument(
        "--over", action="store_true",
        help="list the overpartition class (ignores --shelf; weight graded by n)",
    )
    args = parser.parse_args(argv)

    try:
        if args.over:
            found = partitions.overpartition_witnesses(args.k, args.i, args.n, args.ghost)
            grading = partitions.overpartition_gen_fn(args.k, args.i, args.n, args.ghost)
            expected = sum(
                c for (a, x, q), c in grading.items() if q == args.n
            )
            family = "ghost overpartitions" if args.ghost else "overpartitions"
            print(f"{family} for k={args.k} i={args.i} at weight {args.n}:")
            for op in found:
                print(
                    f"  {str(op):<30}  parts={op.num_parts} "
                    f"overlined={op.num_overlined}"
                )
        else:
            conditions = (
                partitions.ghost_conditions(args.k, args.i, args.shelf)
                if args.ghost
                else partitions.official_conditions(args.k, args.i, args.shelf)
            )
            print(conditions.describe())
            found = partitions.witnesses(conditions, args.n)
            series = partitions.gen_fn(conditions, args.n)
            expected = series.coefficient(args.n)
            print(f"witnesses at weight {args.n}:")
            for p in found:
                odd = sum(c for v, c in p.freq.items() if v % 2)
                print(f"  {str(p):<30}  parts={len(p.parts())} odd-parts={odd}")
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    print(f"count: {len(found)}")
    if len(found) != expected:
        print(f"MISMATCH: generating series says {expected}", file=sys.stderr)
        return 1
    print("matches the generating-series coefficient")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
