#!/usr/bin/env python3
"""Run verification suites and collect JSON reports plus a timing table.

Typical usage:

    python scripts/run_verification.py                         # everything, defaults
    python scripts/run_verification.py shelves matrices --k 2..4 --degree 50
    python scripts/run_verification.py all --out-dir reports --top 15

Writes one ``<suite>.json`` per suite when --out-dir is given, prints a
per-suite summary line, and finishes with the slowest individual checks
(timings are measured in memory; they are never part of the JSON, which
stays byte-reproducible).
"""

from __future__ import annotations

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qshelf.report import FAIL, SKIPPED, emit_json
from qshelf.suites import SUITE_NAMES, ConfigError, SuiteConfig, run_suite


def parse_range(text: str, single_low: int | None = None) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return (single_low if single_low is not None else value), value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "suites",
        nargs="*",
        default=["all"],
        help="suites to run (default: all); choices: %s" % ", ".join(SUITE_NAMES),
    )
    parser.add_argument("--k", default="2..4", help="modulus family range, e.g. 3 or 2..5")
    parser.add_argument("--degree", type=int, default=40, help="q-truncation degree")
    parser.add_argument("--shelves", default="0..3", help="shelf range, e.g. 2 or 0..3")
    parser.add_argument("--start-shelf", default="0..1", help="base shelf range for combiners")
    parser.add_argument("--nmax", type=int, default=None, help="partition weight bound")
    parser.add_argument("--out-dir", default=None, help="directory for per-suite JSON reports")
    parser.add_argument("--top", type=int, default=10, help="how many slow checks to list")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    suites = args.suites or ["all"]
    if suites == ["all"]:
        suites = list(SUITE_NAMES[:-1])
    for name in suites:
        if name not in SUITE_NAMES:
            print(f"unknown suite {name!r}; choices: {', '.join(SUITE_NAMES)}", file=sys.stderr)
            return 2

    try:
        cfg = SuiteConfig(
            k_range=parse_range(args.k),
            degree=args.degree,
            shelf_range=parse_range(args.shelves, single_low=0),
            start_range=parse_range(args.start_shelf),
            n_max=args.nmax,
        )
    except ValueError as err:
        print(f"bad range: {err}", file=sys.stderr)
        return 2

    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)

    slow: list[tuple[float, str, str]] = []
    any_failed = False
    wall = time.perf_counter()
    for name in suites:
        try:
            report = run_suite(name, cfg)
        except ConfigError as err:
            print(f"{name:>14}: configuration error: {err}", file=sys.stderr)
            return 2
        counts = report.counts
        any_failed = any_failed or report.failed
        status = "FAIL" if report.failed else "ok"
        print(
            f"{name:>14}: {status:>4}  "
            f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts[SKIPPED]} skipped"
        )
        for rec in report.records:
            slow.append((rec.elapsed, name, rec.check_id))
            if rec.status == FAIL:
                print(f"                [FAIL] {rec.check_id}: {rec.detail}")
        if args.out_dir:
            path = os.path.join(args.out_dir, f"{name}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(emit_json(report))
            print(f"                wrote {path}")
    print(f"total wall time: {time.perf_counter() - wall:.2f}s over {len(slow)} checks")

    slow.sort(reverse=True)
    if args.top > 0 and slow:
        print(f"\nslowest {min(args.top, len(slow))} checks:")
        for elapsed, suite, check_id in slow[: args.top]:
            print(f"  {elapsed * 1000:9.1f} ms  {suite:>14}  {check_id}")

    return 1 if any_failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
