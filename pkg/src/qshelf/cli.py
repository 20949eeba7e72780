"""Command-line verification harness.

Grammar::

    verify <suite> [--k A..B] [--degree N] [--shelves J | J0..J1]
                   [--start-shelf J | J0..J1] [--nmax M]
                   [--format text|json] [--out PATH] [--config PATH]
                   [--corrupt TAG@EXP[:DELTA][:k=..,j=..]]

Option precedence is command line over config file over built-in
defaults.  The config file is flat ``key = value`` lines; ``#`` starts a
comment and dashes and underscores in keys are interchangeable.

Exit codes: 0 when every executed check passes (skips do not fail a
run), 1 when any check fails, 2 for a rejected configuration.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import faults
from .report import emit
from .suites import SUITE_NAMES, ConfigError, SuiteConfig, run_suite

_DEFAULTS: dict[str, str] = {
    "k": "3..3",
    "degree": "40",
    "shelves": "0..3",
    "start-shelf": "0..1",
    "format": "text",
}

_CANONICAL_KEYS = {
    "k": "k",
    "degree": "degree",
    "shelves": "shelves",
    "start-shelf": "start-shelf",
    "n-max": "nmax",
    "nmax": "nmax",
    "format": "format",
    "out": "out",
}


def _parse_range(text: str, label: str, single_low: int | None = None) -> tuple[int, int]:
    """Parse ``A..B`` or a single integer.

    A single integer means ``N..N`` except where a natural lower end
    exists (``--shelves 3`` counts from the ground up, so it means
    ``0..3``).
    """
    text = text.strip()
    try:
        if ".." in text:
            lo_text, _, hi_text = text.partition("..")
            return int(lo_text), int(hi_text)
        value = int(text)
    except ValueError:
        raise ConfigError(f"cannot parse {label} range {text!r}; expected N or A..B")
    if single_low is not None:
        return min(single_low, value), value
    return value, value


def _parse_int(text: str, label: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"cannot parse {label} value {text!r}; expected an integer")


def read_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` file with ``#`` comments."""
    out: dict[str, str] = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror or exc}")
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower().replace("_", "-")
        value = value.strip()
        if key not in _CANONICAL_KEYS:
            valid = ", ".join(sorted(set(_CANONICAL_KEYS) - {"nmax"}))
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}; valid keys: {valid}")
        if not value:
            raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
        out[_CANONICAL_KEYS[key]] = value
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="run exact verification suites over the shelf machinery",
    )
    parser.add_argument("suite", choices=SUITE_NAMES, help="which suite to run")
    parser.add_argument("--k", help="modulus family, N or A..B (default 3)")
    parser.add_argument("--degree", help="q-series truncation degree (default 40)")
    parser.add_argument(
        "--shelves", help="shelves to visit, M (meaning 0..M) or J0..J1 (default 0..3)"
    )
    parser.add_argument(
        "--start-shelf", help="base shelves for the combiner matrices, N or A..B (default 0..1)"
    )
    parser.add_argument(
        "--nmax",
        help="enumeration bound for counting oracles "
        "(default 20 for partitions, 14 for overpartitions)",
    )
    parser.add_argument("--format", choices=("text", "json"), help="report format (default text)")
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument(
        "--corrupt",
        help="inject a single-coefficient fault, TAG@EXP[:DELTA][:k=..,j=..,i=..]",
    )
    return parser


def _resolve(args: argparse.Namespace) -> tuple[SuiteConfig, str, str | None]:
    layers: dict[str, str] = dict(_DEFAULTS)
    if args.config:
        layers.update(read_config_file(args.config))
    cli_values = {
        "k": args.k,
        "degree": args.degree,
        "shelves": args.shelves,
        "start-shelf": args.start_shelf,
        "nmax": args.nmax,
        "format": args.format,
        "out": args.out,
    }
    layers.update({key: value for key, value in cli_values.items() if value is not None})

    fmt = layers["format"]
    if fmt not in ("text", "json"):
        raise ConfigError(f"format must be text or json, got {fmt!r}")
    cfg = SuiteConfig(
        k_range=_parse_range(layers["k"], "k"),
        degree=_parse_int(layers["degree"], "degree"),
        shelf_range=_parse_range(layers["shelves"], "shelves", single_low=0),
        start_range=_parse_range(layers["start-shelf"], "start-shelf"),
        n_max=_parse_int(layers["nmax"], "nmax") if "nmax" in layers else None,
    )
    return cfg, fmt, layers.get("out")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg, fmt, out_path = _resolve(args)
        fault = faults.parse_fault(args.corrupt) if args.corrupt else None
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    if fault is not None:
        faults.install(fault)
    try:
        report = run_suite(args.suite, cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    finally:
        if fault is not None:
            faults.clear()

    rendered = emit(report, fmt)
    if out_path:
        try:
            Path(out_path).write_text(rendered)
        except OSError as exc:
            print(f"cannot write {out_path}: {exc.strerror or exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(rendered)
    return 1 if report.failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
