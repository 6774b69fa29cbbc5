"""Command-line entry point: ``ckp <command> [options]``.

Every command prints a report (JSON by default) and exits 0 only when all of
its checks pass.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core import FockVector, parse_half
from .suites import (
    Report,
    bosonize_suite,
    char_suite,
    hirota_suite,
    hwv_suite,
    identities_suite,
    symplectic_suite,
    table_lines,
)

COMMANDS = ("hwv", "char", "identities", "symplectic-check", "bosonize-check", "hirota")


@dataclass(frozen=True)
class RunConfig:
    command: str
    max_degree: int = 13  # doubled
    series_order: int = 20  # doubled
    max_mode: int = 6  # doubled
    max_weight: int = 4
    hirota_degree: int = 4  # doubled
    bivariate: bool = False
    tau: str = "vacuum"
    format: str = "json"
    parallel: bool = False
    timings: bool = False
    output_path: Path | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("json", "table"):
            raise ValueError(f"format must be json or table, got {self.format!r}")
        for name in ("max_degree", "series_order", "max_mode", "max_weight", "hirota_degree"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


def _half(text: str) -> int:
    try:
        value = parse_half(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid half-integer literal {text!r}: {exc}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"bound must be nonnegative, got {text!r}")
    return value


def _whole(text: str) -> int:
    value = _half(text)
    if value % 2:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return value


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _tau(text: str) -> FockVector:
    if text == "vacuum":
        return FockVector.vacuum()
    try:
        return FockVector.from_json(json.loads(text))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"--tau must be 'vacuum' or a JSON vector, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--parallel", action="store_true", help="fan independent blocks out to worker processes")
    common.add_argument("--output", type=Path, default=None, metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--timings", action="store_true", help="include runtime_ms per check (reports stop being byte-stable)")

    parser = argparse.ArgumentParser(prog="ckp", description="Exact checks for the CKP Fock space and its bosonizations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("hwv", parents=[common], help="highest weight vectors per degree")
    p.add_argument("--max-degree", type=_half, default=13, metavar="D", help="largest degree, e.g. 13/2")

    p = sub.add_parser("char", parents=[common], help="Fock space character, product formula vs enumeration")
    p.add_argument("--order", type=_half, default=20, metavar="Q")
    p.add_argument("--bivariate", action="store_true", help="keep track of the charge variable z")

    p = sub.add_parser("identities", parents=[common], help="q-series identities")
    p.add_argument("--order", type=_half, default=50, metavar="Q")

    p = sub.add_parser("symplectic-check", parents=[common], help="symplectic fermion suites")
    p.add_argument("--max-degree", type=_half, default=6, metavar="D")
    p.add_argument("--max-mode", type=_whole, default=6, metavar="N")

    p = sub.add_parser("bosonize-check", parents=[common], help="bosonized realization suites")
    p.add_argument("--max-weight", type=_count, default=4, metavar="W")
    p.add_argument("--max-mode", type=_half, default=5, metavar="A")
    p.add_argument("--max-degree", type=_half, default=6, metavar="D", help="degree bound for intertwiner checks")
    p.add_argument("--hirota-degree", type=_half, default=4, metavar="D")

    p = sub.add_parser("hirota", parents=[common], help="Hirota residue S(tau (x) tau)")
    p.add_argument("--tau", default="vacuum", help="'vacuum' or a vector in the JSON exchange format")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    extra: dict = {}
    if args.command in ("hwv", "symplectic-check", "bosonize-check"):
        extra["max_degree"] = args.max_degree
    if args.command in ("char", "identities"):
        extra["series_order"] = args.order
    if args.command in ("symplectic-check", "bosonize-check"):
        extra["max_mode"] = args.max_mode
    if args.command == "bosonize-check":
        extra["max_weight"] = args.max_weight
        extra["hirota_degree"] = args.hirota_degree
    if args.command == "char":
        extra["bivariate"] = args.bivariate
    if args.command == "hirota":
        extra["tau"] = args.tau
    return RunConfig(
        command=args.command,
        format=args.format,
        parallel=args.parallel,
        timings=args.timings,
        output_path=args.output,
        **extra,
    )


def run(config: RunConfig) -> Report:
    c = config.command
    if c == "hwv":
        return hwv_suite(config.max_degree, config.parallel)
    if c == "char":
        return char_suite(config.series_order, config.bivariate)
    if c == "identities":
        return identities_suite(config.series_order)
    if c == "symplectic-check":
        return symplectic_suite(config.max_degree, config.max_mode // 2)
    if c == "bosonize-check":
        return bosonize_suite(config.max_weight, config.max_mode, config.max_degree, config.hirota_degree, config.parallel)
    return hirota_suite(_tau(config.tau))


def render(report: Report, config: RunConfig) -> str:
    if config.format == "table":
        return "\n".join(table_lines(report)) + "\n"
    return json.dumps(report.to_json(config.timings), indent=2, ensure_ascii=False) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        report = run(config)
    except ValueError as exc:
        parser.error(str(exc))
    text = render(report, config)
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.write_text(text, encoding="utf-8")
    return 0 if report.passed else 1

