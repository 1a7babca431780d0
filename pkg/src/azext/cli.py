"""Command line interface: ``azext check <config>`` and ``azext presets``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import load_config, load_points_file, preset_names
from .errors import AzextError, InputError
from .pipeline import StageError, run_job

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="azext",
        description="Decide whether an Azumaya algebra with C2-action on a character curve extends over excluded points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a job config (file path or bundled preset name)")
    check.add_argument("config", help="TOML config file, or the name of a bundled preset")
    check.add_argument("--json", metavar="PATH", help="write the JSON report here; '-' prints it to stdout instead of the text report")
    check.add_argument(
        "--points",
        metavar="auto|FILE",
        help="'auto' to use the reducibility locus, or a TOML file with a [[points]] array",
    )
    check.add_argument("--precision", type=int, metavar="N", help="initial series precision")
    check.add_argument("--precision-cap", type=int, metavar="N", help="maximum series precision")
    check.add_argument("--verbose", "-v", action="store_true", help="log pipeline stages to stderr")

    sub.add_parser("presets", help="list bundled presets")
    return parser


def _exit_code(exc: AzextError) -> int:
    inner = exc.error if isinstance(exc, StageError) else exc
    return EXIT_INPUT if isinstance(inner, InputError) else EXIT_COMPUTE


def _check(args) -> int:
    config = load_config(args.config)
    if args.precision is not None:
        config.precision = args.precision
    if args.precision_cap is not None:
        config.cap = args.precision_cap
    if config.precision < 1 or config.cap < config.precision:
        raise InputError("precision must satisfy 1 <= precision <= cap")
    points = None
    if args.points == "auto":
        config.points = "auto"
    elif args.points:
        points = load_points_file(args.points, config.curve)
    report = run_job(config, points)
    if args.json == "-":
        # stdout carries only the JSON so it can be piped
        sys.stdout.write(report.to_json())
        return EXIT_OK
    sys.stdout.write(report.to_text())
    if args.json:
        Path(args.json).write_text(report.to_json())
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command == "presets":
        for name in preset_names():
            print(name)
        return EXIT_OK
    try:
        return _check(args)
    except AzextError as exc:
        print(f"azext: error: {exc}", file=sys.stderr)
        return _exit_code(exc)
    except OSError as exc:
        print(f"azext: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
