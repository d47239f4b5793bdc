"""Batch command-line interface.

    qdm <command> --scenario <path> [--format csv|json|svg] [--out <path>] [--seed N]
    qdm serve [--host H] [--port N]

All configuration is explicit; no environment variables are read. Scenario
validation failures exit with status 2 and one located diagnostic per line
on stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from ._version import __version__
from .runner import COMMANDS, run
from .scenario import ScenarioError, load_scenario
from .service import serve
from .tables import emit


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdm",
        description="Quantitative decision-making calculations for clinical study design.")
    parser.add_argument("--version", action="version", version=f"qdm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for command in COMMANDS:
        p = sub.add_parser(command, help=f"run the {command} calculation")
        p.add_argument("--scenario", required=True, help="path to a scenario JSON document")
        p.add_argument("--format", choices=("csv", "json", "svg"), default="json",
                       help="output format (default: json)")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--seed", type=int, help="override the scenario's Monte Carlo seed")
    p = sub.add_parser("serve", help="run the JSON-over-HTTP calculation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8645)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        print(f"qdm {__version__} serving on http://{args.host}:{args.port}", file=sys.stderr)
        try:
            serve(args.host, args.port)
        except KeyboardInterrupt:
            pass
        return 0
    try:
        scenario = load_scenario(args.scenario)
        if args.seed is not None:
            if scenario.mc is None:
                print("error: --seed needs an mc section in the scenario", file=sys.stderr)
                return 2
            scenario = scenario.with_seed(args.seed)
        data = emit(run(args.command, scenario), args.format)
    except ScenarioError as exc:
        for diagnostic in exc.diagnostics:
            print(f"error: {diagnostic}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
