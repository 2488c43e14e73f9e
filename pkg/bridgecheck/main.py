"""
BRIDGEcheck - command-line front end.

Runs the structure-aware sparsification experiments end-to-end, reads and
writes the edge-list format and emits CSV/JSON result tables with a run
manifest next to each.

Commands:
- resistance GRAPH_FILE : effective-resistance dump, Foster check, objective totals
- experiment NAME       : barbell | chain | phase | dynamics
- all                   : all four experiments into a timestamped directory
- generate NAME         : write a built-in instance as edge-list + frequencies
- gap NAME              : per-edge frequency versus resistance table
- replay MANIFEST       : re-run a recorded experiment

Exit codes: 0 success, 1 runtime or domain error, 2 usage error.
"""

import argparse
import logging
import sys
from typing import List, Optional

import orjson
from pydantic import ValidationError

from . import __version__
from .commands import (
    EXPERIMENT_NAMES,
    ExperimentOverrides,
    cmd_all,
    cmd_experiment,
    cmd_gap,
    cmd_generate,
    cmd_replay,
    cmd_resistance,
)
from .config import settings
from .errors import BridgecheckError
from .graph import INSTANCE_NAMES
from .models import ErrorResponse

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=settings.OUTPUT_DIR, help="Output directory")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bridgecheck",
        description="Structure-aware graph sparsification experiments",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    parser.add_argument(
        "--json-errors", action="store_true", help="Print failures as a JSON object on stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    resistance = sub.add_parser("resistance", help="Effective-resistance dump of a graph file")
    resistance.add_argument("graph_file")
    resistance.add_argument("--lambda", dest="lam", type=float, default=settings.DEFAULT_LAMBDA)
    resistance.add_argument("--out", default=None, help="Write the dump here instead of stdout")
    resistance.add_argument(
        "--freq", default=None, help="Per-edge frequency file; also print the objective totals"
    )

    experiment = sub.add_parser("experiment", help="Run one experiment")
    experiment.add_argument("name", choices=EXPERIMENT_NAMES)
    experiment.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    experiment.add_argument("--trials", type=int)
    experiment.add_argument("--rho", type=float)
    experiment.add_argument("--lambda", dest="lam", type=float)
    experiment.add_argument("--k-max", dest="k_max", type=int)
    experiment.add_argument("--jobs", type=int)
    experiment.add_argument("--epsilon", type=float)
    experiment.add_argument("--omega", type=float)
    experiment.add_argument("--steps", type=int)
    _add_output_flags(experiment)

    run_all = sub.add_parser("all", help="Full reproduction bundle")
    run_all.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    run_all.add_argument("--trials", type=int)
    run_all.add_argument("--jobs", type=int)
    _add_output_flags(run_all)

    generate = sub.add_parser("generate", help="Write a built-in instance as files")
    generate.add_argument("name", choices=INSTANCE_NAMES)
    generate.add_argument("--k", type=int, default=1, help="Bridge thickness (visible only)")
    generate.add_argument("--out", default=settings.OUTPUT_DIR)

    gap = sub.add_parser("gap", help="Frequency versus resistance per edge")
    gap.add_argument("name", choices=INSTANCE_NAMES)
    gap.add_argument("--lambda", dest="lam", type=float, default=settings.DEFAULT_LAMBDA)
    _add_output_flags(gap)

    replay = sub.add_parser("replay", help="Re-run an experiment from its manifest")
    replay.add_argument("manifest")
    replay.add_argument("--out", default=settings.OUTPUT_DIR)
    replay.add_argument("--jobs", type=int, help="Worker processes (results do not depend on it)")
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr, force=True)


def _dispatch(args: argparse.Namespace) -> None:
    if args.command == "resistance":
        cmd_resistance(args.graph_file, lam=args.lam, out=args.out, freq_file=args.freq)
    elif args.command == "experiment":
        overrides = ExperimentOverrides(
            trials=args.trials,
            rho=args.rho,
            lam=args.lam,
            seed=args.seed,
            k_max=args.k_max,
            jobs=args.jobs,
            epsilon=args.epsilon,
            omega=args.omega,
            steps=args.steps,
        )
        cmd_experiment(args.name, overrides, out=args.out, fmt=args.fmt)
    elif args.command == "all":
        cmd_all(seed=args.seed, out=args.out, fmt=args.fmt, trials=args.trials, jobs=args.jobs)
    elif args.command == "generate":
        cmd_generate(args.name, out=args.out, k=args.k)
    elif args.command == "gap":
        cmd_gap(args.name, lam=args.lam, out=args.out, fmt=args.fmt)
    elif args.command == "replay":
        cmd_replay(args.manifest, out=args.out, jobs=args.jobs)


def _report(error: Exception, exit_code: int, json_errors: bool) -> int:
    detail = str(error)
    logger.error(f"{type(error).__name__}: {detail}")
    if json_errors:
        payload = ErrorResponse(error=type(error).__name__, detail=detail, exit_code=exit_code)
        sys.stderr.write(orjson.dumps(payload.model_dump()).decode() + "\n")
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` if None

    Returns:
        int: Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return int(exc.code or EXIT_OK)

    configure_logging(args.verbose, args.quiet)
    try:
        _dispatch(args)
    except ValidationError as exc:
        return _report(exc, EXIT_USAGE, args.json_errors)
    except BridgecheckError as exc:
        return _report(exc, exc.exit_code, args.json_errors)
    except OSError as exc:
        return _report(exc, EXIT_RUNTIME, args.json_errors)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
