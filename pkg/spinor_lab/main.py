"""Main entry point for spinor-lab."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections.abc import Sequence
from dataclasses import replace

from .config import ConfigError, SweepConfig, load_config
from .equations import BranchMismatchError, UndefinedIdentificationError
from .report import FORMATS, all_passed, write_records
from .suites import run_dispersion, run_sweep, run_verify

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

LOG_LEVEL_ENV_VAR = "SPINOR_LAB_LOG_LEVEL"

COMMANDS = {
    "verify": run_verify,
    "sweep": run_sweep,
    "dispersion": run_dispersion,
}


def setup_logging(debug: bool = False, verbose: bool = False) -> None:
    """Configure root logging from the flags or SPINOR_LAB_LOG_LEVEL."""
    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        log_level = os.environ.get(LOG_LEVEL_ENV_VAR, "WARNING").upper()
        level = getattr(logging, log_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinor-lab",
        description="Check spinor identities, sweep mode compatibility and compute dispersion",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="What to run")
    for name in ("a", "b", "alpha1", "alpha2", "beta1", "beta2"):
        parser.add_argument(
            f"--{name}",
            type=float,
            default=None,
            help=f"Pin {name} to a single value (overrides the config range)",
        )
    parser.add_argument("--m", type=float, default=None, help="Mass scale (default: 1)")
    parser.add_argument("--tol", type=float, default=None, help="Pass tolerance (default: 1e-10)")
    parser.add_argument("--seed", type=int, default=None, help="Momentum sampling seed")
    parser.add_argument("--count", type=int, default=None, help="Number of sampled momenta")
    parser.add_argument("--format", choices=FORMATS, default=None, help="Output format")
    parser.add_argument("--out", default=None, help="Output file (default: stdout)")
    parser.add_argument("--config", default=None, help="JSON config file")
    parser.add_argument("--workers", type=int, default=None, help="Sweep worker threads")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--verbose", action="store_true", help="Enable info logging")
    return parser


def _apply_overrides(config: SweepConfig, args: argparse.Namespace) -> SweepConfig:
    config = config.with_values(
        a=args.a,
        b=args.b,
        alpha1=args.alpha1,
        alpha2=args.alpha2,
        beta1=args.beta1,
        beta2=args.beta2,
    )
    overrides = {
        "m": args.m,
        "tolerance": args.tol,
        "seed": args.seed,
        "count": args.count,
        "format": args.format,
        "out": args.out,
        "workers": args.workers,
    }
    values = {k: v for k, v in overrides.items() if v is not None}
    if not values:
        return config
    try:
        return replace(config, **values)
    except TypeError as e:
        raise ConfigError(str(e)) from e


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point.

    Returns:
        0 when every check passed, 1 when any failed, 2 for usage or
        configuration errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already printed usage or help
        return EXIT_PASS if e.code == 0 else EXIT_USAGE
    setup_logging(args.debug, args.verbose)

    try:
        config = _apply_overrides(load_config(args.config), args)
        records = COMMANDS[args.command](config)
    except (ConfigError, UndefinedIdentificationError, BranchMismatchError) as e:
        logger.error("%s", e)
        print(f"spinor-lab: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        logger.error("Invalid run: %s", e)
        print(f"spinor-lab: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if config.out:
            with open(config.out, "w", encoding="utf-8", newline="") as f:
                write_records(records, f, config.format)
            logger.info("Wrote %d records to %s", len(records), config.out)
        else:
            write_records(records, sys.stdout, config.format)
    except OSError as e:
        logger.error("Failed to write results: %s", e)
        return EXIT_USAGE

    passed = all_passed(records)
    logger.info("%d records, %s", len(records), "all passed" if passed else "failures present")
    return EXIT_PASS if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
