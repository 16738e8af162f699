"""
Command-line driver: python -m app.cli <command> <program.flp> [options]

Exit codes: 0 when every requested check passes, 1 for failed checks,
non-convergence and internal-consistency failures, 2 for input errors.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app.core.logging import configure_logging
from app.schemas.run_config import RunConfig
from app.services.runner import CommandRunner, render_human

logger = logging.getLogger(__name__)

COMMANDS = ("check", "kk", "wf", "ultimate-kk", "ultimate-wf", "stable", "crosscheck", "strata", "trace")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def build_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flp", description="Fixpoint semantics of normal fuzzy logic programs")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("path", type=Path, help="program file (.flp)")
    parser.add_argument("--family", help="family for untagged connectives (G, L, Prod)")
    parser.add_argument("--mode", choices=("exact", "approx"), default="exact")
    parser.add_argument("--epsilon", help="tolerance in approx mode")
    parser.add_argument("--grid", help="grid resolution, n or 1/n")
    parser.add_argument("--max-iters", type=int, dest="max_iters")
    parser.add_argument("--trace", action="store_true")
    parser.add_argument("--format", choices=("human", "structured"), default="human")
    parser.add_argument("--partition", help='strata, e.g. "s,r|p,q"')
    parser.add_argument("--witness", help='interpretation for stable and strata, e.g. "p=1/2"')
    parser.add_argument("--enumerate", action="store_true", help="list the stable models on the grid")
    parser.add_argument("--method", choices=("exact_per_head", "grid"), default="exact_per_head")
    parser.add_argument("--samples", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--log-level", dest="log_level")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    options = {
        key: value for key, value in vars(args).items()
        if key not in ("path", "log_level") and value is not None
    }
    return RunConfig(**options)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_argument_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        config = config_from_args(args)
        text = args.path.read_text(encoding="utf-8")
        outcome = CommandRunner().run(config, text)
    except (OSError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as error:
        logger.error("%s failed: %s", args.command, error)
        print(f"error: {error}", file=sys.stderr)
        return EXIT_FAILED

    if config.format == "structured":
        sys.stdout.write(outcome.document.model_dump_json(indent=2) + "\n")
    else:
        sys.stdout.write(render_human(outcome.document))
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
