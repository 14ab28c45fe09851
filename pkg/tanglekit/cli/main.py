"""The "tanglekit" command line.

Every command prints one JSON document to stdout. The exit code is 0 on success, 1 when the
operation reports a failure (an invalid colouring, an inconclusive search, a domain error) and 2
on a usage error.
"""

from typing import Callable
import argparse
import os
import sys

from dotenv import load_dotenv

import tanglekit.log as log
from tanglekit._version import __version__
from tanglekit.config import PRECISIONS, get_log_level, get_precision, get_seed
from tanglekit.errors import TanglekitError
from tanglekit.io.document import SCHEMA_VERSION

from tanglekit.cli.demo import (
    add_demo_aqc_subparser,
    add_demo_info_subparser,
    add_demo_markov_subparser,
    run_demo_aqc,
    run_demo_info,
    run_demo_markov,
)
from tanglekit.cli.dot import add_dot_subparser, run_dot
from tanglekit.cli.iterate import add_iterate_subparser, run_iterate
from tanglekit.cli.moves import (
    add_equiv_subparser,
    add_invariants_subparser,
    add_moves_subparser,
    add_replay_subparser,
    run_equiv,
    run_invariants,
    run_moves,
    run_replay,
)
from tanglekit.cli.validate import add_color_subparser, add_validate_subparser, run_color, run_validate

from .common import jprint

load_dotenv()

COMMAND: dict[str, Callable[..., dict]] = {
    "validate": run_validate,
    "color": run_color,
    "moves": run_moves,
    "replay": run_replay,
    "equiv": run_equiv,
    "invariants": run_invariants,
    "iterate": run_iterate,
    "dot": run_dot,
    "demo-info": run_demo_info,
    "demo-aqc": run_demo_aqc,
    "demo-markov": run_demo_markov,
}


def parse_args(argv: list[str] | None = None) -> dict:
    """Parse the CLI arguments"""

    seed = get_seed()
    precision = get_precision()
    level = get_log_level()

    parser = argparse.ArgumentParser(
        prog="tanglekit",
        description="Quandle-coloured tangle machines",
        formatter_class=argparse.RawTextHelpFormatter,
        epilog=f"\ntanglekit v{__version__}\n",
    )

    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--seed",
        dest="seed",
        type=int,
        metavar="<seed>",
        help=f"Seed for every randomized choice. Default is {seed}",
        default=seed,
    )
    parser.add_argument(
        "--precision",
        dest="precision",
        type=str,
        choices=PRECISIONS,
        help=f"Number type of command line values. Default is '{precision}'",
        default=precision,
    )
    parser.add_argument(
        "--log-level",
        dest="log_level",
        type=str,
        metavar="<level>",
        help=f"TRACE, DEBUG, INFO, WARNING or ERROR. Default is '{level}'",
        default=level,
    )

    subparsers = parser.add_subparsers(title="Commands", dest="command", metavar="<command>", required=True)

    add_validate_subparser(subparsers)
    add_color_subparser(subparsers)
    add_moves_subparser(subparsers)
    add_replay_subparser(subparsers)
    add_equiv_subparser(subparsers)
    add_invariants_subparser(subparsers)
    add_iterate_subparser(subparsers)
    add_dot_subparser(subparsers)
    add_demo_info_subparser(subparsers)
    add_demo_aqc_subparser(subparsers)
    add_demo_markov_subparser(subparsers)

    return vars(parser.parse_args(argv))


def execute(argv: list[str] | None = None) -> int:
    """
    Run one command and print its JSON document.

    Returns:
        int: The exit code. Usage errors leave through argparse with code 2.
    """

    args = parse_args(argv)

    log.setup(level=args.pop("log_level"))

    # Command line values are converted with the precision read from the environment
    os.environ["TANGLEKIT_PRECISION"] = args["precision"]

    command = args.pop("command")
    document = {"schema": SCHEMA_VERSION, "command": command, "parameters": dict(args)}

    try:
        result = COMMAND[command](**args)
    except TanglekitError as e:
        log.error("{} failed: {}", command, e)
        result = {"ok": False, "error": e.to_dict()}
    except OSError as e:
        log.error("{} failed: {}", command, e)
        result = {"ok": False, "error": {"type": type(e).__name__, "message": str(e)}}

    document.update(result)
    jprint(document)

    if "error" in result or result.get("ok") is False:
        return 1
    return 0


def main():
    """Main entry point for the CLI"""

    sys.exit(execute())


if __name__ == "__main__":
    main()
