"""Check and complete machine colourings from the command line"""

from tanglekit.io.document import load_machine, save_machine
from tanglekit.machine.coloring import solve_coloring, validate

from .common import add_machine_argument, add_output_parameter, machine_result, parse_assignments


def run_validate(**kwargs) -> dict:
    """Validate the colouring of a machine"""

    m = load_machine(kwargs["machine"])
    report = validate(m)

    return {"ok": report.valid, "summary": m.summary(), **report.model_dump()}


def run_color(**kwargs) -> dict:
    """Complete the colouring of a machine from its own colours and the --set seeds"""

    m = load_machine(kwargs["machine"])
    seeds = parse_assignments(kwargs.get("set"), "seed colour")

    colored = solve_coloring(m, seeds, order_seed=kwargs.get("seed"))

    output = kwargs.get("output")
    if output:
        save_machine(colored, output)

    return {"ok": True, "output": output, **machine_result(colored)}


def add_validate_subparser(subparsers):
    """Add the validate subparser

    Args:
        subparsers (subparsers): The subparsers to add the validate subparser to

    """

    parser = subparsers.add_parser("validate", help="Check every edge constraint of a machine's colouring")
    parser.set_defaults(command="validate")
    add_machine_argument(parser)


def add_color_subparser(subparsers):
    """Add the color subparser"""

    parser = subparsers.add_parser("color", help="Complete a partial colouring")
    parser.set_defaults(command="color")
    add_machine_argument(parser)
    parser.add_argument(
        "--set",
        dest="set",
        metavar="<register=value>",
        action="append",
        default=[],
        help="Seed colour for a register. May be given several times",
    )
    add_output_parameter(parser)
