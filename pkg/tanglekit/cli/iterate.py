"""Iterate a unit machine and find its steady states"""

from tanglekit.errors import TanglekitError
from tanglekit.io.document import load_machine
from tanglekit.markov.iteration import IterationSpec, iterate
from tanglekit.markov.steady import steady_state

from .common import add_machine_argument, parse_assignments


def run_iterate(**kwargs) -> dict:
    """Concatenate copies of a unit along a pairing and follow the state"""

    unit = load_machine(kwargs["machine"])

    pairing = list(parse_assignments(kwargs.get("pairing"), "pairing").items())
    if not pairing:
        raise TanglekitError("At least one --pairing terminal=initial is required")

    initial = parse_assignments(kwargs.get("initial"), "initial colour")
    controls = parse_assignments(kwargs.get("control"), "control colour")

    result: dict = {"ok": True}

    if kwargs.get("copies"):
        trace = iterate(IterationSpec(unit, pairing, kwargs["copies"], initial, controls))
        result["trajectory"] = trace.to_json()
        result["final"] = trace.to_json()[-1]

    if kwargs.get("steady"):
        result["steady_state"] = steady_state(unit, pairing, controls, start=initial or None).to_json()

    return result


def add_iterate_subparser(subparsers):
    """Add the iterate subparser

    Args:
        subparsers (subparsers): The subparsers to add the iterate subparser to

    """

    parser = subparsers.add_parser("iterate", help="Iterate a unit machine along a terminal-to-initial pairing")
    parser.set_defaults(command="iterate")
    add_machine_argument(parser, help="Unit machine document")
    parser.add_argument(
        "--pairing",
        dest="pairing",
        metavar="<terminal=initial>",
        action="append",
        default=[],
        help="Feed this terminal register into this initial register of the next copy. May be repeated",
    )
    parser.add_argument("--copies", dest="copies", type=int, default=1, metavar="<n>", help="Number of steps")
    parser.add_argument(
        "--initial",
        dest="initial",
        metavar="<register=value>",
        action="append",
        default=[],
        help="Colour of a paired initial register at step 0",
    )
    parser.add_argument(
        "--control",
        dest="control",
        metavar="<register=value>",
        action="append",
        default=[],
        help="Colour of an unpaired initial register, used at every step",
    )
    parser.add_argument(
        "--steady", dest="steady", action="store_true", default=False, help="Also report the steady states"
    )
