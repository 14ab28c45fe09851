"""List, replay and search Reidemeister moves"""

from tanglekit.config import get_max_states, to_number
from tanglekit.io.document import load_machine, machine_from_document, moves_from_document, read_document, save_machine
from tanglekit.quandle.automorphism import AffineAutomorphism
from tanglekit.rewrite.canonical import canonical_key
from tanglekit.rewrite.invariants import invariant_profile
from tanglekit.rewrite.moves import enumerate_moves, replay
from tanglekit.rewrite.search import SearchBudget, search_equivalent

from .common import add_machine_argument, add_output_parameter, machine_result


def run_moves(**kwargs) -> dict:
    """Enumerate the moves applicable to a machine"""

    m = load_machine(kwargs["machine"])
    sites = enumerate_moves(m, kwargs.get("kind") or None)

    return {"ok": True, "count": len(sites), "moves": [site.to_json() for site in sites]}


def run_replay(**kwargs) -> dict:
    """Apply a move sequence, from a separate file or the one attached to the machine document"""

    document = read_document(kwargs["machine"])
    m = machine_from_document(document)

    moves_file = kwargs.get("moves")
    sites = moves_from_document(read_document(moves_file) if moves_file else document)

    result = replay(m, sites)

    output = kwargs.get("output")
    if output:
        save_machine(result, output)

    return {"ok": True, "applied": len(sites), "output": output, **machine_result(result)}


def run_equiv(**kwargs) -> dict:
    """Search for a move sequence relating two machines"""

    a = load_machine(kwargs["a"])
    b = load_machine(kwargs["b"])

    budget = SearchBudget(
        max_moves=kwargs["max_moves"],
        max_states=kwargs.get("max_states") or get_max_states(),
        max_stabilizations=kwargs["max_stabilizations"],
    )

    automorphism = None
    if kwargs.get("scale") is not None or kwargs.get("shift") is not None:
        automorphism = AffineAutomorphism(
            scale=to_number(kwargs.get("scale") or "1"), shift=to_number(kwargs.get("shift") or "0")
        )

    result = search_equivalent(a, b, budget, automorphism)

    return {"ok": result.found, **result.to_json()}


def run_invariants(**kwargs) -> dict:
    """Invariant profile and canonical key of a machine"""

    m = load_machine(kwargs["machine"])

    return {
        "ok": True,
        "profile": invariant_profile(m).model_dump(),
        "canonical_key": canonical_key(m).hex(),
    }


def add_moves_subparser(subparsers):
    """Add the moves subparser

    Args:
        subparsers (subparsers): The subparsers to add the moves subparser to

    """

    parser = subparsers.add_parser("moves", help="List the moves applicable to a machine")
    parser.set_defaults(command="moves")
    add_machine_argument(parser)
    parser.add_argument(
        "--kind",
        dest="kind",
        metavar="<kind>",
        action="append",
        default=[],
        help="Only list this kind of move (R1+, R1-, R2+, R2-, R3, Stab+, Stab-). May be repeated",
    )


def add_replay_subparser(subparsers):

    parser = subparsers.add_parser("replay", help="Apply a recorded move sequence to a machine")
    parser.set_defaults(command="replay")
    add_machine_argument(parser)
    parser.add_argument(
        "moves",
        nargs="?",
        default=None,
        metavar="<moves>",
        help="Move list document. Defaults to the moves attached to the machine document",
    )
    add_output_parameter(parser)


def add_equiv_subparser(subparsers):

    parser = subparsers.add_parser("equiv", help="Search for a move sequence relating two machines")
    parser.set_defaults(command="equiv")
    add_machine_argument(parser, "a", "Start machine document")
    add_machine_argument(parser, "b", "Goal machine document")
    parser.add_argument("--max-moves", dest="max_moves", type=int, default=8, metavar="<n>")
    parser.add_argument(
        "--max-states",
        dest="max_states",
        type=int,
        default=None,
        metavar="<n>",
        help="States visited per search tier. Default is TANGLEKIT_MAX_STATES or 20000",
    )
    parser.add_argument("--max-stabilizations", dest="max_stabilizations", type=int, default=2, metavar="<n>")
    parser.add_argument(
        "--scale", dest="scale", type=str, default=None, metavar="<a>", help="Apply x -> a*x + b to the start machine"
    )
    parser.add_argument("--shift", dest="shift", type=str, default=None, metavar="<b>")


def add_invariants_subparser(subparsers):

    parser = subparsers.add_parser("invariants", help="Show the invariant profile and canonical key")
    parser.set_defaults(command="invariants")
    add_machine_argument(parser)
