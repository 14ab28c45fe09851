"""Export a machine as Graphviz DOT"""

from pathlib import Path

from tanglekit.io.document import load_machine
from tanglekit.io.dot import export_dot

from .common import add_machine_argument, add_output_parameter


def run_dot(**kwargs) -> dict:

    m = load_machine(kwargs["machine"])
    text = export_dot(m, name=Path(kwargs["machine"]).stem)

    output = kwargs.get("output")
    if output:
        Path(output).write_text(text, encoding="utf-8")
        return {"ok": True, "output": output}

    return {"ok": True, "dot": text}


def add_dot_subparser(subparsers):

    parser = subparsers.add_parser("dot", help="Export a machine as Graphviz DOT text")
    parser.set_defaults(command="dot")
    add_machine_argument(parser)
    add_output_parameter(parser, help="Write the DOT text to this file instead of the JSON output")
