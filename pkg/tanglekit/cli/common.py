"""Common commandline parameters and output helpers"""

from typing import Any
import json
import sys

from rich.console import Console
from rich.syntax import Syntax
import darkdetect  # type: ignore

from tanglekit.errors import TanglekitError
from tanglekit.io.document import machine_to_document
from tanglekit.machine.model import Machine

console = Console()

# Detect OS theme and select appropriate theme
if darkdetect.isDark():
    theme = "native"
else:
    theme = "github"


def _print(text: str, format: str, end: str):
    if console.is_terminal:
        console.print(Syntax(text, format, theme=theme), end=end)
    else:
        sys.stdout.write(text + end)


def cprint(data: Any, format: str = "text", end: str = "\n"):
    _print(str(data), format, end)


def jprint(data: Any, format: str = "json", end: str = "\n"):
    """Print ``data`` as indented JSON; highlighted on a terminal, plain when piped."""
    text = data if isinstance(data, str) else json.dumps(data, indent=2, default=str)
    _print(text, format, end)


def add_machine_argument(parser, name: str = "machine", help: str = "Machine document (.json, .yaml or .yml)"):
    parser.add_argument(name, type=str, metavar="<{}>".format(name), help=help)


def add_output_parameter(parser, help: str = "Write the resulting machine document to this file"):
    parser.add_argument(
        "-o",
        "--output",
        dest="output",
        metavar="<file>",
        type=str,
        default=None,
        help=help,
    )


def parse_assignments(values: list[str] | None, what: str = "assignment") -> dict[str, str]:
    """
    Turn ``["x=1/2", "y=3"]`` into ``{"x": "1/2", "y": "3"}``.

    Raises:
        TanglekitError: If an item has no ``=``.
    """
    result: dict[str, str] = {}
    for item in values or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise TanglekitError("Malformed {} '{}', expected name=value".format(what, item))
        result[key.strip()] = value.strip()
    return result


def machine_result(m: Machine) -> dict[str, Any]:
    return {"machine": machine_to_document(m)}
