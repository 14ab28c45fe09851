"""Packaged example machines."""

from importlib.resources import files
from pathlib import Path

TOY_LEFT = "toy_left.json"
TOY_RIGHT = "toy_right.json"


def fixture(name: str) -> Path:
    """Path of a packaged machine document such as ``toy_left.json``."""
    return Path(str(files(__name__) / name))
