"""Quandle-coloured tangle machines.

The subpackages build on one another: :mod:`tanglekit.quandle` holds the colour algebras,
:mod:`tanglekit.machine` the machines and their colourings, :mod:`tanglekit.rewrite` the moves and
the equivalence search, and :mod:`tanglekit.info`, :mod:`tanglekit.aqc` and :mod:`tanglekit.markov`
the three applications. :mod:`tanglekit.io` reads and writes machine documents.
"""

from ._version import __version__
from .machine import Machine, MachineBuilder, solve_coloring, validate
from .quandle import OpLabel, Quandle, linear_quandle
from .rewrite import apply_move, enumerate_moves, invariant_profile, search_equivalent

__all__ = [
    "Machine",
    "MachineBuilder",
    "OpLabel",
    "Quandle",
    "__version__",
    "apply_move",
    "enumerate_moves",
    "invariant_profile",
    "linear_quandle",
    "search_equivalent",
    "solve_coloring",
    "validate",
]
