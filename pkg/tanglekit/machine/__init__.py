"""Machines: the Gauß-diagram model, colourings, concatenation and closure."""

from .model import (
    CYCLE,
    PATH,
    Agent,
    Component,
    Direction,
    Machine,
    MachineBuilder,
    Patient,
)
from .coloring import ValidationReport, Violation, propagate, solve_coloring, validate
from .concat import Process, closure, concatenate, endpoints, processes
from .linear import AffineSolution, AffineSystem, affine_solution_set

__all__ = [
    "AffineSolution",
    "AffineSystem",
    "Agent",
    "CYCLE",
    "Component",
    "Direction",
    "Machine",
    "MachineBuilder",
    "PATH",
    "Patient",
    "Process",
    "ValidationReport",
    "Violation",
    "affine_solution_set",
    "closure",
    "concatenate",
    "endpoints",
    "processes",
    "propagate",
    "solve_coloring",
    "validate",
]
