"""Adiabatic quantum computations as Hamiltonian-coloured machines, and their spectral gaps."""

from .hamiltonian import H0, H1, SIGMA_X, SIGMA_Z, eigenvalues, gap, smallest_eigenvalue
from .machines import AqcTriple, build_aqc_triple, build_single_aqc, single_output, triple_output
from .scan import (
    Feasibility,
    GapTrajectory,
    aqc_report,
    classify_feasibility,
    default_grid,
    min_gap,
    negative_eigenvalue_witness,
    scan_gaps,
    single_family,
    triple_family,
    write_csv,
)

__all__ = [
    "AqcTriple",
    "Feasibility",
    "GapTrajectory",
    "H0",
    "H1",
    "SIGMA_X",
    "SIGMA_Z",
    "aqc_report",
    "build_aqc_triple",
    "build_single_aqc",
    "classify_feasibility",
    "default_grid",
    "eigenvalues",
    "gap",
    "min_gap",
    "negative_eigenvalue_witness",
    "scan_gaps",
    "single_family",
    "single_output",
    "smallest_eigenvalue",
    "triple_family",
    "triple_output",
    "write_csv",
]
