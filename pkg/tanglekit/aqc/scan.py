"""Gap trajectories over the interpolation parameter and the feasibility verdicts built on them."""

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, TextIO
import csv

import numpy as np
from scipy.optimize import minimize_scalar

import tanglekit.log as log
from tanglekit.aqc.hamiltonian import gap, smallest_eigenvalue
from tanglekit.aqc.machines import ABSTRACT, build_aqc_triple, build_single_aqc
from tanglekit.errors import ParameterError
from tanglekit.machine.model import Machine

GRID_POINTS = 2001
GRID_MARGIN = 1e-4
FEASIBILITY_THRESHOLD = 1e-6

Family = Callable[[float], Mapping[str, Machine]]


def default_grid(points: int = GRID_POINTS) -> np.ndarray:
    """Uniform points on ``[1e-4, 1 - 1e-4]``; both ends stay clear of the pole at ``s = 1``."""
    return np.linspace(GRID_MARGIN, 1 - GRID_MARGIN, points)


def single_family(s: float) -> dict[str, Machine]:
    return {"single": build_single_aqc(s)}


def triple_family(s: float) -> dict[str, Machine]:
    return build_aqc_triple(s).machines


@dataclass
class GapTrajectory:
    """The gap of one register's colour along the grid."""

    machine: str
    register: str
    s: np.ndarray
    gaps: np.ndarray
    family: Family | None = field(default=None, repr=False, compare=False)

    def gap_at(self, s: float) -> float:
        return gap(self.family(float(s))[self.machine].color(self.register))


def scan_gaps(family: Family, grid: Iterable[float] | None = None) -> dict[str, list[GapTrajectory]]:
    """
    Evaluate the gap of every register colour of every machine of ``family`` on ``grid``.

    Args:
        family (Family): Maps ``s`` to named, fully coloured machines with a fixed structure.
        grid: Points of ``(0, 1)``. Defaults to :func:`default_grid`.

    Returns:
        dict[str, list[GapTrajectory]]: Per machine name, one trajectory per register in register
        order.
    """
    s_values = np.asarray(default_grid() if grid is None else list(grid), dtype=float)
    if s_values.size == 0 or s_values.min() <= 0 or s_values.max() >= 1:
        raise ParameterError("Gap scans need grid points inside (0, 1)")

    values: dict[tuple[str, str], np.ndarray] = {}
    order: dict[str, list[str]] = {}
    for index, s in enumerate(s_values):
        for name, m in family(float(s)).items():
            if name not in order:
                order[name] = list(m.registers)
            for register in order[name]:
                key = (name, register)
                if key not in values:
                    values[key] = np.empty(s_values.size)
                values[key][index] = gap(m.color(register))

    log.debug("Scanned gaps", details={"points": int(s_values.size), "trajectories": len(values)})

    return {
        name: [GapTrajectory(name, r, s_values, values[(name, r)], family) for r in registers]
        for name, registers in order.items()
    }


def min_gap(trajectory: GapTrajectory) -> tuple[float, float]:
    """
    The minimizer ``(s*, g*)`` of a trajectory.

    The grid minimum is refined by a bounded scalar minimization between its two neighbours when
    the trajectory remembers its family; the refined point is kept only if it is lower.
    """
    index = int(np.argmin(trajectory.gaps))
    best = (float(trajectory.s[index]), float(trajectory.gaps[index]))
    if trajectory.family is None or trajectory.s.size < 3:
        return best

    low = float(trajectory.s[max(index - 1, 0)])
    high = float(trajectory.s[min(index + 1, trajectory.s.size - 1)])
    result = minimize_scalar(trajectory.gap_at, bounds=(low, high), method="bounded", options={"xatol": 1e-10})
    if result.success and float(result.fun) < best[1]:
        best = (float(result.x), float(result.fun))
    return best


@dataclass
class Feasibility:
    feasible: bool
    register: str | None = None
    s: float | None = None
    gap: float | None = None

    def to_json(self) -> dict[str, Any]:
        if self.feasible:
            return {"verdict": "Feasible"}
        return {"verdict": "Infeasible", "register": self.register, "s": self.s, "gap": self.gap}


def classify_feasibility(
    trajectories: list[GapTrajectory], threshold: float = FEASIBILITY_THRESHOLD
) -> Feasibility:
    """
    Infeasible when some register's gap closes, i.e. its minimum is at most ``threshold``.

    The offending register is the one with the smallest minimum.
    """
    worst: tuple[str, float, float] | None = None
    for trajectory in trajectories:
        s_star, g_star = min_gap(trajectory)
        if worst is None or g_star < worst[2]:
            worst = (trajectory.register, s_star, g_star)
    if worst is None or worst[2] > threshold:
        return Feasibility(True)
    return Feasibility(False, *worst)


def negative_eigenvalue_witness(grid: Iterable[float] | None = None) -> list[tuple[float, float]]:
    """
    The smallest eigenvalue of ``G(s)`` from the left machine, per grid point.

    ``det G(s) = -(1-s)⁻²`` so every value is negative. ``s = 1`` is not a valid operation
    parameter and raises ParameterError.
    """
    s_values = default_grid() if grid is None else list(grid)
    return [(float(s), smallest_eigenvalue(build_aqc_triple(s).left.color(ABSTRACT))) for s in s_values]


def write_csv(trajectories: dict[str, list[GapTrajectory]], stream: TextIO):
    """Write ``machine, register, s, gap`` rows for plotting."""
    writer = csv.DictWriter(stream, fieldnames=["machine", "register", "s", "gap"], lineterminator="\n")
    writer.writeheader()
    for name in sorted(trajectories):
        for trajectory in trajectories[name]:
            for s, g in zip(trajectory.s, trajectory.gaps):
                writer.writerow(
                    {"machine": name, "register": trajectory.register, "s": repr(float(s)), "gap": repr(float(g))}
                )


def aqc_report(points: int = GRID_POINTS, threshold: float = FEASIBILITY_THRESHOLD) -> dict[str, Any]:
    """Minimum gaps and feasibility of the single machine and the triple."""
    grid = default_grid(points)
    scans = {**scan_gaps(single_family, grid), **scan_gaps(triple_family, grid)}

    minima: dict[str, dict[str, dict[str, float]]] = {}
    verdicts: dict[str, Any] = {}
    for name, trajectories in scans.items():
        minima[name] = {}
        for trajectory in trajectories:
            s_star, g_star = min_gap(trajectory)
            minima[name][trajectory.register] = {"s": s_star, "gap": g_star}
        verdicts[name] = classify_feasibility(trajectories, threshold).to_json()

    witness = negative_eigenvalue_witness(grid)

    return {
        "grid": {"points": points, "low": float(grid[0]), "high": float(grid[-1])},
        "threshold": threshold,
        "min_gaps": minima,
        "feasibility": verdicts,
        "negative_eigenvalue": {
            "register": ABSTRACT,
            "all_negative": all(value < 0 for _, value in witness),
            "max": max(value for _, value in witness),
        },
    }
