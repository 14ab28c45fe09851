"""Steady states: colourings that an iterated unit reproduces after one pass."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

import tanglekit.log as log
from tanglekit.errors import ParameterError
from tanglekit.machine.coloring import linear_constraints
from tanglekit.machine.concat import closure
from tanglekit.machine.model import Machine
from tanglekit.markov.iteration import check_pairing, step
from tanglekit.quandle.color import entries, fraction_text
from tanglekit.quandle.families.linear import is_scalar_linear

MAX_STEPS = 100000
TOLERANCE = 1e-10


def _text(value: Any) -> Any:
    if isinstance(value, Fraction):
        return fraction_text(value)
    return value


@dataclass
class SteadyState:
    """The steady states of a unit, projected onto its paired initial registers.

    Attributes:
        method (str): "linear" for the exact solution set of the closed machine, "fixed_point" for
            iteration from a start colouring.
        kind (str): "point", "line", "space" or "empty".
        dimension (int | None): Dimension of the solution set of the closed machine.
        state (dict[str, Any]): One steady state.
        basis (list[dict[str, Any]]): Directions spanning the other steady states.
        converged (bool): False when the fixed-point iteration ran out of steps.
        steps (int | None): Number of passes used by the fixed-point iteration.
    """

    method: str
    kind: str
    dimension: int | None
    state: dict[str, Any]
    basis: list[dict[str, Any]] = field(default_factory=list)
    converged: bool = True
    steps: int | None = None

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "method": self.method,
            "kind": self.kind,
            "dimension": self.dimension,
            "state": {r: _text(v) for r, v in self.state.items()},
            "basis": [{r: _text(v) for r, v in b.items()} for b in self.basis],
        }
        if self.method == "fixed_point":
            data["converged"] = self.converged
            data["steps"] = self.steps
        return data


def _linear_steady_state(unit: Machine, pairing: list[tuple[str, str]], controls: Mapping[str, Any]) -> SteadyState:
    q = unit.quandle
    closed = closure(unit.without_colors(), pairing)
    known = {r: q.color(v) for r, v in controls.items()}
    solution = linear_constraints(closed, known).solve()
    registers = [i for _, i in pairing]

    if solution.particular is None:
        return SteadyState("linear", "empty", None, {})

    point = solution.point()
    index = {v: k for k, v in enumerate(solution.variables)}
    basis = [{r: b[index[r]] for r in registers} for b in solution.basis]
    return SteadyState(
        "linear",
        solution.kind,
        solution.dimension,
        {r: point[r] for r in registers},
        basis,
    )


def _distance(a: Mapping[str, Any], b: Mapping[str, Any]) -> float:
    return max(
        (abs(complex(x) - complex(y)) for r in a for x, y in zip(entries(a[r]), entries(b[r]))),
        default=0.0,
    )


def _fixed_point(
    unit: Machine,
    pairing: list[tuple[str, str]],
    controls: Mapping[str, Any],
    start: Mapping[str, Any],
    max_steps: int,
    tolerance: float,
) -> SteadyState:
    q = unit.quandle
    state = {i: q.color(start[i]) for _, i in pairing}
    for k in range(1, max_steps + 1):
        out = step(unit, state, controls)
        following = {i: out[t] for t, i in pairing}
        if _distance(state, following) <= tolerance:
            return SteadyState("fixed_point", "point", 0, {r: c.payload for r, c in following.items()}, steps=k)
        state = following

    log.warn("Fixed-point iteration did not converge", details={"steps": max_steps})
    return SteadyState(
        "fixed_point", "point", 0, {r: c.payload for r, c in state.items()}, converged=False, steps=max_steps
    )


def steady_state(
    unit: Machine,
    pairing: Sequence[tuple[str, str]],
    controls: Mapping[str, Any] | None = None,
    start: Mapping[str, Any] | None = None,
    max_steps: int = MAX_STEPS,
    tolerance: float = TOLERANCE,
) -> SteadyState:
    """
    Find the colourings of the paired initial registers that one pass of ``unit`` reproduces.

    Scalar linear quandles close the unit along ``pairing`` and solve the edge constraints
    exactly, so the answer is the whole solution set. Other quandles iterate from ``start``.

    Args:
        unit (Machine): The unit.
        pairing: (terminal, initial) pairs.
        controls: Colours of the unpaired initial registers, fixed at every pass.
        start: Starting colours for the fixed-point iteration.
        max_steps (int): Iteration budget.
        tolerance (float): Largest entrywise change accepted as converged.

    Raises:
        ParameterError: If a fixed-point iteration is needed and ``start`` is missing.
    """
    pairs = check_pairing(unit, pairing)
    controls = dict(controls or {})

    if is_scalar_linear(unit.quandle):
        result = _linear_steady_state(unit, pairs, controls)
    else:
        if start is None:
            raise ParameterError("A fixed-point iteration needs start colours for the paired registers")
        result = _fixed_point(unit, pairs, controls, start, max_steps, tolerance)

    log.debug("Steady state", details={"method": result.method, "kind": result.kind})

    return result
