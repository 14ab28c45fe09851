"""Colouring validation and constraint propagation."""

from collections import deque
from typing import Any, Mapping

import numpy as np
from pydantic import BaseModel

import tanglekit.log as log
from tanglekit.errors import (
    InconsistentColoringError,
    MachineStructureError,
    QuandleError,
    UnderdeterminedError,
)
from tanglekit.machine.linear import EXACT, MODULAR, REAL, AffineSystem
from tanglekit.machine.model import Edge, Machine
from tanglekit.quandle.color import FLOAT, ColorValue, colors_close
from tanglekit.quandle.factory import FamilyFactory
from tanglekit.quandle.families.linear import is_scalar_linear
from tanglekit.quandle.quandle import apply, invert


class Violation(BaseModel):
    edge: list[str]
    agent: str | None = None
    expected: str | None = None
    actual: str | None = None
    message: str | None = None


class ValidationReport(BaseModel):
    valid: bool
    complete: bool
    violations: list[Violation] = []
    uncolored: list[str] = []


def _expected_output(m: Machine, edge: Edge, colors: Mapping[str, ColorValue]) -> tuple[str, ColorValue] | None:
    """The register that receives the result on ``edge`` and the colour it must carry."""
    actor = m.actor_of(edge)
    if actor is None:
        return None
    agent, patient = actor
    return patient.output, apply(m.quandle, agent.op, colors[patient.input], colors[agent.register])


def validate(m: Machine) -> ValidationReport:
    """
    Check every edge constraint of the colouring.

    An edge nobody acts on needs equal colours at both ends; an acted edge needs the input colour
    transformed by the agent's colour to equal the output colour. Edges with an uncoloured register
    are skipped and the register is listed as uncoloured.

    Args:
        m (Machine): The machine to check.

    Returns:
        ValidationReport: Every violated edge and every uncoloured register.
    """
    colors = m.color_map
    violations: list[Violation] = []

    for edge in m.edges:
        actor = m.actor_of(edge)
        needed = set(edge) | ({actor[0].register} if actor else set())
        if not needed.issubset(colors):
            continue
        if actor is None:
            if not colors_close(colors[edge[0]], colors[edge[1]]):
                violations.append(
                    Violation(
                        edge=list(edge),
                        expected=str(colors[edge[0]]),
                        actual=str(colors[edge[1]]),
                        message="unacted edge joins different colours",
                    )
                )
            continue
        try:
            output, expected = _expected_output(m, edge, colors)
        except QuandleError as e:
            violations.append(Violation(edge=list(edge), agent=actor[0].register, message=str(e)))
            continue
        if not colors_close(expected, colors[output]):
            violations.append(
                Violation(
                    edge=list(edge),
                    agent=actor[0].register,
                    expected=str(expected),
                    actual=str(colors[output]),
                    message="output register '{}' does not match".format(output),
                )
            )

    uncolored = [r for r in m.registers if r not in colors]

    report = ValidationReport(
        valid=not violations,
        complete=not uncolored,
        violations=violations,
        uncolored=uncolored,
    )

    log.debug("Validated machine", details={"valid": report.valid, "violations": len(violations)})

    return report


def _assign(colors: dict[str, ColorValue], register: str, value: ColorValue) -> bool:
    current = colors.get(register)
    if current is None:
        colors[register] = value
        return True
    if not colors_close(current, value):
        raise InconsistentColoringError(register, current, value)
    return False


def propagate(
    m: Machine, partial: Mapping[str, Any] | None = None, order_seed: int | None = None
) -> dict[str, ColorValue]:
    """
    Spread colours along edges until nothing changes.

    Known inputs fire forward through ``apply``, known outputs fire backward through ``invert``;
    an acted edge waits until its agent is coloured. The result does not depend on the order in
    which edges are visited; ``order_seed`` shuffles that order to test it.

    Args:
        m (Machine): The machine; its own colours are used as seeds too.
        partial: Additional seed colours by register id.
        order_seed (int | None): Shuffle the initial worklist with this seed.

    Returns:
        dict[str, ColorValue]: Every colour that could be determined.

    Raises:
        InconsistentColoringError: If a register would need two different colours.
    """
    colors = dict(m.color_map)
    for register, value in (partial or {}).items():
        if register not in m.position:
            raise MachineStructureError("Seed colour given for unknown register '{}'".format(register))
        _assign(colors, register, m.quandle.color(value))

    edges = list(m.edges)
    if order_seed is not None:
        rng = np.random.default_rng(order_seed)
        edges = [edges[i] for i in rng.permutation(len(edges))]

    touching: dict[str, list[Edge]] = {r: [] for r in m.registers}
    for edge in m.edges:
        touching[edge[0]].append(edge)
        if edge[1] != edge[0]:
            touching[edge[1]].append(edge)
    for agent in m.agents:
        touching[agent.register].extend(agent.edges)

    queue = deque(edges)
    queued = set(edges)

    while queue:
        edge = queue.popleft()
        queued.discard(edge)
        changed: list[str] = []
        actor = m.actor_of(edge)
        v, w = edge

        if actor is None:
            if v in colors and _assign(colors, w, colors[v]):
                changed.append(w)
            elif w in colors and _assign(colors, v, colors[w]):
                changed.append(v)
        else:
            agent, patient = actor
            y = colors.get(agent.register)
            if y is not None:
                if patient.input in colors:
                    value = apply(m.quandle, agent.op, colors[patient.input], y)
                    if _assign(colors, patient.output, value):
                        changed.append(patient.output)
                elif patient.output in colors:
                    value = invert(m.quandle, agent.op, colors[patient.output], y)
                    if _assign(colors, patient.input, value):
                        changed.append(patient.input)

        for register in changed:
            for other in touching[register]:
                if other not in queued:
                    queue.append(other)
                    queued.add(other)

    log.trace("Propagated colours", details={"colored": len(colors), "registers": len(m.registers)})

    return colors


def linear_constraints(m: Machine, known: Mapping[str, ColorValue] | None = None) -> AffineSystem:
    """
    The edge constraints of a scalar linear machine as an affine system in the register colours.

    A forward edge ``(v, w)`` acted on by ``u`` with ``x ↦ a·x + b·y`` gives ``w - a·v - b·u = 0``,
    a backward edge swaps ``v`` and ``w``, an unacted edge gives ``v - w = 0``. Registers in
    ``known`` are pinned to their colours.
    """
    q = m.quandle
    modulus = q.carrier.modulus
    if modulus is not None:
        arithmetic = MODULAR
    elif q.carrier.color_kind == FLOAT:
        arithmetic = REAL
    else:
        arithmetic = EXACT

    system = AffineSystem(arithmetic=arithmetic, modulus=modulus)
    for register in m.registers:
        system.variable(register)

    def equation(terms: list[tuple[str, Any]]):
        coefficients: dict[str, Any] = {}
        for name, value in terms:
            coefficients[name] = coefficients.get(name, 0) + value
        system.add(coefficients, 0)

    for edge in m.edges:
        actor = m.actor_of(edge)
        if actor is None:
            equation([(edge[0], 1), (edge[1], -1)])
            continue
        agent, patient = actor
        family = FamilyFactory.load(agent.op.family)
        a, b = family.coefficients(q, agent.op.param, agent.op.inverse)
        equation([(patient.output, 1), (patient.input, -a), (agent.register, -b)])

    for register, color in (known or {}).items():
        system.add({register: 1}, color.payload)

    return system


def solve_coloring(m: Machine, partial: Mapping[str, Any] | None = None, order_seed: int | None = None) -> Machine:
    """
    Complete the colouring of ``m`` from its own colours plus ``partial``.

    Propagation runs first. When it stalls on a scalar linear quandle the remaining constraints are
    solved as an affine system, which also settles cycles that propagation cannot enter.

    Args:
        m (Machine): The machine to colour.
        partial: Seed colours by register id.
        order_seed (int | None): Shuffle the propagation order.

    Returns:
        Machine: ``m`` with a complete, valid colouring.

    Raises:
        UnderdeterminedError: If some registers are not determined by the seeds.
        InconsistentColoringError: If the seeds admit no colouring.
    """
    colors = propagate(m, partial, order_seed)
    unresolved = [r for r in m.registers if r not in colors]

    if unresolved and is_scalar_linear(m.quandle):
        log.debug("Propagation stalled, solving the linear constraints", details={"unresolved": unresolved})

        solution = linear_constraints(m, colors).solve()
        if solution.particular is None:
            raise InconsistentColoringError(None, None, None, "the linear edge constraints have no solution")

        free = set(solution.free_variables)
        point = solution.point()
        for register in unresolved:
            if register not in free:
                colors[register] = m.quandle.color(point[register])
        colors = propagate(m.with_colors({}), colors)
        unresolved = [r for r in m.registers if r not in colors]

    if unresolved:
        raise UnderdeterminedError(unresolved)

    return m.with_colors(colors)
