"""Processes, endpoints, concatenation and closure."""

from dataclasses import dataclass
from typing import Iterable

import tanglekit.log as log
from tanglekit.errors import ConcatenationError
from tanglekit.machine.model import CYCLE, PATH, Agent, Component, Machine, Patient
from tanglekit.quandle.color import ColorValue, colors_close

Pairing = list[tuple[str, str]]
"""(terminal register, initial register) pairs."""


@dataclass(frozen=True)
class Process:
    """One component of the machine, in path order.

    Attributes:
        kind (str): "path" or "cycle".
        registers (tuple[str, ...]): The registers in order.
        initial (str | None): First register of a path, None for a cycle.
        terminal (str | None): Last register of a path, None for a cycle.
        control (bool): True for cycles (the control processes of a closed machine).
    """

    kind: str
    registers: tuple[str, ...]
    initial: str | None
    terminal: str | None
    control: bool


def processes(m: Machine) -> list[Process]:
    result = []
    for component in m.components:
        if component.is_cycle:
            result.append(Process(CYCLE, component.registers, None, None, True))
        else:
            result.append(Process(PATH, component.registers, component.registers[0], component.registers[-1], False))
    return result


def endpoints(m: Machine) -> tuple[list[str], list[str]]:
    """Initial and terminal registers of the path processes, in component order."""
    paths = [p for p in processes(m) if not p.control]
    return [p.initial for p in paths], [p.terminal for p in paths]


def _check_pairing(pairing: Iterable[tuple[str, str]]) -> Pairing:
    pairs = [(str(t), str(i)) for t, i in pairing]
    terminals = [t for t, _ in pairs]
    initials = [i for _, i in pairs]
    if len(set(terminals)) != len(terminals) or len(set(initials)) != len(initials):
        raise ConcatenationError("A pairing must not use a register twice on the same side")
    return pairs


def concatenate(a: Machine, b: Machine, pairing: Iterable[tuple[str, str]]) -> Machine:
    """
    Join the terminal registers of ``a`` to the initial registers of ``b``.

    Args:
        a (Machine): The first machine.
        b (Machine): The second machine; its register ids must differ from those of ``a``.
        pairing: (terminal register of a, initial register of b) pairs.

    Returns:
        Machine: The concatenated machine. Paired registers are identified and keep the id of
        the initial register.

    Raises:
        ConcatenationError: On overlapping ids, different quandles, a register that is not an
            endpoint, or different colours at a pair.
    """
    if a.quandle != b.quandle:
        raise ConcatenationError("Only machines over the same quandle can be concatenated")
    shared = set(a.registers) & set(b.registers)
    if shared:
        raise ConcatenationError("Machines share register ids: {}".format(", ".join(sorted(shared))))
    pairs = _check_pairing(pairing)
    for t, i in pairs:
        if t not in a.position:
            raise ConcatenationError("'{}' is not a register of the first machine".format(t))
        if i not in b.position:
            raise ConcatenationError("'{}' is not a register of the second machine".format(i))

    union = Machine(
        a.quandle,
        a.components + b.components,
        a.agents + b.agents,
        {**a.color_map, **b.color_map},
    )
    return closure(union, pairs)


class _Fusion:
    """Mutable working copy of a machine used while registers are identified."""

    def __init__(self, m: Machine):
        self.quandle = m.quandle
        self.components: list[list] = [[c.kind, list(c.registers)] for c in m.components]
        self.agents: dict[str, tuple] = {
            a.register: (a.op, [(p.edge, p.direction) for p in a.patients]) for a in m.agents
        }
        self.colors: dict[str, ColorValue] = dict(m.color_map)
        self.renamed: dict[str, str] = {}

    def resolve(self, register: str) -> str:
        while register in self.renamed:
            register = self.renamed[register]
        return register

    def find(self, register: str) -> int | None:
        for index, (_, regs) in enumerate(self.components):
            if register in regs:
                return index
        return None

    def merge(self, terminal: str, initial: str):
        t = self.resolve(terminal)
        i = self.resolve(initial)
        ct = self.find(t)
        ci = self.find(i)
        if ct is None or self.components[ct][0] != PATH or self.components[ct][1][-1] != t:
            raise ConcatenationError("'{}' is not a terminal register".format(terminal))
        if ci is None or self.components[ci][0] != PATH or self.components[ci][1][0] != i:
            raise ConcatenationError("'{}' is not an initial register".format(initial))

        ct_color = self.colors.get(t)
        ci_color = self.colors.get(i)
        if ct_color is not None and ci_color is not None and not colors_close(ct_color, ci_color):
            raise ConcatenationError(
                "Paired registers '{}' and '{}' have different colours {} and {}".format(
                    terminal, initial, ct_color, ci_color
                )
            )

        if t != i:
            if t in self.agents and i in self.agents:
                raise ConcatenationError("Paired registers '{}' and '{}' are both agents".format(terminal, initial))
            if t in self.agents:
                self.agents[i] = self.agents.pop(t)
            if ci_color is None and ct_color is not None:
                self.colors[i] = ct_color
            self.colors.pop(t, None)
            for register, (op, patients) in self.agents.items():
                self.agents[register] = (
                    op,
                    [((i if v == t else v, i if w == t else w), d) for (v, w), d in patients],
                )
            self.renamed[t] = i

        regs_t = self.components[ct][1]
        if ct == ci:
            self.components[ct] = [CYCLE, regs_t[:-1] if len(regs_t) > 1 else regs_t]
        else:
            self.components[ct] = [PATH, regs_t[:-1] + self.components[ci][1]]
            del self.components[ci]

    def machine(self) -> Machine:
        return Machine(
            self.quandle,
            tuple(Component(kind, tuple(regs)) for kind, regs in self.components),
            tuple(Agent(r, op, tuple(Patient(e, d) for e, d in p)) for r, (op, p) in self.agents.items()),
            self.colors,
        )


def closure(m: Machine, pairing: Iterable[tuple[str, str]]) -> Machine:
    """
    Identify terminal registers of ``m`` with initial registers of ``m``.

    Fused paths stay paths; a path joined to itself becomes a cycle (a single register path
    becomes a cycle with one self-edge). Agent roles, patient edges and colours carry over.

    Raises:
        ConcatenationError: If a register is not an endpoint, both registers are agents, or
            their colours differ.
    """
    pairs = _check_pairing(pairing)
    fusion = _Fusion(m)
    for terminal, initial in pairs:
        fusion.merge(terminal, initial)
    result = fusion.machine()

    log.debug("Closed machine", details={"pairs": len(pairs), **result.summary()})

    return result
