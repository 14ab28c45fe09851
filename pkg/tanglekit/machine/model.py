"""The machine quintuple: components, agents, patient edges, operation labels and colouring."""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping
import enum

import tanglekit.log as log
from tanglekit.errors import MachineStructureError, QuandleError
from tanglekit.quandle.color import ColorValue
from tanglekit.quandle.ops import OpLabel
from tanglekit.quandle.quandle import Quandle

PATH = "path"
CYCLE = "cycle"
COMPONENT_KINDS = (PATH, CYCLE)

Edge = tuple[str, str]


class Direction(enum.Enum):
    """Which end of a patient edge is the input.

    FORWARD is ``ρ(v) ⊲ ρ(u) = ρ(w)`` for the edge ``(v, w)``; BACKWARD is ``ρ(w) ⊲ ρ(u) = ρ(v)``.
    """

    FORWARD = "v→w"
    BACKWARD = "w→v"

    @staticmethod
    def parse(value: "str | Direction") -> "Direction":
        if isinstance(value, Direction):
            return value
        text = str(value).strip().replace("->", "→")
        for direction in Direction:
            if direction.value == text or direction.name.lower() == text.lower():
                return direction
        raise MachineStructureError("Unknown patient direction '{}'".format(value))

    def flipped(self) -> "Direction":
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


@dataclass(frozen=True)
class Patient:
    edge: Edge
    direction: Direction = Direction.FORWARD

    def __post_init__(self):
        object.__setattr__(self, "edge", tuple(self.edge))

    def __lt__(self, other: "Patient") -> bool:
        return (self.edge, self.direction.value) < (other.edge, other.direction.value)

    @property
    def input(self) -> str:
        return self.edge[0] if self.direction is Direction.FORWARD else self.edge[1]

    @property
    def output(self) -> str:
        return self.edge[1] if self.direction is Direction.FORWARD else self.edge[0]


@dataclass(frozen=True)
class Agent:
    """A register acting with ``op`` on the edges of ``patients``; an empty tuple is allowed."""

    register: str
    op: OpLabel
    patients: tuple[Patient, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "patients", tuple(sorted(self.patients)))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(p.edge for p in self.patients)


@dataclass(frozen=True)
class Component:
    kind: str
    registers: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "registers", tuple(self.registers))
        if self.kind not in COMPONENT_KINDS:
            raise MachineStructureError("Unknown component kind '{}'".format(self.kind))
        if not self.registers:
            raise MachineStructureError("Components must contain at least one register")

    @property
    def edges(self) -> tuple[Edge, ...]:
        regs = self.registers
        edges = [(regs[i], regs[i + 1]) for i in range(len(regs) - 1)]
        if self.kind == CYCLE:
            edges.append((regs[-1], regs[0]))
        return tuple(edges)

    @property
    def is_cycle(self) -> bool:
        return self.kind == CYCLE


@dataclass(frozen=True)
class Machine:
    """A coloured machine M = (G, S, φ, ϱ, ρ).

    G is the disjoint union of ``components``; the agents carry S, φ (their patient edges with
    direction flags) and ϱ (their operation). ``colors`` is the possibly partial colouring ρ.
    Machines are immutable; every operation returns a new one.

    Raises:
        MachineStructureError: If the components overlap, a patient edge does not exist or is
            acted on twice, or a colour does not belong to the quandle's carrier.
    """

    quandle: Quandle
    components: tuple[Component, ...]
    agents: tuple[Agent, ...] = ()
    colors: Any = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "agents", tuple(sorted(self.agents, key=lambda a: a.register)))

        raw = dict(self.colors) if not isinstance(self.colors, Mapping) else self.colors
        colors: list[tuple[str, ColorValue]] = []
        for register, value in raw.items():
            if value is None:
                continue
            try:
                colors.append((register, self.quandle.color(value)))
            except QuandleError as e:
                raise MachineStructureError("Register '{}': {}".format(register, e))
        object.__setattr__(self, "colors", tuple(sorted(colors, key=lambda c: c[0])))

        self._check_structure()

    def _check_structure(self):
        seen: set[str] = set()
        for component in self.components:
            for register in component.registers:
                if not isinstance(register, str) or not register:
                    raise MachineStructureError("Register ids must be non-empty strings")
                if register in seen:
                    raise MachineStructureError("Register '{}' appears twice".format(register))
                seen.add(register)

        edges = set(self.edges)
        acted: dict[Edge, str] = {}
        agent_registers: set[str] = set()
        for agent in self.agents:
            if agent.register not in seen:
                raise MachineStructureError("Agent '{}' is not a register".format(agent.register))
            if agent.register in agent_registers:
                raise MachineStructureError("Register '{}' is an agent twice".format(agent.register))
            agent_registers.add(agent.register)
            if not self.quandle.is_admissible(agent.op):
                raise MachineStructureError(
                    "Agent '{}' uses {} which is not in the quandle".format(agent.register, agent.op.code)
                )
            for patient in agent.patients:
                if patient.edge not in edges:
                    raise MachineStructureError(
                        "Agent '{}' acts on {} which is not an edge".format(agent.register, list(patient.edge))
                    )
                if patient.edge in acted:
                    raise MachineStructureError(
                        "Edge {} is acted on by both '{}' and '{}'".format(
                            list(patient.edge), acted[patient.edge], agent.register
                        )
                    )
                acted[patient.edge] = agent.register

        for register, _ in self.colors:
            if register not in seen:
                raise MachineStructureError("Colour given for unknown register '{}'".format(register))

    @cached_property
    def registers(self) -> tuple[str, ...]:
        return tuple(r for c in self.components for r in c.registers)

    @cached_property
    def position(self) -> dict[str, tuple[int, int]]:
        """Register id to (component index, index within the component)."""
        return {r: (ci, i) for ci, c in enumerate(self.components) for i, r in enumerate(c.registers)}

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(e for c in self.components for e in c.edges)

    @cached_property
    def agent_map(self) -> dict[str, Agent]:
        return {a.register: a for a in self.agents}

    @cached_property
    def _actors(self) -> dict[Edge, tuple[Agent, Patient]]:
        return {p.edge: (a, p) for a in self.agents for p in a.patients}

    @cached_property
    def color_map(self) -> dict[str, ColorValue]:
        return dict(self.colors)

    def actor_of(self, edge: Edge) -> tuple[Agent, Patient] | None:
        return self._actors.get(tuple(edge))

    def color(self, register: str) -> ColorValue | None:
        return self.color_map.get(register)

    def is_agent(self, register: str) -> bool:
        return register in self.agent_map

    def component_of(self, register: str) -> Component:
        return self.components[self.position[register][0]]

    def successor(self, register: str) -> str | None:
        ci, i = self.position[register]
        component = self.components[ci]
        if i + 1 < len(component.registers):
            return component.registers[i + 1]
        return component.registers[0] if component.is_cycle else None

    def predecessor(self, register: str) -> str | None:
        ci, i = self.position[register]
        component = self.components[ci]
        if i > 0:
            return component.registers[i - 1]
        return component.registers[-1] if component.is_cycle else None

    def incident_edges(self, register: str) -> list[Edge]:
        """Edges into and out of ``register`` (a 1-cycle's self-edge appears once)."""
        result: list[Edge] = []
        before = self.predecessor(register)
        if before is not None:
            result.append((before, register))
        after = self.successor(register)
        if after is not None and (register, after) not in result:
            result.append((register, after))
        return result

    @property
    def is_complete(self) -> bool:
        return len(self.colors) == len(self.registers)

    def with_colors(self, colors: Mapping[str, Any]) -> "Machine":
        """The same machine with the colouring replaced by ``colors``."""
        return Machine(self.quandle, self.components, self.agents, dict(colors))

    def with_quandle(self, quandle: Quandle) -> "Machine":
        return Machine(quandle, self.components, self.agents, self.color_map)

    def without_colors(self, registers: Iterable[str] | None = None) -> "Machine":
        drop = set(self.registers if registers is None else registers)
        return self.with_colors({r: c for r, c in self.colors if r not in drop})

    def rename_registers(self, mapping: Mapping[str, str]) -> "Machine":
        """
        Rename registers; ids missing from ``mapping`` are kept.

        Raises:
            MachineStructureError: If two registers end up with the same id.
        """

        def name(r: str) -> str:
            return mapping.get(r, r)

        components = tuple(Component(c.kind, tuple(name(r) for r in c.registers)) for c in self.components)
        agents = tuple(
            Agent(
                name(a.register),
                a.op,
                tuple(Patient((name(p.edge[0]), name(p.edge[1])), p.direction) for p in a.patients),
            )
            for a in self.agents
        )
        colors = {name(r): c for r, c in self.colors}
        return Machine(self.quandle, components, agents, colors)

    def summary(self) -> dict[str, Any]:
        return {
            "registers": len(self.registers),
            "paths": sum(1 for c in self.components if not c.is_cycle),
            "cycles": sum(1 for c in self.components if c.is_cycle),
            "agents": len(self.agents),
            "colored": len(self.colors),
        }


class MachineBuilder:
    """Assemble a machine one component and agent at a time.

    Example:
        m = (
            MachineBuilder(linear_quandle("1/2"))
            .path("x", "x'")
            .path("y")
            .agent("y", patients=[("x", "x'")])
            .color("x", 0).color("y", 2)
            .build()
        )
    """

    def __init__(self, quandle: Quandle):
        self.quandle = quandle
        self._components: list[Component] = []
        self._agents: dict[str, tuple[OpLabel, list[Patient]]] = {}
        self._colors: dict[str, Any] = {}

    def path(self, *registers: str) -> "MachineBuilder":
        self._components.append(Component(PATH, tuple(registers)))
        return self

    def cycle(self, *registers: str) -> "MachineBuilder":
        self._components.append(Component(CYCLE, tuple(registers)))
        return self

    def agent(
        self,
        register: str,
        op: OpLabel | int = 0,
        patients: Iterable[tuple] = (),
    ) -> "MachineBuilder":
        """
        Declare ``register`` an agent.

        Args:
            register (str): The acting register.
            op (OpLabel | int): The operation, or an index into the quandle's operations.
            patients: ``(v, w)`` or ``(v, w, direction)`` tuples; the default direction is forward.
        """
        label = self.quandle.operation(op) if isinstance(op, int) else op
        result: list[Patient] = []
        for patient in patients:
            direction = Direction.parse(patient[2]) if len(patient) > 2 else Direction.FORWARD
            result.append(Patient((patient[0], patient[1]), direction))
        if register in self._agents:
            old_op, old = self._agents[register]
            if old_op != label:
                raise MachineStructureError("Agent '{}' declared with two operations".format(register))
            result = old + result
        self._agents[register] = (label, result)
        return self

    def color(self, register: str, value: Any) -> "MachineBuilder":
        self._colors[register] = value
        return self

    def colors(self, values: Mapping[str, Any]) -> "MachineBuilder":
        self._colors.update(values)
        return self

    def build(self) -> Machine:
        machine = Machine(
            self.quandle,
            tuple(self._components),
            tuple(Agent(r, op, tuple(p)) for r, (op, p) in self._agents.items()),
            self._colors,
        )
        log.trace("Built machine", details=machine.summary())
        return machine
