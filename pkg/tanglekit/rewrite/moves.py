"""Reidemeister moves and stabilization on machines.

Every move is described by a :class:`MoveSite` naming the registers it is anchored at:

* ``R1+ (r, op, direction, side)`` inserts a kink register ``n`` next to ``r``; ``n`` is coloured
  like ``r`` and acts on the edge joining them.
* ``R1- (n)`` removes such a kink.
* ``R2+ (r, u, direction)`` inserts ``n1, n2`` after ``r``; the agent ``u`` acts on ``(r, n1)`` with
  ``direction`` and on ``(n1, n2)`` with the opposite direction.
* ``R2- (r, n1, n2, u)`` removes such a pair.
* ``R3 (u, u', w, bottoms)`` slides the crossing of agent ``u`` across the crossing where ``w`` acts
  on the edge ``{u, u'}``. Each bottom ``(p, m, q)`` is a patient strand with ``u`` acting on
  ``{p, m}`` and ``w`` on ``{m, q}``; every patient edge of ``u`` must be a bottom. Afterwards ``u'``
  is the agent, ``w`` acts on ``{p, m}``, ``u'`` on ``{m, q}`` and ``m`` is recoloured.
* ``Stab+ (r, op)`` turns a non-agent into an agent acting on nothing; ``Stab- (r)`` undoes it.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterable
import enum

import tanglekit.log as log
from tanglekit.errors import MoveError, QuandleError, StaleMoveError
from tanglekit.machine.model import CYCLE, Agent, Component, Direction, Edge, Machine, Patient
from tanglekit.quandle.color import colors_close
from tanglekit.quandle.ops import OpLabel
from tanglekit.quandle.quandle import apply, invert

AFTER = "after"
BEFORE = "before"


class MoveKind(enum.Enum):
    """The rewrite moves."""

    R1_PLUS = "R1+"
    R1_MINUS = "R1-"
    R2_PLUS = "R2+"
    R2_MINUS = "R2-"
    R3 = "R3"
    STAB_PLUS = "Stab+"
    STAB_MINUS = "Stab-"

    @staticmethod
    def parse(value: "str | MoveKind") -> "MoveKind":
        if isinstance(value, MoveKind):
            return value
        text = str(value).replace("−", "-")
        for kind in MoveKind:
            if kind.value == text:
                return kind
        raise MoveError("Unknown move kind '{}'".format(value))


ALL_KINDS = tuple(MoveKind)

SHRINKING_KINDS = (MoveKind.R1_MINUS, MoveKind.R2_MINUS, MoveKind.R3, MoveKind.STAB_MINUS)
"""Moves that never add registers or agents."""


Bottom = tuple[str, str, str]


@dataclass(frozen=True)
class MoveSite:
    """One applicable move.

    Attributes:
        kind (MoveKind): The move.
        registers (tuple[str, ...]): The anchors, see the module documentation.
        op (OpLabel | None): The operation of a new agent (R1+, Stab+).
        direction (Direction | None): The patient direction of R1+ and R2+.
        side (str | None): "after" or "before" for R1+.
        bottoms (tuple[Bottom, ...]): The (p, m, q) triples of R3.
        fresh (tuple[str, ...]): Preferred ids for inserted registers. Not part of the site's identity.
    """

    kind: MoveKind
    registers: tuple[str, ...]
    op: OpLabel | None = None
    direction: Direction | None = None
    side: str | None = None
    bottoms: tuple[Bottom, ...] = ()
    fresh: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "registers", tuple(self.registers))
        object.__setattr__(self, "bottoms", tuple(sorted(tuple(b) for b in self.bottoms)))
        object.__setattr__(self, "fresh", tuple(self.fresh))

    @property
    def sort_key(self) -> tuple:
        return (
            self.kind.value,
            self.registers,
            self.op.code if self.op is not None else "",
            self.direction.value if self.direction is not None else "",
            self.side or "",
            self.bottoms,
        )

    @property
    def is_stabilization(self) -> bool:
        return self.kind in (MoveKind.STAB_PLUS, MoveKind.STAB_MINUS)

    def renamed(self, mapping: dict[str, str], fresh: tuple[str, ...] | None = None) -> "MoveSite":
        def name(r: str) -> str:
            return mapping.get(r, r)

        return MoveSite(
            self.kind,
            tuple(name(r) for r in self.registers),
            self.op,
            self.direction,
            self.side,
            tuple(tuple(name(r) for r in b) for b in self.bottoms),
            self.fresh if fresh is None else fresh,
        )

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind.value, "registers": list(self.registers)}
        if self.op is not None:
            data["op"] = self.op.to_json()
        if self.direction is not None:
            data["direction"] = self.direction.value
        if self.side is not None:
            data["side"] = self.side
        if self.bottoms:
            data["bottoms"] = [list(b) for b in self.bottoms]
        if self.fresh:
            data["fresh"] = list(self.fresh)
        return data

    @staticmethod
    def from_json(data: dict[str, Any], precision: str | None = None) -> "MoveSite":
        try:
            return MoveSite(
                MoveKind.parse(data["kind"]),
                tuple(data["registers"]),
                OpLabel.from_json(data["op"], precision) if data.get("op") is not None else None,
                Direction.parse(data["direction"]) if data.get("direction") is not None else None,
                data.get("side"),
                tuple(tuple(b) for b in data.get("bottoms", ())),
                tuple(data.get("fresh", ())),
            )
        except (KeyError, TypeError) as e:
            raise MoveError("Malformed move {}: {}".format(data, e))

    def __str__(self) -> str:
        parts = [self.kind.value, ",".join(self.registers)]
        if self.op is not None:
            parts.append(self.op.code)
        if self.direction is not None:
            parts.append(self.direction.value)
        if self.side is not None:
            parts.append(self.side)
        if self.bottoms:
            parts.append(";".join("/".join(b) for b in self.bottoms))
        return " ".join(parts)


def r1_plus(
    register: str, op: OpLabel, direction: Direction = Direction.FORWARD, side: str = AFTER, fresh=()
) -> MoveSite:
    return MoveSite(MoveKind.R1_PLUS, (register,), op, direction, side, (), tuple(fresh))


def r1_minus(register: str) -> MoveSite:
    return MoveSite(MoveKind.R1_MINUS, (register,))


def r2_plus(register: str, agent: str, direction: Direction = Direction.FORWARD, fresh=()) -> MoveSite:
    return MoveSite(MoveKind.R2_PLUS, (register, agent), None, direction, None, (), tuple(fresh))


def r2_minus(register: str, first: str, second: str, agent: str) -> MoveSite:
    return MoveSite(MoveKind.R2_MINUS, (register, first, second, agent))


def r3(agent: str, target: str, crossing: str, bottoms: Iterable[Bottom]) -> MoveSite:
    return MoveSite(MoveKind.R3, (agent, target, crossing), bottoms=tuple(bottoms))


def stab_plus(register: str, op: OpLabel) -> MoveSite:
    return MoveSite(MoveKind.STAB_PLUS, (register,), op)


def stab_minus(register: str) -> MoveSite:
    return MoveSite(MoveKind.STAB_MINUS, (register,))


def fresh_id(taken: set[str], stem: str) -> str:
    """The first ``stem~i`` (i = 1, 2, ...) not in ``taken``."""
    stem = stem.split("~")[0]
    i = 1
    while "{}~{}".format(stem, i) in taken:
        i += 1
    return "{}~{}".format(stem, i)


def edge_between(m: Machine, a: str, b: str) -> Edge | None:
    """The single edge joining ``a`` and ``b``, None if there is none or there are two."""
    found = []
    if m.successor(a) == b:
        found.append((a, b))
    if m.predecessor(a) == b and (b, a) not in found:
        found.append((b, a))
    return found[0] if len(found) == 1 else None


def walking_sign(patient: Patient, start: str) -> int:
    """+1 when walking from ``start`` across the patient edge goes from input to output."""
    return 1 if patient.input == start else -1


def direction_for(edge: Edge, start: str, sign: int) -> Direction:
    """The direction that gives ``edge`` the walking sign ``sign`` from ``start``."""
    source = start if sign > 0 else (edge[1] if edge[0] == start else edge[0])
    return Direction.FORWARD if edge[0] == source else Direction.BACKWARD


def _signed(m: Machine, op: OpLabel, x, y, sign: int):
    return apply(m.quandle, op, x, y) if sign > 0 else invert(m.quandle, op, x, y)


def _other_edge(m: Machine, register: str, edge: Edge) -> Edge | None:
    """The edge at ``register`` other than ``edge``."""
    if edge[1] == register:
        after = m.successor(register)
        return None if after is None else (register, after)
    before = m.predecessor(register)
    return None if before is None else (before, register)


def _r1_plus_sites(m: Machine) -> list[MoveSite]:
    sites = []
    for register in m.registers:
        for op in m.quandle.operation_pool:
            for direction in Direction:
                for side in (AFTER, BEFORE):
                    sites.append(r1_plus(register, op, direction, side))
    return sites


def _r1_minus_sites(m: Machine) -> list[MoveSite]:
    sites = []
    for agent in m.agents:
        if len(agent.patients) != 1:
            continue
        edge = agent.patients[0].edge
        n = agent.register
        if n not in edge or edge[0] == edge[1]:
            continue
        r = edge[0] if edge[1] == n else edge[1]
        if colors_close(m.color(r), m.color(n)):
            sites.append(r1_minus(n))
    return sites


def _r2_plus_sites(m: Machine) -> list[MoveSite]:
    sites = []
    for register in m.registers:
        for agent in m.agents:
            for direction in Direction:
                sign = 1 if direction is Direction.FORWARD else -1
                try:
                    _signed(m, agent.op, m.color(register), m.color(agent.register), sign)
                except QuandleError:
                    continue
                sites.append(r2_plus(register, agent.register, direction))
    return sites


def _r2_minus_sites(m: Machine) -> list[MoveSite]:
    sites = []
    for r in m.registers:
        n1 = m.successor(r)
        if n1 is None or n1 == r:
            continue
        n2 = m.successor(n1)
        if n2 is None or n2 in (r, n1):
            continue
        if m.is_agent(n1) or m.is_agent(n2):
            continue
        first = m.actor_of((r, n1))
        second = m.actor_of((n1, n2))
        if first is None or second is None or first[0].register != second[0].register:
            continue
        if first[1].direction == second[1].direction:
            continue
        if colors_close(m.color(r), m.color(n2)):
            sites.append(r2_minus(r, n1, n2, first[0].register))
    return sites


def _r3_sites(m: Machine) -> list[MoveSite]:
    sites = []
    for agent in m.agents:
        u = agent.register
        for target in {m.successor(u), m.predecessor(u)}:
            if target is None or target == u or m.is_agent(target):
                continue
            edge = edge_between(m, u, target)
            actor = edge and m.actor_of(edge)
            if not actor:
                continue
            w = actor[0].register
            if w in (u, target):
                continue
            sign = walking_sign(actor[1], u)
            blocked = {u, target, w}

            options: list[list[tuple[Bottom, Edge]]] = []
            for patient in agent.patients:
                choices = []
                for p, mid in (patient.edge, patient.edge[::-1]):
                    if p == mid or m.is_agent(mid):
                        continue
                    other = _other_edge(m, mid, patient.edge)
                    if other is None:
                        continue
                    q = other[0] if other[1] == mid else other[1]
                    if q in (p, mid) or {p, mid, q} & blocked:
                        continue
                    crossing = m.actor_of(other)
                    if crossing is None or crossing[0].register != w:
                        continue
                    if walking_sign(crossing[1], mid) != sign:
                        continue
                    choices.append(((p, mid, q), other))
                options.append(choices)

            for combo in product(*options):
                w_edges = [e for _, e in combo]
                if len(set(w_edges)) != len(w_edges):
                    continue
                sites.append(r3(u, target, w, [b for b, _ in combo]))
    return sites


def _stab_plus_sites(m: Machine) -> list[MoveSite]:
    return [
        stab_plus(r, op) for r in m.registers if not m.is_agent(r) for op in m.quandle.operation_pool
    ]


def _stab_minus_sites(m: Machine) -> list[MoveSite]:
    return [stab_minus(a.register) for a in m.agents if not a.patients]


_ENUMERATORS = {
    MoveKind.R1_PLUS: _r1_plus_sites,
    MoveKind.R1_MINUS: _r1_minus_sites,
    MoveKind.R2_PLUS: _r2_plus_sites,
    MoveKind.R2_MINUS: _r2_minus_sites,
    MoveKind.R3: _r3_sites,
    MoveKind.STAB_PLUS: _stab_plus_sites,
    MoveKind.STAB_MINUS: _stab_minus_sites,
}


def enumerate_moves(m: Machine, kinds: Iterable[MoveKind | str] | None = None) -> list[MoveSite]:
    """
    Every applicable move of the given kinds, in a deterministic order.

    Args:
        m (Machine): A fully coloured machine.
        kinds: Restrict to these kinds; all kinds by default.

    Returns:
        list[MoveSite]: The sites, sorted.

    Raises:
        MoveError: If the machine is not fully coloured.
    """
    if not m.is_complete:
        raise MoveError("Moves need a fully coloured machine")
    selected = ALL_KINDS if kinds is None else tuple(MoveKind.parse(k) for k in kinds)
    sites: set[MoveSite] = set()
    for kind in selected:
        sites.update(_ENUMERATORS[kind](m))
    return sorted(sites, key=lambda s: s.sort_key)


class _Edit:
    """A mutable copy of a machine used while a move rewrites it."""

    def __init__(self, m: Machine):
        self.quandle = m.quandle
        self.components: list[list] = [[c.kind, list(c.registers)] for c in m.components]
        self.agents: dict[str, list] = {
            a.register: [a.op, [(p.edge, p.direction) for p in a.patients]] for a in m.agents
        }
        self.colors = dict(m.color_map)

    def _locate(self, register: str) -> tuple[int, int]:
        for ci, (_, regs) in enumerate(self.components):
            if register in regs:
                return ci, regs.index(register)
        raise MoveError("Register '{}' not found".format(register))

    def _neighbour(self, register: str, step: int) -> str | None:
        ci, i = self._locate(register)
        kind, regs = self.components[ci]
        j = i + step
        if 0 <= j < len(regs):
            return regs[j]
        return regs[j % len(regs)] if kind == CYCLE else None

    def rename_edge(self, old: Edge, new: Edge):
        for entry in self.agents.values():
            entry[1] = [(new if e == old else e, d) for e, d in entry[1]]

    def drop_edges(self, edges: set[Edge]):
        for entry in self.agents.values():
            entry[1] = [(e, d) for e, d in entry[1] if e not in edges]

    def add_patient(self, agent: str, edge: Edge, direction: Direction):
        self.agents[agent][1].append((edge, direction))

    def insert(self, register: str, new: list[str], after: bool):
        if after:
            following = self._neighbour(register, 1)
            ci, i = self._locate(register)
            self.components[ci][1][i + 1:i + 1] = new
            if following is not None:
                self.rename_edge((register, following), (new[-1], following))
        else:
            preceding = self._neighbour(register, -1)
            ci, i = self._locate(register)
            self.components[ci][1][i:i] = new
            if preceding is not None:
                self.rename_edge((preceding, register), (preceding, new[0]))

    def remove(self, block: list[str], anchor: str, after: bool):
        """Remove ``block``, which directly follows (or precedes) ``anchor``."""
        chain = [anchor] + block if after else block + [anchor]
        inner = {(chain[k], chain[k + 1]) for k in range(len(chain) - 1)}
        if after:
            following = self._neighbour(block[-1], 1)
            outer = (block[-1], following) if following is not None else None
            replacement = (anchor, following) if following is not None else None
        else:
            preceding = self._neighbour(block[0], -1)
            outer = (preceding, block[0]) if preceding is not None else None
            replacement = (preceding, anchor) if preceding is not None else None
        self.drop_edges(inner)
        if outer is not None:
            self.rename_edge(outer, replacement)
        ci, _ = self._locate(anchor)
        self.components[ci][1] = [r for r in self.components[ci][1] if r not in block]
        for register in block:
            self.colors.pop(register, None)
            self.agents.pop(register, None)

    def machine(self) -> Machine:
        return Machine(
            self.quandle,
            tuple(Component(kind, tuple(regs)) for kind, regs in self.components),
            tuple(Agent(r, op, tuple(Patient(e, d) for e, d in p)) for r, (op, p) in self.agents.items()),
            self.colors,
        )


def _names(m: Machine, site: MoveSite, stem: str, count: int) -> list[str]:
    taken = set(m.registers)
    if site.fresh:
        names = list(site.fresh[:count])
        if len(names) != count or len(set(names)) != count or taken & set(names):
            raise MoveError("Fresh register ids {} are not usable".format(list(site.fresh)))
        return names
    names = []
    for _ in range(count):
        name = fresh_id(taken, stem)
        taken.add(name)
        names.append(name)
    return names


def _apply_r1_plus(m: Machine, site: MoveSite) -> Machine:
    r = site.registers[0]
    (n,) = _names(m, site, r, 1)
    after = site.side != BEFORE
    edit = _Edit(m)
    edit.insert(r, [n], after)
    edit.colors[n] = m.color(r)
    edit.agents[n] = [site.op, [((r, n) if after else (n, r), site.direction)]]
    return edit.machine()


def _apply_r1_minus(m: Machine, site: MoveSite) -> Machine:
    n = site.registers[0]
    edge = m.agent_map[n].patients[0].edge
    edit = _Edit(m)
    if edge[1] == n:
        edit.remove([n], edge[0], after=True)
    else:
        edit.remove([n], edge[1], after=False)
    return edit.machine()


def _apply_r2_plus(m: Machine, site: MoveSite) -> Machine:
    r, u = site.registers
    n1, n2 = _names(m, site, r, 2)
    sign = 1 if site.direction is Direction.FORWARD else -1
    edit = _Edit(m)
    edit.insert(r, [n1, n2], after=True)
    edit.colors[n1] = _signed(m, m.agent_map[u].op, m.color(r), m.color(u), sign)
    edit.colors[n2] = m.color(r)
    edit.add_patient(u, (r, n1), site.direction)
    edit.add_patient(u, (n1, n2), site.direction.flipped())
    return edit.machine()


def _apply_r2_minus(m: Machine, site: MoveSite) -> Machine:
    r, n1, n2, _ = site.registers
    edit = _Edit(m)
    edit.remove([n1, n2], r, after=True)
    return edit.machine()


def _apply_r3(m: Machine, site: MoveSite) -> Machine:
    u, target, w = site.registers
    op_u = m.agent_map[u].op
    op_w = m.agent_map[w].op
    z = m.color(w)
    edit = _Edit(m)
    moved: list[tuple[Edge, Direction]] = []
    for p, mid, q in site.bottoms:
        e_pm = edge_between(m, p, mid)
        e_mq = edge_between(m, mid, q)
        a = walking_sign(m.actor_of(e_pm)[1], p)
        b = walking_sign(m.actor_of(e_mq)[1], mid)
        edit.drop_edges({e_mq})
        edit.add_patient(w, e_pm, direction_for(e_pm, p, b))
        moved.append((e_mq, direction_for(e_mq, mid, a)))
        edit.colors[mid] = _signed(m, op_w, m.color(p), z, b)
    del edit.agents[u]
    edit.agents[target] = [op_u, moved]
    return edit.machine()


def _apply_stab_plus(m: Machine, site: MoveSite) -> Machine:
    edit = _Edit(m)
    edit.agents[site.registers[0]] = [site.op, []]
    return edit.machine()


def _apply_stab_minus(m: Machine, site: MoveSite) -> Machine:
    edit = _Edit(m)
    del edit.agents[site.registers[0]]
    return edit.machine()


_APPLIERS = {
    MoveKind.R1_PLUS: _apply_r1_plus,
    MoveKind.R1_MINUS: _apply_r1_minus,
    MoveKind.R2_PLUS: _apply_r2_plus,
    MoveKind.R2_MINUS: _apply_r2_minus,
    MoveKind.R3: _apply_r3,
    MoveKind.STAB_PLUS: _apply_stab_plus,
    MoveKind.STAB_MINUS: _apply_stab_minus,
}


def apply_unchecked(m: Machine, site: MoveSite) -> Machine:
    """Apply a site known to come from ``enumerate_moves(m)``."""
    return _APPLIERS[site.kind](m, site)


def apply_move(m: Machine, site: MoveSite) -> Machine:
    """
    Rewrite ``m`` at ``site``.

    Args:
        m (Machine): A fully coloured machine.
        site (MoveSite): A site of ``m``.

    Returns:
        Machine: The rewritten, recoloured machine.

    Raises:
        StaleMoveError: If ``site`` is not an applicable move of ``m``.
    """
    if site not in enumerate_moves(m, [site.kind]):
        raise StaleMoveError("Move {} does not apply to this machine".format(site))
    result = apply_unchecked(m, site)
    log.trace("Applied move {}", site)
    return result


def inverse_site(before: Machine, site: MoveSite, after: Machine) -> MoveSite:
    """
    The move that takes ``after`` back to ``before``.

    Removed registers are restored under their old ids.
    """
    kind = site.kind
    if kind is MoveKind.R1_PLUS:
        (n,) = set(after.registers) - set(before.registers)
        return r1_minus(n)
    if kind is MoveKind.R1_MINUS:
        n = site.registers[0]
        patient = before.agent_map[n].patients[0]
        edge = patient.edge
        if edge[1] == n:
            return r1_plus(edge[0], before.agent_map[n].op, patient.direction, AFTER, (n,))
        return r1_plus(edge[1], before.agent_map[n].op, patient.direction, BEFORE, (n,))
    if kind is MoveKind.R2_PLUS:
        r, u = site.registers
        n1 = after.successor(r)
        return r2_minus(r, n1, after.successor(n1), u)
    if kind is MoveKind.R2_MINUS:
        r, n1, n2, u = site.registers
        return r2_plus(r, u, before.actor_of((r, n1))[1].direction, (n1, n2))
    if kind is MoveKind.R3:
        u, target, w = site.registers
        return r3(target, u, w, [(q, mid, p) for p, mid, q in site.bottoms])
    if kind is MoveKind.STAB_PLUS:
        return stab_minus(site.registers[0])
    return stab_plus(site.registers[0], before.agent_map[site.registers[0]].op)


def replay(m: Machine, sites: Iterable[MoveSite]) -> Machine:
    """Apply ``sites`` one after the other, checking each."""
    for site in sites:
        m = apply_move(m, site)
    return m
