"""Canonical keys: a byte encoding of a machine that forgets register ids and patient order."""

from typing import Any
import json

import tanglekit.log as log
from tanglekit.errors import CanonicalizationError
from tanglekit.machine.model import Machine
from tanglekit.quandle.color import color_code

Partition = dict[str, int]


def _normalized(keys: dict[str, Any]) -> Partition:
    """Number the distinct keys in sorted order."""
    ranks = {k: i for i, k in enumerate(sorted(set(keys.values())))}
    return {r: ranks[k] for r, k in keys.items()}


class _LabelingSearch:
    """
    Individualization and refinement over registers.

    A partition numbers the registers; refinement splits cells by the cells of their neighbours
    until nothing changes, and a discrete partition is a leaf whose register order is encoded.
    Leaves with equal encodings differ by an automorphism. Automorphisms that fix the current
    path prune candidates in the same orbit, and an automorphic leaf sends the search back to
    the node where its path left the best leaf's path.
    """

    def __init__(self, m: Machine):
        self.m = m
        self.quandle_code = m.quandle.code
        self.best: tuple[str, list[str], list[str]] | None = None
        self.automorphisms: list[dict[str, str]] = []
        self.leaves = 0

        self.successor = {r: m.successor(r) for r in m.registers}
        self.predecessor = {r: m.predecessor(r) for r in m.registers}
        self.acted_from: dict[str, tuple[str, str]] = {}
        self.acted_into: dict[str, tuple[str, str]] = {}
        for agent in m.agents:
            for p in agent.patients:
                self.acted_from[p.edge[0]] = (agent.register, p.direction.value)
                self.acted_into[p.edge[1]] = (agent.register, p.direction.value)

    def initial(self) -> Partition:
        m = self.m
        keys = {}
        for r in m.registers:
            agent = m.agent_map.get(r)
            component = m.component_of(r)
            keys[r] = (
                color_code(m.color(r)),
                component.kind,
                len(component.registers),
                agent.op.code if agent is not None else "",
                len(agent.patients) if agent is not None else -1,
            )
        return self.refine(_normalized(keys))

    def _signature(self, part: Partition, r: str) -> tuple:
        def cell(register: str | None) -> int:
            return part[register] if register is not None else -1

        def actor(entry: tuple[str, str] | None) -> tuple[int, str]:
            return (part[entry[0]], entry[1]) if entry is not None else (-1, "")

        agent = self.m.agent_map.get(r)
        patients = (
            tuple(sorted((part[p.edge[0]], part[p.edge[1]], p.direction.value) for p in agent.patients))
            if agent is not None
            else ()
        )
        return (
            part[r],
            cell(self.successor[r]),
            cell(self.predecessor[r]),
            actor(self.acted_from.get(r)),
            actor(self.acted_into.get(r)),
            patients,
        )

    def refine(self, part: Partition) -> Partition:
        cells = len(set(part.values()))
        while True:
            refined = _normalized({r: self._signature(part, r) for r in part})
            count = len(set(refined.values()))
            if count == cells:
                return refined
            part, cells = refined, count

    def encode(self, order: list[str]) -> str:
        m = self.m
        index = {r: i for i, r in enumerate(order)}
        rows = []
        for r in order:
            agent = m.agent_map.get(r)
            following = self.successor[r]
            rows.append(
                [
                    color_code(m.color(r)),
                    m.component_of(r).kind,
                    index[following] if following is not None else -1,
                    agent.op.code if agent is not None else "",
                    sorted([index[p.edge[0]], index[p.edge[1]], p.direction.value] for p in agent.patients)
                    if agent is not None
                    else [],
                ]
            )
        return json.dumps([self.quandle_code, rows], separators=(",", ":"))

    def _target_cell(self, part: Partition) -> list[str]:
        cells: dict[int, list[str]] = {}
        for r, c in part.items():
            cells.setdefault(c, []).append(r)
        for c in sorted(cells):
            if len(cells[c]) > 1:
                return sorted(cells[c])
        return []

    def _orbit_roots(self, path: list[str], cell: list[str]) -> dict[str, str]:
        """Union-find roots of ``cell`` under the automorphisms found so far that fix ``path``."""
        parent = {r: r for r in cell}

        def root(r: str) -> str:
            while parent[r] != r:
                parent[r] = parent[parent[r]]
                r = parent[r]
            return r

        for gamma in self.automorphisms:
            if any(gamma[v] != v for v in path):
                continue
            for r in cell:
                image = gamma[r]
                if image in parent:
                    parent[root(r)] = root(image)
        return {r: root(r) for r in cell}

    def visit(self, part: Partition, path: list[str]) -> int | None:
        """Explore below ``path``; returns the depth to go back to after an automorphic leaf."""
        cell = self._target_cell(part)
        if not cell:
            return self._leaf(part, path)

        explored: set[str] = set()
        for v in cell:
            if explored:
                roots = self._orbit_roots(path, cell)
                if roots[v] in {roots[e] for e in explored}:
                    continue
            explored.add(v)
            individualized = {r: (c, 0 if r == v else 1) for r, c in part.items()}
            back = self.visit(self.refine(_normalized(individualized)), path + [v])
            if back is not None and back < len(path):
                return back
        return None

    def _leaf(self, part: Partition, path: list[str]) -> int | None:
        self.leaves += 1
        order = sorted(part, key=part.__getitem__)
        encoded = self.encode(order)
        if self.best is None or encoded < self.best[0]:
            self.best = (encoded, order, path)
            return None
        if encoded == self.best[0]:
            self.automorphisms.append(dict(zip(order, self.best[1])))
            common = 0
            for a, b in zip(path, self.best[2]):
                if a != b:
                    break
                common += 1
            return common
        return None


def canonical_labeling(m: Machine) -> tuple[bytes, list[str]]:
    """
    Compute the canonical key together with a register order that produces it.

    The key lists registers in canonical order, each with its colour, its component kind, the
    position of its successor and, for agents, the operation and patient positions. Two machines
    have equal keys exactly when ``order_a[i] ↦ order_b[i]`` is an isomorphism.

    Raises:
        CanonicalizationError: If a register is uncoloured.
    """
    missing = [r for r in m.registers if m.color(r) is None]
    if missing:
        raise CanonicalizationError("Cannot canonicalize uncoloured registers: {}".format(", ".join(missing)))

    search = _LabelingSearch(m)
    search.visit(search.initial(), [])
    encoded, order, _ = search.best

    log.trace(
        "Canonical labeling",
        details={"leaves": search.leaves, "automorphisms": len(search.automorphisms)},
    )

    return encoded.encode("utf-8"), order


def canonical_key(m: Machine) -> bytes:
    return canonical_labeling(m)[0]


def isomorphism(source: Machine, target: Machine) -> dict[str, str] | None:
    """A register map taking ``source`` onto ``target``, or None when their keys differ."""
    key_s, order_s = canonical_labeling(source)
    key_t, order_t = canonical_labeling(target)
    if key_s != key_t:
        return None
    return dict(zip(order_s, order_t))
