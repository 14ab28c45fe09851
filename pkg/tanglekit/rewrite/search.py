"""Bounded bidirectional search for a move sequence relating two machines."""

from dataclasses import dataclass, field
from typing import Any
import enum

import tanglekit.log as log
from tanglekit.config import get_max_states
from tanglekit.errors import MoveError
from tanglekit.machine.model import Machine
from tanglekit.quandle.automorphism import AffineAutomorphism
from tanglekit.rewrite.canonical import canonical_key, canonical_labeling
from tanglekit.rewrite.invariants import InvariantProfile, invariant_profile
from tanglekit.rewrite.moves import (
    ALL_KINDS,
    SHRINKING_KINDS,
    MoveKind,
    MoveSite,
    apply_move,
    apply_unchecked,
    enumerate_moves,
    inverse_site,
    replay,
)


class SearchStatus(enum.Enum):
    FOUND = "found"
    NOT_FOUND_WITHIN_BUDGET = "not_found_within_budget"
    DISTINGUISHED_BY_INVARIANT = "distinguished_by_invariant"


@dataclass(frozen=True)
class SearchBudget:
    """Limits of an equivalence search.

    Attributes:
        max_moves (int): Longest move sequence considered.
        max_states (int): Distinct machines visited per tier, both sides together.
        max_stabilizations (int): Largest net number of stabilizations on either side.
    """

    max_moves: int = 8
    max_states: int = field(default_factory=get_max_states)
    max_stabilizations: int = 2


@dataclass
class SearchResult:
    status: SearchStatus
    moves: list[MoveSite] | None = None
    states: int = 0
    tier: int | None = None
    profiles: tuple[InvariantProfile, InvariantProfile] | None = None
    start: Machine | None = None

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"status": self.status.value, "states": self.states}
        if self.moves is not None:
            data["moves"] = [site.to_json() for site in self.moves]
            data["length"] = len(self.moves)
        if self.tier is not None:
            data["tier"] = self.tier
        if self.profiles is not None:
            data["profiles"] = [p.model_dump() for p in self.profiles]
        return data


def _stab_delta(site: MoveSite) -> int:
    if site.kind is MoveKind.STAB_PLUS:
        return 1
    if site.kind is MoveKind.STAB_MINUS:
        return -1
    return 0


@dataclass
class _Node:
    machine: Machine
    depth: int
    stabilizations: int
    parent: bytes | None = None
    site: MoveSite | None = None


class _Side:
    def __init__(self, machine: Machine, key: bytes):
        self.nodes: dict[bytes, _Node] = {key: _Node(machine, 0, 0)}
        self.frontier: list[bytes] = [key]
        self.depth = 0

    def path(self, key: bytes) -> list[_Node]:
        """Nodes from the root to ``key``."""
        nodes = []
        while key is not None:
            node = self.nodes[key]
            nodes.append(node)
            key = node.parent
        return nodes[::-1]


def _translate(site: MoveSite, mapping: dict[str, str], taken: set[str]) -> MoveSite:
    fresh = tuple(site.fresh)
    if fresh and (taken & set(fresh) or len(set(fresh)) != len(fresh)):
        fresh = ()
    return site.renamed(mapping, fresh)


def _reconstruct(a_side: _Side, b_side: _Side, key: bytes) -> list[MoveSite]:
    """Moves from the root of ``a_side`` to the root of ``b_side`` through the meeting key."""
    sites = [node.site for node in a_side.path(key)[1:]]
    current = a_side.nodes[key].machine

    b_path = b_side.path(key)
    for index in range(len(b_path) - 1, 0, -1):
        child = b_path[index]
        parent = b_path[index - 1]
        undo = inverse_site(parent.machine, child.site, child.machine)
        _, order_child = canonical_labeling(child.machine)
        _, order_current = canonical_labeling(current)
        mapping = dict(zip(order_child, order_current))
        step = _translate(undo, mapping, set(current.registers))
        current = apply_move(current, step)
        sites.append(step)
    return sites


def _bfs(
    a: Machine, b: Machine, kinds: tuple[MoveKind, ...], budget: SearchBudget
) -> tuple[list[MoveSite] | None, int]:
    key_a = canonical_key(a)
    key_b = canonical_key(b)
    sides = [_Side(a, key_a), _Side(b, key_b)]
    states = 2

    while sides[0].depth + sides[1].depth < budget.max_moves:
        live = [s for s in (0, 1) if sides[s].frontier]
        if not live:
            break
        index = min(live, key=lambda s: len(sides[s].frontier))
        side = sides[index]
        other = sides[1 - index]
        next_frontier: list[bytes] = []

        for key in side.frontier:
            node = side.nodes[key]
            for site in enumerate_moves(node.machine, kinds):
                stabilizations = node.stabilizations + _stab_delta(site)
                if abs(stabilizations) > budget.max_stabilizations:
                    continue
                child = apply_unchecked(node.machine, site)
                child_key = canonical_key(child)
                if child_key in side.nodes:
                    continue
                side.nodes[child_key] = _Node(child, node.depth + 1, stabilizations, key, site)
                next_frontier.append(child_key)
                states += 1
                if child_key in other.nodes:
                    return _reconstruct(sides[0], sides[1], child_key), states
                if states >= budget.max_states:
                    log.debug("Search state budget exhausted", details={"states": states})
                    return None, states

        side.frontier = next_frontier
        side.depth += 1
        log.debug(
            "Search layer done",
            details={"side": "ab"[index], "depth": side.depth, "frontier": len(next_frontier), "states": states},
        )

    return None, states


def search_equivalent(
    a: Machine,
    b: Machine,
    budget: SearchBudget | None = None,
    automorphism: AffineAutomorphism | None = None,
) -> SearchResult:
    """
    Look for a move sequence taking ``a`` to a relabeling of ``b``.

    Different invariant profiles prove the machines inequivalent. Otherwise a bidirectional
    breadth-first search runs twice: first with the moves that never grow the machine, then with
    every move. Failing both is inconclusive, never a proof of inequivalence.

    Args:
        a (Machine): The start machine, fully coloured.
        b (Machine): The goal machine, fully coloured, over the same quandle.
        budget (SearchBudget | None): Search limits.
        automorphism (AffineAutomorphism | None): Applied to every colour of ``a`` first.

    Returns:
        SearchResult: The replayable move sequence when found.
    """
    budget = budget or SearchBudget()
    if a.quandle != b.quandle:
        raise MoveError("Machines over different quandles cannot be compared")

    if automorphism is not None:
        automorphism.check(a.quandle)
        a = a.with_colors({r: automorphism(a.quandle, c) for r, c in a.colors})

    profiles = (invariant_profile(a), invariant_profile(b))
    if profiles[0] != profiles[1]:
        log.info("Machines are distinguished by their invariant profiles")
        return SearchResult(SearchStatus.DISTINGUISHED_BY_INVARIANT, profiles=profiles, start=a)

    if canonical_key(a) == canonical_key(b):
        return SearchResult(SearchStatus.FOUND, [], 1, 0, profiles, a)

    total = 0
    for tier, kinds in enumerate((SHRINKING_KINDS, ALL_KINDS), start=1):
        log.debug("Searching tier {}", tier, details={"kinds": [k.value for k in kinds]})
        moves, states = _bfs(a, b, kinds, budget)
        total += states
        if moves is not None:
            final = replay(a, moves)
            if canonical_key(final) != canonical_key(b):
                raise MoveError("Replayed move sequence does not reach the goal machine")
            log.info("Found a sequence of {} moves", len(moves), details={"tier": tier, "states": total})
            return SearchResult(SearchStatus.FOUND, moves, total, tier, profiles, a)

    log.info("No move sequence within budget", details={"states": total})
    return SearchResult(SearchStatus.NOT_FOUND_WITHIN_BUDGET, None, total, None, profiles, a)

