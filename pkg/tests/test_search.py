from fractions import Fraction

import numpy as np
import pytest

from tanglekit.aqc.machines import build_aqc_triple
from tanglekit.errors import MoveError
from tanglekit.machine.coloring import solve_coloring
from tanglekit.machine.model import Machine
from tanglekit.quandle.automorphism import AffineAutomorphism
from tanglekit.rewrite.canonical import canonical_key
from tanglekit.rewrite.moves import MoveKind, apply_move, enumerate_moves, replay
from tanglekit.rewrite.search import SearchBudget, SearchStatus, search_equivalent

GROWING_KINDS = (MoveKind.R1_PLUS, MoveKind.R2_PLUS, MoveKind.STAB_PLUS, MoveKind.R3)

QUICK_WALKS = 4
FULL_WALKS = 15


def random_walk(m: Machine, length: int, seed: int) -> Machine:
    """Apply ``length`` moves drawn from GROWING_KINDS, whose inverses all shrink or keep size."""
    rng = np.random.default_rng(seed)
    for _ in range(length):
        sites = enumerate_moves(m, GROWING_KINDS)
        m = apply_move(m, sites[int(rng.integers(len(sites)))])
    return m


def test_toy_equivalence(toy_left: Machine, toy_right: Machine):

    result = search_equivalent(toy_left, toy_right, SearchBudget(max_moves=4))

    assert result.status is SearchStatus.FOUND
    assert len(result.moves) == 1
    assert result.moves[0].kind is MoveKind.R3
    assert result.tier == 1
    assert canonical_key(replay(toy_left, result.moves)) == canonical_key(toy_right)

    data = result.to_json()
    assert data["status"] == "found"
    assert data["length"] == 1


def test_identical_machines_need_no_moves(toy_left: Machine):

    result = search_equivalent(toy_left, toy_left)

    assert result.found
    assert result.moves == []


def test_relabelled_machines_are_equivalent(toy_left: Machine):

    renamed = toy_left.rename_registers({"X": "A", "X1": "A1", "X2": "A2"})

    assert search_equivalent(toy_left, renamed).moves == []


def test_different_endpoints_are_distinguished(toy_left: Machine):

    other = solve_coloring(toy_left.with_colors({"X": 5, "Y": 8, "Z": 0}))
    result = search_equivalent(toy_left, other)

    assert result.status is SearchStatus.DISTINGUISHED_BY_INVARIANT
    assert result.profiles[0] != result.profiles[1]
    assert result.moves is None


def test_budget_exhaustion_is_inconclusive(toy_left: Machine, toy_right: Machine):

    result = search_equivalent(toy_left, toy_right, SearchBudget(max_moves=0))

    assert result.status is SearchStatus.NOT_FOUND_WITHIN_BUDGET
    assert not result.found


def test_automorphism_is_applied_first(toy_left: Machine):

    f = AffineAutomorphism(scale=Fraction(2), shift=Fraction(1))
    image = toy_left.with_colors({r: f(toy_left.quandle, c) for r, c in toy_left.colors})

    assert search_equivalent(toy_left, image).status is SearchStatus.DISTINGUISHED_BY_INVARIANT
    assert search_equivalent(toy_left, image, automorphism=f).moves == []


def test_different_quandles_cannot_be_compared(toy_left: Machine):

    triple = build_aqc_triple(Fraction(1, 3))

    with pytest.raises(MoveError):
        search_equivalent(toy_left, triple.middle)


def test_aqc_machines_are_equivalent():

    triple = build_aqc_triple(Fraction(1, 3))

    result = search_equivalent(triple.middle, triple.right, SearchBudget(max_moves=2))

    assert result.found
    assert len(result.moves) == 1


def test_random_walks_are_found_again(machine_factory, full_sweep):

    walks, longest = (FULL_WALKS, 10) if full_sweep else (QUICK_WALKS, 4)

    for seed in range(walks):
        m = machine_factory(seed)
        length = 1 + seed % longest
        walked = random_walk(m, length, seed)
        budget = SearchBudget(max_moves=2 * length + 2, max_states=200_000, max_stabilizations=length)

        result = search_equivalent(m, walked, budget)

        assert result.found, (seed, length)
        assert canonical_key(replay(m, result.moves)) == canonical_key(walked)
