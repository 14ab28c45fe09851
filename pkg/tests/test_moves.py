from fractions import Fraction

import pytest

from tanglekit.errors import MoveError, StaleMoveError
from tanglekit.machine.coloring import solve_coloring, validate
from tanglekit.machine.model import Direction, Machine
from tanglekit.rewrite.canonical import canonical_key, isomorphism
from tanglekit.rewrite.invariants import invariant_profile
from tanglekit.rewrite.moves import (
    MoveKind,
    MoveSite,
    apply_move,
    enumerate_moves,
    inverse_site,
    r1_minus,
    r1_plus,
    r2_plus,
    r3,
    replay,
    stab_plus,
)

TOY_R3 = r3("Y", "Y1", "Z", [("X", "X1", "X2")])

SITES_PER_MACHINE = 40


def test_toy_machines_are_one_r3_apart(toy_left: Machine, toy_right: Machine):

    assert TOY_R3 in enumerate_moves(toy_left, [MoveKind.R3])

    result = apply_move(toy_left, TOY_R3)

    assert validate(result).valid
    assert result.color("X1").payload == Fraction(3)
    assert canonical_key(result) == canonical_key(toy_right)
    assert isomorphism(result, toy_right) == {r: r for r in toy_right.registers}


def test_moves_need_a_coloured_machine(interaction: Machine):

    with pytest.raises(MoveError):
        enumerate_moves(interaction)


def test_stale_move(toy_left: Machine):

    with pytest.raises(StaleMoveError):
        apply_move(toy_left, r1_minus("X1"))


def test_r1_plus_inserts_a_kink(interaction: Machine):

    m = solve_coloring(interaction)
    op = m.quandle.operation(0)
    site = r1_plus("x", op, Direction.FORWARD, fresh=("k",))

    result = apply_move(m, site)

    assert "k" in result.registers
    assert result.color("k") == result.color("x")
    assert validate(result).valid
    assert inverse_site(m, site, result) == r1_minus("k")
    assert canonical_key(apply_move(result, r1_minus("k"))) == canonical_key(m)


def test_r2_plus_inserts_two_registers(interaction: Machine):

    m = solve_coloring(interaction)
    site = r2_plus("x", "y", Direction.FORWARD, fresh=("n1", "n2"))

    result = apply_move(m, site)

    assert result.component_of("x").registers == ("x", "n1", "n2", "x'")
    assert result.color("n2") == result.color("x")
    assert validate(result).valid


def test_stabilization(interaction: Machine):

    m = solve_coloring(interaction)
    site = stab_plus("x", m.quandle.operation(0))

    result = apply_move(m, site)

    assert result.is_agent("x")
    assert result.agent_map["x"].patients == ()
    assert invariant_profile(result) == invariant_profile(m)


def test_move_site_json(toy_left: Machine):

    for site in enumerate_moves(toy_left, ["R3", "Stab+", "R2+"]):
        assert MoveSite.from_json(site.to_json()) == site


def test_enumeration_is_deterministic(toy_left: Machine):

    assert enumerate_moves(toy_left) == enumerate_moves(toy_left)


def test_replay(toy_left: Machine, toy_right: Machine):

    assert canonical_key(replay(toy_left, [TOY_R3])) == canonical_key(toy_right)
    assert replay(toy_left, []) is toy_left


def test_moves_preserve_the_invariant_profile(machine_factory, machine_count, full_sweep):

    checked = 0
    for seed in range(machine_count):
        m = machine_factory(seed)
        profile = invariant_profile(m)
        key = canonical_key(m)

        sites = enumerate_moves(m)
        if not full_sweep:
            sites = sites[:: max(1, len(sites) // SITES_PER_MACHINE)]

        for site in sites:
            after = apply_move(m, site)

            assert validate(after).valid, str(site)
            assert invariant_profile(after) == profile, str(site)

            undo = inverse_site(m, site, after)
            assert canonical_key(apply_move(after, undo)) == key, str(site)
            checked += 1

    assert checked > 0
