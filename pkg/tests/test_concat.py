from fractions import Fraction

import pytest

from tanglekit.errors import ConcatenationError
from tanglekit.machine.coloring import solve_coloring, validate
from tanglekit.machine.concat import closure, concatenate, endpoints, processes
from tanglekit.machine.model import Machine, MachineBuilder
from tanglekit.quandle.quandle import linear_quandle


@pytest.fixture
def unit() -> Machine:
    return (
        MachineBuilder(linear_quandle("1/2"))
        .path("x", "x'")
        .path("u")
        .agent("u", 0, patients=[("x", "x'")])
        .build()
    )


def test_endpoints(unit: Machine):

    assert endpoints(unit) == (["x", "u"], ["x'", "u"])


def test_concatenate_identifies_pairs(unit: Machine):

    second = unit.rename_registers({"x": "y", "x'": "y'", "u": "v"})
    m = concatenate(unit, second, [("x'", "y")])

    assert m.registers == ("x", "y", "y'", "u", "v")
    assert len(m.components) == 3
    assert endpoints(m) == (["x", "u", "v"], ["y'", "u", "v"])

    colored = solve_coloring(m, {"x": 0, "u": 2, "v": 4})

    # ((0 ⊲ 2) ⊲ 4) = (1 + 4) / 2
    assert colored.color("y'").payload == Fraction(5, 2)
    assert validate(colored).valid


def test_empty_pairing_is_a_disjoint_union(unit: Machine):

    second = unit.rename_registers({"x": "y", "x'": "y'", "u": "v"})
    m = concatenate(unit, second, [])

    assert len(m.registers) == 6
    assert len(m.agents) == 2


def test_concatenate_errors(unit: Machine):

    with pytest.raises(ConcatenationError):
        concatenate(unit, unit, [])

    second = unit.rename_registers({"x": "y", "x'": "y'", "u": "v"})
    with pytest.raises(ConcatenationError):
        concatenate(unit, second, [("x'", "y"), ("x'", "v")])

    with pytest.raises(ConcatenationError):
        concatenate(unit, second, [("nosuch", "y")])

    other = MachineBuilder(linear_quandle("1/3")).path("z").build()
    with pytest.raises(ConcatenationError):
        concatenate(unit, other, [])


def test_concatenate_rejects_different_colours(unit: Machine):

    first = unit.with_colors({"x'": 1})
    second = unit.rename_registers({"x": "y", "x'": "y'", "u": "v"}).with_colors({"y": 2})

    with pytest.raises(ConcatenationError):
        concatenate(first, second, [("x'", "y")])


def test_closure_makes_a_cycle(unit: Machine):

    closed = closure(unit, [("x'", "x")])
    kinds = sorted(p.kind for p in processes(closed))

    assert kinds == ["cycle", "path"]
    assert len(closed.registers) == 2

    # A steady state of x ↦ x ⊲ u is x = u
    colored = solve_coloring(closed, {"u": 3})

    assert all(c.payload == Fraction(3) for _, c in colored.colors)
