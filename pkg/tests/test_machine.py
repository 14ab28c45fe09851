from fractions import Fraction

import pytest

from tanglekit.errors import InconsistentColoringError, MachineStructureError, UnderdeterminedError
from tanglekit.machine.coloring import linear_constraints, propagate, solve_coloring, validate
from tanglekit.machine.concat import endpoints
from tanglekit.machine.model import Direction, Machine, MachineBuilder, Patient
from tanglekit.quandle.quandle import gf_linear_quandle, linear_quandle


def test_builder_and_accessors(interaction: Machine):

    m = interaction

    assert m.registers == ("x", "x'", "y")
    assert m.edges == (("x", "x'"),)
    assert m.is_agent("y")
    assert m.successor("x") == "x'"
    assert m.predecessor("x") is None
    assert m.summary() == {"registers": 3, "paths": 2, "cycles": 0, "agents": 1, "colored": 2}
    assert not m.is_complete


def test_patient_direction():

    forward = Patient(("v", "w"))
    backward = Patient(("v", "w"), Direction.BACKWARD)

    assert (forward.input, forward.output) == ("v", "w")
    assert (backward.input, backward.output) == ("w", "v")
    assert Direction.parse("backward") is Direction.BACKWARD
    assert Direction.parse("v->w") is Direction.FORWARD
    assert Direction.FORWARD.flipped() is Direction.BACKWARD


def test_structure_errors():

    q = linear_quandle("1/2")

    with pytest.raises(MachineStructureError):
        MachineBuilder(q).path("x", "x").build()

    with pytest.raises(MachineStructureError):
        MachineBuilder(q).path("x", "x'").path("y").agent("y", 0, patients=[("x'", "x")]).build()

    with pytest.raises(MachineStructureError):
        (
            MachineBuilder(q)
            .path("x", "x'")
            .path("y")
            .path("z")
            .agent("y", 0, patients=[("x", "x'")])
            .agent("z", 0, patients=[("x", "x'")])
            .build()
        )

    with pytest.raises(MachineStructureError):
        MachineBuilder(q).path("x").color("x", "not a number").build()


def test_validate_reports_violations(interaction: Machine):

    report = validate(interaction.with_colors({"x": 0, "y": 2, "x'": 5}))

    assert not report.valid
    assert report.complete
    assert len(report.violations) == 1
    assert report.violations[0].edge == ["x", "x'"]
    assert report.violations[0].agent == "y"
    assert report.violations[0].expected == "1"


def test_validate_lists_uncolored(interaction: Machine):

    report = validate(interaction)

    assert report.valid
    assert not report.complete
    assert report.uncolored == ["x'"]


def test_solve_coloring_by_propagation(interaction: Machine):

    m = solve_coloring(interaction)

    assert m.color("x'").payload == Fraction(1)
    assert validate(m).valid


def test_propagation_runs_backwards(interaction: Machine):

    m = solve_coloring(interaction.with_colors({"x'": 3, "y": 2}))

    assert m.color("x").payload == Fraction(4)


def test_underdetermined(interaction: Machine):

    with pytest.raises(UnderdeterminedError) as e:
        solve_coloring(interaction.with_colors({"y": 2}))

    assert e.value.unresolved == ["x", "x'"]
    assert e.value.to_dict()["unresolved"] == ["x", "x'"]


def test_inconsistent(interaction: Machine):

    with pytest.raises(InconsistentColoringError) as e:
        solve_coloring(interaction.with_colors({"x": 0, "y": 2, "x'": 5}))

    assert e.value.register == "x'"


def test_linear_fallback_colours_a_cycle():

    q = linear_quandle("1/2")
    m = MachineBuilder(q).cycle("c0", "c1").path("y").agent("y", 0, patients=[("c0", "c1")]).color("y", 2).build()

    assert propagate(m) == {"y": q.color(2)}

    colored = solve_coloring(m)

    assert colored.color("c0").payload == Fraction(2)
    assert colored.color("c1").payload == Fraction(2)
    assert validate(colored).valid


def test_linear_constraints_over_gf():

    q = gf_linear_quandle(7, 2)
    m = MachineBuilder(q).path("x", "x'").path("y").agent("y", 0, patients=[("x", "x'")]).build()

    solution = linear_constraints(m, {"x": q.color(1), "y": q.color(3)}).solve()

    assert solution.kind == "point"
    # 2·3 - 1 = 5
    assert solution.point()["x'"] == 5


def test_propagation_order_does_not_matter(machine_factory, machine_count):

    for seed in range(machine_count):
        m = machine_factory(seed)
        initials, _ = endpoints(m)
        seeds = m.without_colors([r for r in m.registers if r not in initials])

        reference = propagate(seeds)
        for order_seed in range(3):
            assert propagate(seeds, order_seed=order_seed) == reference

        assert reference == m.color_map


def test_rename_registers(interaction: Machine):

    renamed = interaction.rename_registers({"x": "a"})

    assert renamed.registers == ("a", "x'", "y")
    assert renamed.agents[0].patients[0].edge == ("a", "x'")

    with pytest.raises(MachineStructureError):
        interaction.rename_registers({"x": "y"})
