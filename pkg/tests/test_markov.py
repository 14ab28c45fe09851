from fractions import Fraction
from itertools import product

import pytest
import sympy

from tanglekit.errors import ConcatenationError, ParameterError
from tanglekit.machine.coloring import validate
from tanglekit.markov.iteration import (
    IterationSpec,
    basic_impulse_weights,
    basic_output,
    basic_unit,
    basic_weights,
    iterate,
    stack,
)
from tanglekit.markov.steady import steady_state
from tanglekit.markov.transition import TransitionMatrix, internal_stability, matrix
from tanglekit.markov.units import (
    feed_back_unit,
    feed_forward_unit,
    interface_matrix,
    kauffman_report,
    kauffman_sweep,
    kauffman_unit,
    markov_matrix,
    markov_report,
    markov_unit,
)

STEP_GRID = ["1/10", "3/10", "1/2", "7/10", "9/10"]
QUICK_STEP_GRID = ["3/10", "7/10"]

RATIONAL_S = [Fraction(1, k) for k in range(2, 12)]
QUICK_RATIONAL_S = RATIONAL_S[:3]


@pytest.fixture
def step_grid(full_sweep) -> list[str]:
    return STEP_GRID if full_sweep else QUICK_STEP_GRID


def test_unit_reads_its_transition_matrix():

    unit = markov_unit("0.3", "0.5")

    assert unit.P.matrix == matrix([[Fraction(1, 2), Fraction(1, 2)], [Fraction(3, 10), Fraction(7, 10)]])
    assert unit.P.matrix == markov_matrix("0.3", "0.5")
    assert unit.P.row_stochastic
    assert not unit.P.doubly_stochastic


def test_doubly_stochastic_when_parameters_agree():

    assert markov_unit("0.4", "0.4").P.doubly_stochastic


def test_doubly_stochastic_exactly_on_the_diagonal():

    values = [Fraction(k, 11) for k in range(1, 11)]

    for s1, s2 in product(values, repeat=2):
        assert markov_unit(s1, s2).P.doubly_stochastic == (s1 == s2), (s1, s2)


def test_unit_parameters():

    with pytest.raises(ParameterError):
        markov_unit(0, "0.5")

    with pytest.raises(ParameterError):
        markov_unit("0.3", 1)


def test_iteration_follows_the_chain():

    unit = markov_unit("0.3", "0.5")
    trace = iterate(IterationSpec(unit.machine, unit.pairing, 3, {"v1": 1, "v2": 0}))

    assert len(trace.states) == 4
    assert trace.states[1]["v1"].payload == Fraction(1, 2)
    assert trace.states[1]["v2"].payload == Fraction(3, 10)

    P = unit.P.matrix
    expected = P**3 * sympy.Matrix([1, 0])
    assert [sympy.Rational(str(c.payload)) for c in trace.final.values()] == list(expected)


def test_stacked_copies_match_the_iteration():

    unit = markov_unit("0.3", "0.5")
    stacked = stack(unit.machine, unit.pairing, 3)

    assert "v1@0" in stacked.registers
    assert "v1'@2" in stacked.registers
    assert "v1'@0" not in stacked.registers

    with pytest.raises(ConcatenationError):
        stack(unit.machine, [("v1", "v1'")], 2)

    with pytest.raises(ParameterError):
        stack(unit.machine, unit.pairing, 0)


def test_steady_state_of_the_chain():

    unit = markov_unit("0.3", "0.5")
    result = steady_state(unit.machine, unit.pairing)

    assert result.method == "linear"
    assert result.kind == "line"
    assert result.state["v1"] == result.state["v2"]


def test_feed_forward():

    ff = feed_forward_unit("0.3", "0.5", "0.9")

    assert validate(ff.machine).valid
    assert ff.P0.matrix == ff.P0_closed_form
    assert ff.P1.matrix == ff.P1_closed_form
    assert ff.P0.matrix[0, 0] == sympy.Rational(23, 10)
    assert ff.orders == ["P1P0"]

    stability = ff.stability.to_json()
    assert stability["verdict"] == "Unstable"
    assert stability["matrix"] == "P0"
    assert stability["value"] == pytest.approx(2.3)


def test_feed_forward_with_a_weak_interface_is_stable():

    ff = feed_forward_unit("0.3", "0.5", "0.1")

    assert ff.P1.matrix == matrix([[Fraction(9, 20), Fraction(11, 20)], [Fraction(27, 100), Fraction(73, 100)]])
    assert ff.stability.stable


def test_feed_back():

    fb = feed_back_unit("0.3", "0.5", "0.9")
    P = fb.P.matrix
    square = P * P

    assert validate(fb.machine).valid
    assert fb.composite == square
    assert fb.outputs == square
    assert fb.P1_feed_forward == P * interface_matrix("0.9")
    assert (fb.interface - (fb.P0.matrix + fb.T * square)).applyfunc(sympy.simplify) == sympy.zeros(2, 2)
    assert fb.stability.to_json()["verdict"] == "Unstable"

    data = fb.to_json()
    assert data["composite_is_P2"]
    assert data["closed_machine_outputs_are_P2"]


def test_two_step_maps_equal_p_squared_across_the_grid(step_grid):

    for s1, s2, s3 in product(step_grid, repeat=3):
        square = markov_matrix(s1, s2) * markov_matrix(s1, s2)
        ff = feed_forward_unit(s1, s2, s3)
        fb = feed_back_unit(s1, s2, s3)

        assert ff.P0.matrix == ff.P0_closed_form, (s1, s2, s3)
        assert ff.P1.matrix == ff.P1_closed_form, (s1, s2, s3)
        assert ff.P1.matrix * ff.P0.matrix == square, (s1, s2, s3)
        assert "P1P0" in ff.orders, (s1, s2, s3)
        assert fb.composite == square, (s1, s2, s3)
        assert fb.outputs == square, (s1, s2, s3)


def test_stability_of_a_stochastic_pair():

    P = TransitionMatrix("P", markov_matrix("0.3", "0.5"))
    broken = TransitionMatrix("Q", matrix([[Fraction(1, 2), Fraction(1, 4)], [0, 1]]))

    assert internal_stability([P, P]).stable

    verdict = internal_stability([P, broken])
    assert not verdict.stable
    assert (verdict.matrix, verdict.row, verdict.column) == ("Q", 0, None)


def test_basic_filter_weights():

    assert basic_weights("1/2", 2) == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]
    assert basic_impulse_weights("1/2", 2) == basic_weights("1/2", 2)
    assert sum(basic_weights("1/3", 5)) == 1

    # ((2 ⊲ 4) ⊲ 0) with s = 1/2
    assert basic_output("1/2", [2, 4, 0]).payload == Fraction(3, 2)

    with pytest.raises(ParameterError):
        basic_output("1/2", [])


def test_impulse_response_matches_the_closed_form(full_sweep):

    values = RATIONAL_S if full_sweep else QUICK_RATIONAL_S
    longest = 20 if full_sweep else 6

    for s in values:
        for n in range(1, longest + 1):
            weights = basic_impulse_weights(s, n)

            assert weights == [s * (1 - s) ** i for i in range(n)] + [(1 - s) ** n], (s, n)
            assert sum(weights) == 1


def test_basic_filter_steady_state():

    unit, pairing = basic_unit("1/2")
    result = steady_state(unit, pairing, controls={"u": 3})

    assert result.kind == "point"
    assert result.state == {"x": Fraction(3)}


@pytest.mark.parametrize("modulus, count, kind", [(3, 9, "space"), (7, 7, "line")])
def test_kauffman_unit(modulus: int, count: int, kind: str):

    report = kauffman_report(modulus)

    assert report["count"] == count
    assert report["total"] == modulus**2
    assert report["identity_holds"]
    assert report["steady_state"]["kind"] == kind


def test_kauffman_steady_pairs_on_gf7_are_diagonal():

    rows = kauffman_sweep(7)

    assert all(row["steady"] == (row["a"] == row["b"]) for row in rows)


def test_kauffman_steady_state_is_solved_exactly():

    unit, pairing = kauffman_unit(5)

    assert steady_state(unit, pairing).method == "linear"


def test_markov_report():

    report = markov_report("0.3", "0.5", "0.9", copies=2)

    assert report["matches_closed_form"]
    assert report["P"]["row_stochastic"]
    assert len(report["trajectory"]) == 3
    assert set(report["kauffman"]) == {"3", "7"}
