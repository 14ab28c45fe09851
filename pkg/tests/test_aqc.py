from fractions import Fraction
import io
import math

import numpy as np
import pytest

from tanglekit.aqc.hamiltonian import eigenvalues, gap, smallest_eigenvalue
from tanglekit.aqc.machines import (
    ABSTRACT,
    DIRECT,
    MIXED,
    MIXER_FUSED,
    OUTPUT,
    build_aqc_triple,
    build_single_aqc,
    single_output,
    triple_output,
)
from tanglekit.aqc.scan import (
    aqc_report,
    classify_feasibility,
    default_grid,
    min_gap,
    negative_eigenvalue_witness,
    scan_gaps,
    single_family,
    triple_family,
    write_csv,
)
from tanglekit.errors import HamiltonianError, ParameterError
from tanglekit.machine.coloring import validate
from tanglekit.rewrite.search import SearchBudget, search_equivalent

QUICK_GRID = 201


@pytest.fixture
def grid(full_sweep) -> np.ndarray:
    return default_grid() if full_sweep else default_grid(QUICK_GRID)


@pytest.fixture
def triple_scan(grid):
    return scan_gaps(triple_family, grid)


def by_register(trajectories):
    return {t.register: t for t in trajectories}


def test_gap_of_a_matrix():

    assert gap([[1, 0], [0, 0]]) == 1.0
    assert gap([[0, 1], [1, 0]]) == 2.0
    assert gap([[2, 0, 0], [0, 5, 0], [0, 0, 3]]) == pytest.approx(1.0)
    assert list(eigenvalues([[0, 1], [1, 0]])) == [-1.0, 1.0]

    with pytest.raises(HamiltonianError):
        gap([[0, 1], [0, 0]])

    with pytest.raises(HamiltonianError):
        gap([[1]])


def test_single_machine_closes_its_gap():

    m = build_single_aqc(Fraction(1, 2))

    assert validate(m).valid
    assert m.color(OUTPUT).payload == single_output(Fraction(1, 2))
    assert gap(m.color(OUTPUT)) == 0.0

    verdict = classify_feasibility(scan_gaps(single_family, default_grid(QUICK_GRID))["single"])

    assert not verdict.feasible
    assert verdict.register == OUTPUT
    assert verdict.s == pytest.approx(0.5, abs=1e-4)


def test_triple_colours():

    s = Fraction(1, 3)
    triple = build_aqc_triple(s)

    for m in triple.machines.values():
        assert validate(m).valid

    assert triple.middle.color(OUTPUT).payload == triple_output(s)
    assert triple.right.color(OUTPUT).payload == triple_output(s)
    assert gap(triple.right.color(DIRECT)) == pytest.approx(abs(2 * float(s) - 1))


def test_middle_and_right_are_one_move_apart():

    triple = build_aqc_triple(Fraction(1, 3))
    result = search_equivalent(triple.middle, triple.right, SearchBudget(max_moves=2))

    assert result.found
    assert [m.kind.value for m in result.moves] == ["R3"]


def test_minimum_gaps(triple_scan):

    middle = by_register(triple_scan["middle"])

    s_star, g_star = min_gap(middle[MIXED])
    assert s_star == pytest.approx(0.2, abs=1e-3)
    assert g_star == pytest.approx(2 / math.sqrt(5), abs=1e-6)

    s_star, g_star = min_gap(middle[MIXER_FUSED])
    assert s_star == pytest.approx(0.8, abs=1e-3)
    assert g_star == pytest.approx(2 / math.sqrt(5), abs=1e-6)

    s_star, g_star = min_gap(middle[OUTPUT])
    assert s_star == pytest.approx(0.325, abs=1e-3)
    assert g_star == pytest.approx(0.458, abs=1e-3)


def test_feasibility(triple_scan):

    verdicts = {name: classify_feasibility(t) for name, t in triple_scan.items()}

    assert verdicts["middle"].feasible
    assert verdicts["left"].feasible
    assert not verdicts["right"].feasible
    assert verdicts["right"].register == DIRECT
    assert verdicts["right"].to_json()["verdict"] == "Infeasible"


def test_abstract_colour_has_a_negative_eigenvalue(grid):

    witness = negative_eigenvalue_witness(grid)

    assert len(witness) == len(grid)
    assert all(value < 0 for _, value in witness)
    assert smallest_eigenvalue(build_aqc_triple(Fraction(1, 2)).left.color(ABSTRACT)) < 0


def test_scan_rejects_points_outside_the_open_interval():

    with pytest.raises(ParameterError):
        scan_gaps(single_family, [0.0, 0.5])

    with pytest.raises(ParameterError):
        build_aqc_triple(1)


def test_write_csv():

    stream = io.StringIO()
    write_csv(scan_gaps(single_family, [0.25, 0.5]), stream)
    rows = stream.getvalue().splitlines()

    assert rows[0] == "machine,register,s,gap"
    assert "single,Hout,0.5,0.0" in rows


def test_report():

    report = aqc_report(points=QUICK_GRID)

    assert report["feasibility"]["single"]["verdict"] == "Infeasible"
    assert report["feasibility"]["right"]["verdict"] == "Infeasible"
    assert report["feasibility"]["middle"] == {"verdict": "Feasible"}
    assert report["negative_eigenvalue"]["all_negative"]
