from fractions import Fraction

import pytest

from tanglekit.errors import CarrierError, ParameterError, UnknownFamilyError
from tanglekit.quandle.automorphism import AffineAutomorphism
from tanglekit.quandle.factory import FamilyFactory
from tanglekit.quandle.families.linear import LinearFamily
from tanglekit.quandle.ops import OpLabel
from tanglekit.quandle.quandle import (
    Quandle,
    apply,
    check_axioms,
    conjugation_quandle_sn,
    dihedral_quandle,
    gf_linear_quandle,
    invert,
    kauffman_quandle,
    linear_quandle,
    loglinear_quandle,
    table_quandle,
)


def test_linear_operation():

    q = linear_quandle("1/2")
    op = q.operation(0)

    assert apply(q, op, q.color(0), q.color(2)).payload == Fraction(1)
    assert invert(q, op, q.color(1), q.color(2)).payload == Fraction(0)


def test_toy_fusion_agrees_on_both_sides():

    q = linear_quandle("1/2", "1/4")
    t, s = q.operations
    x, y, z = q.color(4), q.color(8), q.color(0)

    left = apply(q, s, apply(q, t, x, y), z)
    right = apply(q, t, apply(q, s, x, z), apply(q, s, y, z))

    assert left.payload == Fraction(9, 2)
    assert right.payload == Fraction(9, 2)


def test_linear_parameter_one_is_rejected():

    with pytest.raises(ParameterError):
        linear_quandle(1)

    with pytest.raises(ParameterError):
        gf_linear_quandle(5, 6)


def test_unknown_family():

    with pytest.raises(UnknownFamilyError) as e:
        FamilyFactory.load("nosuch")

    assert e.value.family == "nosuch"


def test_factory_resolves_family_classes():

    assert FamilyFactory.get_module_and_class_name("linear") == ("tanglekit.quandle.families.linear", "LinearFamily")
    assert isinstance(FamilyFactory.load("linear"), LinearFamily)


def test_carrier_rejects_foreign_colours():

    with pytest.raises(CarrierError):
        loglinear_quandle("1/2").color(-1)

    with pytest.raises(CarrierError):
        conjugation_quandle_sn(3).color([0, 0, 1])


@pytest.mark.parametrize(
    "q",
    [
        dihedral_quandle(5),
        conjugation_quandle_sn(3),
        kauffman_quandle(7),
        gf_linear_quandle(5, 2, 3),
    ],
    ids=["dihedral-5", "conjugation-s3", "kauffman-7", "gf5"],
)
def test_axioms_hold_exhaustively(q: Quandle):

    report = check_axioms(q)

    assert report.exhaustive
    assert report.passed, report.model_dump()


def test_axioms_hold_on_samples():

    for q in (linear_quandle("1/2", "1/3", "-2"), loglinear_quandle("1/3", "3/4")):
        q = Quandle(q.carrier, q.operations, samples=1000)
        report = check_axioms(q)

        assert not report.exhaustive
        assert report.result("distributivity").checked == 1000
        assert report.passed, report.model_dump()


def test_axiom_failure_is_reported_with_a_witness():

    # x ⊲ y = 0
    q = table_quandle([[0, 0, 0], [0, 0, 0], [0, 0, 0]])
    report = check_axioms(q)

    assert not report.passed
    assert not report.result("idempotence").passed
    assert report.result("idempotence").witness is not None


def test_op_label_round_trip():

    op = OpLabel("linear", Fraction(1, 3), inverse=True)

    assert op.to_json() == {"family": "linear", "s": "1/3", "inverse": True}
    assert OpLabel.from_json(op.to_json()) == op
    assert op.inverted().inverted() == op


def test_quandle_json_round_trip():

    q = gf_linear_quandle(7, 2)

    assert Quandle.from_json(q.to_json()) == q


def test_affine_automorphism_commutes_with_linear_operations():

    q = linear_quandle("1/3")
    op = q.operation(0)
    f = AffineAutomorphism(scale=Fraction(-2), shift=Fraction(5))
    x, y = q.color("7/2"), q.color(-1)

    assert f(q, apply(q, op, x, y)) == apply(q, op, f(q, x), f(q, y))


def test_affine_automorphism_needs_invertible_scale():

    with pytest.raises(ParameterError):
        AffineAutomorphism(scale=0).check(linear_quandle("1/2"))

    with pytest.raises(ParameterError):
        AffineAutomorphism(scale=2).check(conjugation_quandle_sn(3))
