from fractions import Fraction

import numpy as np
import pytest

from tanglekit.errors import EntropySpecError
from tanglekit.info.classify import InteractionClass, classify_interactions
from tanglekit.info.entropy import (
    EntropySpec,
    chain_capacities,
    fuse_entropy,
    global_capacity,
    mutual_information,
)
from tanglekit.info.triple import (
    H0,
    H1,
    H1_GIVEN_02,
    H1_GIVEN_2,
    H1_FUSED_0,
    H1_UNFUSED_0,
    build_capacity_triple,
    capacity_report,
    classify_triple,
    demo_spec,
)
from tanglekit.machine.coloring import validate

QUICK_SPECS = 20
FULL_SPECS = 100


def random_spec(rng: np.random.Generator) -> EntropySpec:
    """Entropies in hundredths of a bit, drawn until they satisfy the ordering constraints."""
    while True:
        h1 = int(rng.integers(50, 101))
        h2 = int(rng.integers(0, h1 - 1))
        h1g2 = int(rng.integers(h2 + 1, h1))
        h0 = int(rng.integers(0, 101))
        h1, h2, h1g2, h0 = (Fraction(v, 100) for v in (h1, h2, h1g2, h0))

        h02 = fuse_entropy(h0, h2, (h1 - h1g2) / (h1 - h2))
        if h02 < h1g2:
            return EntropySpec(h0=h0, h1=h1, h2=h2, h1g2=h1g2, h1g02=(h02 + h1g2) / 2)


def test_demo_parameters():

    spec = demo_spec()

    assert spec.t == Fraction(4, 7)
    assert spec.s == Fraction(7, 10)
    assert spec.h02 == Fraction(27, 70)


def test_entropy_spec_ordering():

    with pytest.raises(EntropySpecError):
        EntropySpec(h0="0.5", h1="1.0", h2="0.7", h1g2="0.6", h1g02="0.45")

    with pytest.raises(EntropySpecError):
        EntropySpec(h0="0.5", h1="1.0", h2="0.3", h1g2="0.6", h1g02="0.3")

    with pytest.raises(EntropySpecError):
        EntropySpec(h0="-1", h1="1.0", h2="0.3", h1g2="0.6", h1g02="0.45")

    with pytest.raises(EntropySpecError):
        mutual_information(Fraction(1, 2), Fraction(3, 4))


def test_right_machine_is_locally_optimal():

    triple = build_capacity_triple(demo_spec())
    right = triple.right

    assert validate(right).valid
    assert right.color(H1_GIVEN_2).payload == Fraction(3, 5)
    assert right.color(H1_GIVEN_02).payload == Fraction(9, 20)

    interactions = classify_triple(triple)["right"]
    capacities = {i.output: i.capacity for i in interactions}

    assert all(i.cls is InteractionClass.OPTIMAL for i in interactions)
    assert capacities[H1_GIVEN_2] == Fraction(2, 5)
    assert capacities[H1_GIVEN_02] == Fraction(3, 20)


def test_left_machine_has_an_abstract_interaction():

    triple = build_capacity_triple(demo_spec())

    assert triple.left.color(H1_UNFUSED_0).payload == Fraction(13, 6)

    interactions = {i.output: i for i in classify_triple(triple)["left"]}
    inverse = interactions[H1_UNFUSED_0]

    assert inverse.cls is InteractionClass.ABSTRACT
    assert (inverse.agent, inverse.input) == (H0, H1)
    assert inverse.capacity == 1 - Fraction(13, 6)


def test_global_capacities_agree():

    triple = build_capacity_triple(demo_spec())

    assert global_capacity(triple.right) == [0, Fraction(4, 35), Fraction(11, 20)]
    for m in (triple.middle, triple.left):
        assert global_capacity(m) == global_capacity(triple.right)


def test_chain_capacities_sum_to_the_process_capacity():

    triple = build_capacity_triple(demo_spec())

    for m in triple.machines.values():
        assert sum(chain_capacities(m, "H1")) == Fraction(11, 20)


def test_conditional_entropy_marks_middle_suboptimal():

    triple = build_capacity_triple(demo_spec("0.5"))
    classes = {i.output: i.cls for i in classify_triple(triple)["middle"]}

    # capacity 1 - 13/20 against I(1:0) = 1/2
    assert classes[H1_FUSED_0] is InteractionClass.SUBOPTIMAL


def test_admissible_range():

    triple = build_capacity_triple(demo_spec())
    interactions = classify_interactions(triple.left, admissible=(0, 3))

    assert all(i.cls is InteractionClass.OPTIMAL for i in interactions)


def test_capacity_report():

    report = capacity_report(demo_spec())

    assert report["t"] == {"exact": "4/7", "value": 4 / 7}
    assert report["equal_capacities"]
    assert report["locally_optimal"] == {"left": False, "middle": True, "right": True}
    assert report["moves"]["right_to_middle"]["kind"] == "R3"


def test_random_specs_keep_the_capacity_identities(full_sweep):

    rng = np.random.default_rng(0)

    for _ in range(FULL_SPECS if full_sweep else QUICK_SPECS):
        spec = random_spec(rng)
        triple = build_capacity_triple(spec)
        right = classify_triple(triple)["right"]
        capacities = {i.output: i.capacity for i in right}

        assert all(i.cls is InteractionClass.OPTIMAL for i in right), spec
        assert capacities[H1_GIVEN_2] == mutual_information(spec.h1, spec.h1g2)
        assert capacities[H1_GIVEN_02] == mutual_information(spec.h1g2, spec.h1g02)
        for m in (triple.middle, triple.left):
            assert global_capacity(m) == global_capacity(triple.right), spec
        assert sum(chain_capacities(triple.left, "H1")) == spec.h1 - spec.h1g02
