"""Three equivalent entropy machines with equal global capacities and different local optimality."""

from dataclasses import dataclass, field
from typing import Any

import tanglekit.log as log
from tanglekit.info.classify import Interaction, InteractionClass, classify_interactions
from tanglekit.info.entropy import EntropySpec, Number, global_capacity, mutual_information, number_json
from tanglekit.machine.coloring import solve_coloring
from tanglekit.machine.model import Direction, Machine, MachineBuilder
from tanglekit.quandle.ops import OpLabel
from tanglekit.quandle.quandle import linear_quandle
from tanglekit.rewrite.moves import MoveSite, apply_move, r2_plus, r3

H0 = "H0"
H1 = "H1"
H2 = "H2"
H1_GIVEN_2 = "H1|2"
H1_GIVEN_02 = "H1|0,2"
H0_FUSED_2 = "H0<H2"
H1_FUSED_0 = "H1<0"
H1_UNFUSED_0 = "H1>0"
H1_RESTORED = "H1'"


def demo_spec(h1g0: Any = None) -> EntropySpec:
    """(H0, H1, H2, H(1|2), H(1|0,2)) = (0.5, 1.0, 0.3, 0.6, 0.45), giving t = 4/7 and s = 7/10."""
    return EntropySpec(h0="0.5", h1="1.0", h2="0.3", h1g2="0.6", h1g02="0.45", h1g0=h1g0)


@dataclass
class CapacityTriple:
    """The left, middle and right machines and the moves relating them.

    ``middle = apply(right, to_middle)`` after renaming ``H1|2`` to ``H1<0``, and
    ``left = apply(middle, to_left)``.
    """

    spec: EntropySpec
    left: Machine
    middle: Machine
    right: Machine
    to_middle: MoveSite
    to_left: MoveSite
    expected: dict[str, dict[str, Number]] = field(default_factory=dict)

    @property
    def machines(self) -> dict[str, Machine]:
        return {"left": self.left, "middle": self.middle, "right": self.right}


def right_machine(spec: EntropySpec) -> Machine:
    """
    The locally optimal machine.

    ``H2`` fuses into ``H1`` with ``⊲t`` giving ``H(1|2)``; ``H2`` also fuses into ``H0`` giving
    ``H0⊲tH2``, which then fuses into ``H(1|2)`` with ``⊲s`` giving ``H(1|0,2)``.
    """
    q = linear_quandle(spec.t, spec.s)
    op_t = OpLabel("linear", spec.t)
    op_s = OpLabel("linear", spec.s)
    m = (
        MachineBuilder(q)
        .path(H1, H1_GIVEN_2, H1_GIVEN_02)
        .path(H0, H0_FUSED_2)
        .path(H2)
        .agent(H2, op_t, patients=[(H1, H1_GIVEN_2), (H0, H0_FUSED_2)])
        .agent(H0_FUSED_2, op_s, patients=[(H1_GIVEN_2, H1_GIVEN_02)])
        .colors({H0: spec.h0, H1: spec.h1, H2: spec.h2})
        .build()
    )
    return solve_coloring(m)


def build_capacity_triple(spec: EntropySpec) -> CapacityTriple:
    """
    Build the right machine directly and the others from it by recorded moves.

    The middle machine slides the ``H0⊲tH2`` crossing under ``H2`` with one R3, which introduces
    ``H1⊲sH0`` as the new middle register of the ``H1`` process. The left machine then pushes
    ``H1`` back through ``H0`` with an inverse crossing, introducing ``H1⊳s⁻¹H0``, which can leave
    the range of meaningful entropies.

    Raises:
        EntropySpecError: If the entropy values do not give ``t, s ∈ (0, 1)``.
    """
    right = right_machine(spec)

    to_middle = r3(H0_FUSED_2, H0, H2, [(H1_GIVEN_02, H1_GIVEN_2, H1)])
    middle = apply_move(right, to_middle).rename_registers({H1_GIVEN_2: H1_FUSED_0})

    to_left = r2_plus(H1, H0, Direction.BACKWARD, fresh=(H1_UNFUSED_0, H1_RESTORED))
    left = apply_move(middle, to_left)

    expected: dict[str, dict[str, Number]] = {
        "right": {
            H1_GIVEN_2: mutual_information(spec.h1, spec.h1g2),
            H1_GIVEN_02: mutual_information(spec.h1g2, spec.h1g02),
        },
        "middle": {},
        "left": {},
    }
    if spec.h1g0 is not None:
        # I(1:0) for the first fusion and I(1:2|0) for the second
        conditional = {
            H1_FUSED_0: mutual_information(spec.h1, spec.h1g0),
            H1_GIVEN_02: mutual_information(spec.h1g0, spec.h1g02),
        }
        expected["middle"] = dict(conditional)
        expected["left"] = dict(conditional)

    log.debug(
        "Built capacity triple",
        details={"t": str(spec.t), "s": str(spec.s), "middle": str(to_middle), "left": str(to_left)},
    )

    return CapacityTriple(spec, left, middle, right, to_middle, to_left, expected)


def classify_triple(
    triple: CapacityTriple, admissible: tuple[Number, Number] = (0, 1)
) -> dict[str, list[Interaction]]:
    return {
        name: classify_interactions(m, admissible, triple.expected.get(name))
        for name, m in triple.machines.items()
    }


def is_locally_optimal(interactions: list[Interaction]) -> bool:
    return all(i.cls is InteractionClass.OPTIMAL for i in interactions)


def capacity_report(spec: EntropySpec, admissible: tuple[Number, Number] = (0, 1)) -> dict[str, Any]:
    """The demo report: parameters, machine colours, interaction classes and global capacities."""
    triple = build_capacity_triple(spec)
    classes = classify_triple(triple, admissible)
    capacities = {name: [number_json(c) for c in global_capacity(m)] for name, m in triple.machines.items()}

    return {
        "spec": spec.to_json(),
        "t": number_json(spec.t),
        "s": number_json(spec.s),
        "H0<H2": number_json(spec.h02),
        "admissible": [number_json(v) for v in admissible],
        "machines": {
            name: {r: number_json(c.payload) for r, c in m.colors} for name, m in triple.machines.items()
        },
        "moves": {"right_to_middle": triple.to_middle.to_json(), "middle_to_left": triple.to_left.to_json()},
        "classifications": {name: [i.to_json() for i in items] for name, items in classes.items()},
        "locally_optimal": {name: is_locally_optimal(items) for name, items in classes.items()},
        "capacities": capacities,
        "equal_capacities": len({repr(v) for v in capacities.values()}) == 1,
    }
