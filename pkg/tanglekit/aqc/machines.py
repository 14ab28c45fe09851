"""Adiabatic computations as machines coloured by 2×2 Hamiltonians."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import tanglekit.log as log
from tanglekit.aqc.hamiltonian import H0, H1, SIGMA_X, SIGMA_Z
from tanglekit.machine.coloring import solve_coloring
from tanglekit.machine.model import Direction, Machine, MachineBuilder
from tanglekit.quandle.quandle import Quandle, hermitian_linear_quandle
from tanglekit.rewrite.moves import MoveSite, apply_move, r2_plus, r3, stab_plus

INITIAL = "H0"
PROBLEM = "H1"
MIXER = "sx"
OUTPUT = "Hout"
MIXED = "H'"
DIRECT = "H''"
MIXER_FUSED = "sx<H1"
ABSTRACT = "G"
MIXER_RESTORED = "sx'"


def aqc_quandle(s: Any) -> Quandle:
    """Entrywise ``(1-s)X + sY`` on 2×2 Hermitian matrices; exact unless ``s`` is a float."""
    return hermitian_linear_quandle(2, s, exact=not isinstance(s, float))


def build_single_aqc(s: Any) -> Machine:
    """``H0`` evolves under the agent ``H1``; the output colour is ``diag(s, 1-s)``."""
    q = aqc_quandle(s)
    m = (
        MachineBuilder(q)
        .path(INITIAL, OUTPUT)
        .path(PROBLEM)
        .agent(PROBLEM, q.operation(0), patients=[(INITIAL, OUTPUT)])
        .colors({INITIAL: H0, PROBLEM: H1})
        .build()
    )
    return solve_coloring(m)


def single_output(s: Any) -> tuple[tuple[Any, ...], ...]:
    """``(𝟙 + (2s-1)σz) / 2``"""
    half = Fraction(1, 2) if not isinstance(s, float) else 0.5
    scale = 2 * s - 1
    return tuple(
        tuple(half * ((1 if i == j else 0) + scale * SIGMA_Z[i][j]) for j in range(2)) for i in range(2)
    )


def triple_output(s: Any) -> tuple[tuple[Any, ...], ...]:
    """``(H0 ⊲ σx) ⊲ H1 = [[s, s(1-s)], [s(1-s), (1-s)²]]``"""
    return ((s, s * (1 - s)), (s * (1 - s), (1 - s) ** 2))


@dataclass
class AqcTriple:
    """Three equivalent adiabatic machines at one value of ``s``.

    The middle machine mixes ``H0`` with ``σx`` before evolving under ``H1``. The right machine is
    its R3 image and evolves ``H0`` directly under ``H1``, which closes the gap at ``s = 1/2``. The
    left machine pulls ``σx`` back through ``H0``, introducing ``G`` with ``G ⊲ H0 = σx``; ``G``
    has a negative eigenvalue.
    """

    s: Any
    left: Machine
    middle: Machine
    right: Machine
    to_right: MoveSite
    to_left: tuple[MoveSite, MoveSite]

    @property
    def machines(self) -> dict[str, Machine]:
        return {"left": self.left, "middle": self.middle, "right": self.right}


def middle_machine(s: Any) -> Machine:
    q = aqc_quandle(s)
    op = q.operation(0)
    m = (
        MachineBuilder(q)
        .path(INITIAL, MIXED, OUTPUT)
        .path(MIXER, MIXER_FUSED)
        .path(PROBLEM)
        .agent(MIXER, op, patients=[(INITIAL, MIXED)])
        .agent(PROBLEM, op, patients=[(MIXED, OUTPUT), (MIXER, MIXER_FUSED)])
        .colors({INITIAL: H0, PROBLEM: H1, MIXER: SIGMA_X})
        .build()
    )
    return solve_coloring(m)


def build_aqc_triple(s: Any) -> AqcTriple:
    """
    Build the three machines at ``s``; right and left come from the middle one by moves.

    Raises:
        ParameterError: If ``s`` is 1.
    """
    middle = middle_machine(s)

    to_right = r3(MIXER, MIXER_FUSED, PROBLEM, [(INITIAL, MIXED, OUTPUT)])
    right = apply_move(middle, to_right).rename_registers({MIXED: DIRECT})

    stabilize = stab_plus(INITIAL, middle.quandle.operation(0))
    pull_back = r2_plus(MIXER, INITIAL, Direction.BACKWARD, fresh=(ABSTRACT, MIXER_RESTORED))
    left = apply_move(apply_move(middle, stabilize), pull_back)

    log.trace("Built AQC triple", details={"s": str(s)})

    return AqcTriple(s, left, middle, right, to_right, (stabilize, pull_back))
