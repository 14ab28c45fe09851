"""Two-state Markov units, their feed-forward and feed-back rewrites, and the Kauffman unit."""

from dataclasses import dataclass
from typing import Any

import sympy

import tanglekit.log as log
from tanglekit.config import to_number
from tanglekit.errors import ParameterError, SingularSystemError
from tanglekit.machine.coloring import solve_coloring
from tanglekit.machine.concat import concatenate
from tanglekit.machine.model import Direction, Machine, MachineBuilder
from tanglekit.markov.iteration import IterationSpec, Pairing, iterate, stack
from tanglekit.markov.steady import steady_state
from tanglekit.markov.transition import (
    TransitionMatrix,
    internal_stability,
    inverse,
    matrices_equal,
    matrix_json,
    same,
    to_sympy,
    transfer_matrix,
)
from tanglekit.quandle.ops import OpLabel
from tanglekit.quandle.quandle import Quandle, kauffman_quandle, linear_quandle
from tanglekit.rewrite.moves import MoveSite, r2_plus, replay, stab_plus

V1, V1_MID, V1_NEXT = "v1", "v1*", "v1'"
V2, V2_MID, V2_NEXT = "v2", "v2*", "v2'"
UNIT_PAIRING: Pairing = [(V1_NEXT, V1), (V2_NEXT, V2)]

INPUTS = ["v1@0", "v2@0"]
OUTPUTS = ["v1'@1", "v2'@1"]
FEEDBACK = "fb"


def _parameter(s: Any) -> Any:
    value = to_number(s)
    if value in (0, 1):
        raise ParameterError("Markov unit parameters must differ from 0 and 1, got {}".format(s))
    return value


def _unit(q: Quandle, s1: Any, s2: Any) -> Machine:
    return (
        MachineBuilder(q)
        .path(V1, V1_MID, V1_NEXT)
        .path(V2, V2_MID, V2_NEXT)
        .agent(V1_MID, OpLabel("linear", s1), patients=[(V2_MID, V2_NEXT)])
        .agent(V2_MID, OpLabel("linear", s2), patients=[(V1_MID, V1_NEXT)])
        .build()
    )


@dataclass
class MarkovUnit:
    """One step ``v' = P v`` of a two-state chain.

    ``v1*`` acts on strand 2 with ``s1`` and ``v2*`` on strand 1 with ``s2``, so that
    ``P = [[1-s2, s2], [s1, 1-s1]]``.
    """

    machine: Machine
    pairing: Pairing
    P: TransitionMatrix


def markov_unit(s1: Any, s2: Any, *extra: Any) -> MarkovUnit:
    """
    Build the unit over a linear quandle holding ``s1``, ``s2`` and any ``extra`` parameters.

    Raises:
        ParameterError: If a parameter is 0 or 1.
    """
    s1, s2 = _parameter(s1), _parameter(s2)
    extra = tuple(_parameter(s) for s in extra)
    q = linear_quandle(s1, s2, *extra)
    unit = _unit(q, s1, s2)
    P = transfer_matrix(unit, [V1, V2], [V1_NEXT, V2_NEXT])
    return MarkovUnit(unit, list(UNIT_PAIRING), TransitionMatrix("P", P))


def markov_matrix(s1: Any, s2: Any) -> sympy.ImmutableMatrix:
    """``[[1-s2, s2], [s1, 1-s1]]`` computed symbolically."""
    a, b = to_sympy(to_number(s1)), to_sympy(to_number(s2))
    return sympy.ImmutableMatrix([[1 - b, b], [a, 1 - a]])


def interface_matrix(s3: Any) -> sympy.ImmutableMatrix:
    """``A`` with ``A w = (w1 ⊲ w2, w2)``."""
    c = to_sympy(to_number(s3))
    return sympy.ImmutableMatrix([[1 - c, c], [0, 1]])


def _generic(m: Machine) -> Machine:
    """Colour ``m`` from a unit impulse on its first inputs so that moves can be applied."""
    return solve_coloring(m, {INPUTS[0]: 1, INPUTS[1]: 0})


@dataclass
class FeedForward:
    """Two stacked units with a feed-forward interface ``(v1@1-, v2@1)`` between them.

    ``P0`` maps the inputs of the first copy to the interface, ``P1`` the interface to the outputs
    of the second copy. ``orders`` lists the products among ``P1P0`` and ``P0P1`` that equal ``P²``.
    """

    stacked: Machine
    machine: Machine
    moves: list[MoveSite]
    P: TransitionMatrix
    P0: TransitionMatrix
    P1: TransitionMatrix
    P0_closed_form: sympy.ImmutableMatrix
    P1_closed_form: sympy.ImmutableMatrix
    orders: list[str]

    @property
    def stability(self):
        return internal_stability([self.P0, self.P1])

    def to_json(self) -> dict[str, Any]:
        return {
            "moves": [str(m) for m in self.moves],
            "P0": self.P0.to_json(),
            "P1": self.P1.to_json(),
            "matches_closed_form": matrices_equal(self.P0.matrix, self.P0_closed_form)
            and matrices_equal(self.P1.matrix, self.P1_closed_form),
            "orders": self.orders,
            "stability": self.stability.to_json(),
        }


FF_INTERFACE = ["v1@1-", "v2@1"]


def _orders(P: sympy.MatrixBase, P0: sympy.MatrixBase, P1: sympy.MatrixBase) -> list[str]:
    square = P * P
    orders = []
    if matrices_equal(P1 * P0, square):
        orders.append("P1P0")
    if matrices_equal(P0 * P1, square):
        orders.append("P0P1")
    return orders


def feed_forward_unit(s1: Any, s2: Any, s3: Any) -> FeedForward:
    """
    Rewrite two stacked units so that ``v2`` of the second copy feeds forward into strand 1.

    Stab+ makes ``v2@1`` an agent with ``s3``; a backward R2+ on ``v1@1`` then opens the interface
    register ``v1@1-`` with ``v1@1- ⊲ v2@1 = (Pv)¹``.
    """
    unit = markov_unit(s1, s2, s3)
    op = OpLabel("linear", _parameter(s3))
    stacked = _generic(stack(unit.machine, unit.pairing, 2))
    moves = [
        stab_plus("v2@1", op),
        r2_plus("v1@1", "v2@1", Direction.BACKWARD, fresh=("v1@1-", "v1@1+")),
    ]
    m = replay(stacked, moves)

    P0 = transfer_matrix(m, INPUTS, FF_INTERFACE)
    P1 = transfer_matrix(m, FF_INTERFACE, OUTPUTS)
    P = unit.P.matrix
    A = interface_matrix(s3)

    result = FeedForward(
        stacked,
        m,
        moves,
        unit.P,
        TransitionMatrix("P0", P0),
        TransitionMatrix("P1", P1),
        sympy.ImmutableMatrix(inverse(A, "The interface matrix") * P),
        sympy.ImmutableMatrix(P * A),
        _orders(P, P0, P1),
    )
    log.debug("Feed-forward unit", details={"orders": result.orders, "stable": result.stability.stable})
    return result


@dataclass
class FeedBack:
    """Two stacked units whose output ``v2'@1`` feeds back into both strands of the second copy.

    With ``w = P0'' v + T v_next`` at the interface ``(v1@1-, v2@1-)`` and ``v_next = P1'' w``:

    * ``P0'' = P / (1-s3)`` and ``T = -s3/(1-s3) · [[0, 1], [0, 1]]``;
    * ``P1''`` is read from the open-loop machine, where the feedback is an input ``fb``, by closing
      the loop ``fb = v2'``;
    * ``composite = (I - P1''T)⁻¹ P1'' P0''`` equals ``P²``.

    ``P1_feed_forward`` is the feed-forward ``P·A``; the composite it gives differs from ``P²`` by
    ``residual``.
    """

    machine: Machine
    open_loop: Machine
    moves: list[MoveSite]
    P: TransitionMatrix
    P0: TransitionMatrix
    T: sympy.ImmutableMatrix
    P1: TransitionMatrix
    P1_feed_forward: sympy.ImmutableMatrix
    composite: sympy.ImmutableMatrix
    feed_forward_composite: sympy.ImmutableMatrix
    residual: sympy.ImmutableMatrix
    interface: sympy.ImmutableMatrix
    outputs: sympy.ImmutableMatrix

    @property
    def effective(self) -> TransitionMatrix:
        """``P0'' + T·P²``, the interface map of the closed machine."""
        return TransitionMatrix("P0''+TP^2", self.interface)

    @property
    def stability(self):
        return internal_stability([self.effective, self.P1])

    def to_json(self) -> dict[str, Any]:
        square = self.P.matrix * self.P.matrix
        return {
            "moves": [str(m) for m in self.moves],
            "P0": self.P0.to_json(),
            "T": matrix_json(self.T),
            "P1": self.P1.to_json(),
            "composite": matrix_json(self.composite),
            "composite_is_P2": matrices_equal(self.composite, square),
            "closed_machine_outputs_are_P2": matrices_equal(self.outputs, square),
            "feed_forward_P1": matrix_json(self.P1_feed_forward),
            "feed_forward_residual": matrix_json(self.residual),
            "stability": self.stability.to_json(),
        }


FB_INTERFACE = ["v1@1-", "v2@1-"]


def _feedback_moves(agent: str, op: OpLabel) -> list[MoveSite]:
    return [
        stab_plus(agent, op),
        r2_plus("v1@1", agent, Direction.BACKWARD, fresh=("v1@1-", "v1@1+")),
        r2_plus("v2@1", agent, Direction.BACKWARD, fresh=("v2@1-", "v2@1+")),
    ]


def _close_loop(Q: sympy.MatrixBase, r: sympy.MatrixBase, index: int) -> sympy.ImmutableMatrix:
    """
    Solve ``out = Q w + r·fb`` with ``fb = out[index]`` for ``out`` as a function of ``w``.

    Raises:
        SingularSystemError: If the loop gain ``r[index]`` is 1.
    """
    gain = r[index, 0]
    if same(gain, 1):
        raise SingularSystemError("The feedback loop has gain 1")
    return sympy.ImmutableMatrix(Q + r * Q.row(index) / (1 - gain))


def feed_back_unit(s1: Any, s2: Any, s3: Any) -> FeedBack:
    """
    Rewrite two stacked units so that ``v2'@1`` acts, with ``s3``, on both strands of the second
    copy through backward R2+ moves.

    Raises:
        SingularSystemError: If ``I - P1''T`` is singular.
    """
    unit = markov_unit(s1, s2, s3)
    q = unit.machine.quandle
    op = OpLabel("linear", _parameter(s3))
    stacked = _generic(stack(unit.machine, unit.pairing, 2))

    moves = _feedback_moves("v2'@1", op)
    closed = replay(stacked, moves)

    control = MachineBuilder(q).path(FEEDBACK).build()
    open_loop = solve_coloring(concatenate(stacked, control, []), {FEEDBACK: 0})
    open_loop = replay(open_loop, _feedback_moves(FEEDBACK, op))

    P = unit.P.matrix
    P0 = transfer_matrix(open_loop, INPUTS, FB_INTERFACE, fixed={FEEDBACK: 0})
    feedback_column = transfer_matrix(open_loop, [FEEDBACK], FB_INTERFACE, fixed={r: 0 for r in INPUTS})
    T = sympy.ImmutableMatrix(sympy.zeros(2, 1).row_join(feedback_column))

    Q = transfer_matrix(open_loop, FB_INTERFACE, OUTPUTS, fixed={FEEDBACK: 0})
    r = transfer_matrix(open_loop, [FEEDBACK], OUTPUTS, fixed={w: 0 for w in FB_INTERFACE})
    P1 = _close_loop(Q, r, OUTPUTS.index("v2'@1"))

    eye = sympy.eye(2)
    composite = inverse(eye - P1 * T, "I - P1''T") * P1 * P0
    P1_ff = sympy.ImmutableMatrix(P * interface_matrix(s3))
    ff_composite = inverse(eye - P1_ff * T, "I - P1T") * P1_ff * P0
    residual = sympy.ImmutableMatrix((ff_composite - P * P).applyfunc(sympy.simplify))

    interface = transfer_matrix(closed, INPUTS, FB_INTERFACE)
    outputs = transfer_matrix(closed, INPUTS, OUTPUTS)

    result = FeedBack(
        closed,
        open_loop,
        moves,
        unit.P,
        TransitionMatrix("P0''", P0),
        T,
        TransitionMatrix("P1''", P1),
        P1_ff,
        sympy.ImmutableMatrix(composite.applyfunc(sympy.simplify)),
        sympy.ImmutableMatrix(ff_composite.applyfunc(sympy.simplify)),
        residual,
        interface,
        outputs,
    )
    log.debug("Feed-back unit", details={"stable": result.stability.stable})
    return result


A0, A1, A2 = "a0", "a1", "a2"
B0, B1 = "b0", "b1"
KAUFFMAN_PAIRING: Pairing = [(B1, A0), (A2, B0)]


def kauffman_unit(modulus: int) -> tuple[Machine, Pairing]:
    """
    Two strands over ``a ⊲ b = 2b - a`` in GF(p); the outputs are ``b1 = 3b - 2a`` and
    ``a2 = 4b - 3a``.
    """
    q = kauffman_quandle(modulus)
    unit = (
        MachineBuilder(q)
        .path(A0, A1, A2)
        .path(B0, B1)
        .agent(B0, 0, patients=[(A0, A1)])
        .agent(B1, 0, patients=[(A1, A2)])
        .agent(A1, 0, patients=[(B0, B1)])
        .build()
    )
    return unit, list(KAUFFMAN_PAIRING)


def kauffman_is_steady(modulus: int, a: int, b: int) -> bool:
    """Whether one pass with ``a0 = a, b0 = b`` returns ``b1 = a`` and ``a2 = b``."""
    unit, _ = kauffman_unit(modulus)
    colored = solve_coloring(unit, {A0: a, B0: b})
    return colored.color(B1).payload == a % modulus and colored.color(A2).payload == b % modulus


def kauffman_sweep(modulus: int) -> list[dict[str, Any]]:
    """Every colour pair of GF(p) with its steadiness, checked against ``3(a - b) = 0``."""
    rows = []
    for a in range(modulus):
        for b in range(modulus):
            steady = kauffman_is_steady(modulus, a, b)
            rows.append({"a": a, "b": b, "steady": steady, "identity": (3 * (a - b)) % modulus == 0})
    return rows


def kauffman_report(modulus: int) -> dict[str, Any]:
    unit, pairing = kauffman_unit(modulus)
    rows = kauffman_sweep(modulus)
    return {
        "modulus": modulus,
        "steady_pairs": [[row["a"], row["b"]] for row in rows if row["steady"]],
        "count": sum(1 for row in rows if row["steady"]),
        "total": len(rows),
        "identity_holds": all(row["steady"] == row["identity"] for row in rows),
        "steady_state": steady_state(unit, pairing).to_json(),
    }


def markov_report(
    s1: Any, s2: Any, s3: Any, copies: int = 10, start: tuple[Any, Any] = (1, 0)
) -> dict[str, Any]:
    """The chain, its trajectory from ``start``, its steady states and both rewrites."""
    unit = markov_unit(s1, s2)
    trace = iterate(IterationSpec(unit.machine, unit.pairing, copies, {V1: start[0], V2: start[1]}))
    return {
        "P": unit.P.to_json(),
        "matches_closed_form": matrices_equal(unit.P.matrix, markov_matrix(s1, s2)),
        "trajectory": trace.to_json(),
        "steady_state": steady_state(unit.machine, unit.pairing).to_json(),
        "feed_forward": feed_forward_unit(s1, s2, s3).to_json(),
        "feed_back": feed_back_unit(s1, s2, s3).to_json(),
        "kauffman": {str(p): kauffman_report(p) for p in (3, 7)},
    }

