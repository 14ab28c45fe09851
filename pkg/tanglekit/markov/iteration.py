"""Iterated machines: copies of a unit concatenated along a pairing, and the basic filter."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

import tanglekit.log as log
from tanglekit.config import to_number
from tanglekit.errors import ConcatenationError, ParameterError
from tanglekit.machine.coloring import solve_coloring
from tanglekit.machine.concat import concatenate, endpoints
from tanglekit.machine.model import Machine, MachineBuilder
from tanglekit.quandle.color import ColorValue
from tanglekit.quandle.quandle import linear_quandle

Pairing = list[tuple[str, str]]


def copy_id(register: str, k: int) -> str:
    return "{}@{}".format(register, k)


def copy_of(unit: Machine, k: int) -> Machine:
    """The ``k``-th copy of ``unit``, every register id suffixed with ``@k``."""
    return unit.rename_registers({r: copy_id(r, k) for r in unit.registers})


def check_pairing(unit: Machine, pairing: Sequence[tuple[str, str]]) -> Pairing:
    """
    Raises:
        ConcatenationError: If a pair does not join a terminal register of ``unit`` to an initial
            one, or a register is used twice.
    """
    initials, terminals = endpoints(unit)
    pairs = [(str(t), str(i)) for t, i in pairing]
    for t, i in pairs:
        if t not in terminals:
            raise ConcatenationError("'{}' is not a terminal register of the unit".format(t))
        if i not in initials:
            raise ConcatenationError("'{}' is not an initial register of the unit".format(i))
    if len({t for t, _ in pairs}) != len(pairs) or len({i for _, i in pairs}) != len(pairs):
        raise ConcatenationError("The pairing must be a bijection")
    return pairs


def stack(unit: Machine, pairing: Sequence[tuple[str, str]], copies: int) -> Machine:
    """
    ``copies`` copies of ``unit`` concatenated along ``pairing``.

    Registers of copy ``k`` are named ``r@k``; a merged pair keeps the id of the later copy's
    initial register.
    """
    if copies < 1:
        raise ParameterError("An iterated machine needs at least one copy")
    pairs = check_pairing(unit, pairing)
    result = copy_of(unit, 0)
    for k in range(1, copies):
        result = concatenate(
            result, copy_of(unit, k), [(copy_id(t, k - 1), copy_id(i, k)) for t, i in pairs]
        )
    log.trace("Stacked copies", details={"copies": copies, **result.summary()})
    return result


@dataclass
class IterationSpec:
    """How to iterate a unit.

    Attributes:
        unit (Machine): The machine to repeat.
        pairing (list[tuple[str, str]]): (terminal, initial) pairs carrying the state forward.
        copies (int): Number of steps.
        initial (Mapping[str, Any]): Colours of the paired initial registers at step 0.
        controls: Colours of the unpaired initial registers; one mapping per step, or a single
            mapping used at every step.
    """

    unit: Machine
    pairing: Sequence[tuple[str, str]]
    copies: int
    initial: Mapping[str, Any]
    controls: Sequence[Mapping[str, Any]] | Mapping[str, Any] = field(default_factory=dict)

    def controls_at(self, k: int) -> Mapping[str, Any]:
        if isinstance(self.controls, Mapping):
            return self.controls
        return self.controls[k]

    def __post_init__(self):
        self.pairing = check_pairing(self.unit, self.pairing)
        if self.copies < 0:
            raise ParameterError("The number of copies must not be negative")
        if not isinstance(self.controls, Mapping) and len(self.controls) < self.copies:
            raise ParameterError(
                "Expected {} control colourings, got {}".format(self.copies, len(self.controls))
            )


@dataclass
class IterationTrace:
    """``states[k]`` holds the colours of the paired initial registers before step ``k``."""

    states: list[dict[str, ColorValue]]
    outputs: list[dict[str, ColorValue]]

    @property
    def final(self) -> dict[str, ColorValue]:
        return self.states[-1]

    def to_json(self) -> list[dict[str, str]]:
        return [{r: str(c) for r, c in state.items()} for state in self.states]


def step(unit: Machine, state: Mapping[str, Any], controls: Mapping[str, Any]) -> dict[str, ColorValue]:
    """One pass through ``unit``; returns every terminal colour."""
    colored = solve_coloring(unit.without_colors(), {**controls, **state})
    _, terminals = endpoints(colored)
    return {t: colored.color(t) for t in terminals}


def iterate(spec: IterationSpec) -> IterationTrace:
    """Colour the copies one after another and follow the paired state."""
    q = spec.unit.quandle
    state = {i: q.color(spec.initial[i]) for _, i in spec.pairing}
    states = [state]
    outputs = []
    for k in range(spec.copies):
        out = step(spec.unit, state, spec.controls_at(k))
        outputs.append(out)
        state = {i: out[t] for t, i in spec.pairing}
        states.append(state)
    log.debug("Iterated machine", details={"copies": spec.copies, "final": {r: str(c) for r, c in state.items()}})
    return IterationTrace(states, outputs)


STATE = "x"
STATE_NEXT = "x'"
CONTROL = "u"


def basic_unit(s: Any) -> tuple[Machine, Pairing]:
    """The basic filter ``x' = x ⊲ₛ u``, fed back through ``x' → x``."""
    q = linear_quandle(s)
    unit = (
        MachineBuilder(q)
        .path(STATE, STATE_NEXT)
        .path(CONTROL)
        .agent(CONTROL, 0, patients=[(STATE, STATE_NEXT)])
        .build()
    )
    return unit, [(STATE_NEXT, STATE)]


def basic_output(s: Any, inputs: Sequence[Any], start: int = 0) -> ColorValue:
    """
    ``x_{k:n}``: start from ``u_k`` and apply ``u_{k+1} … u_n`` in turn.

    Raises:
        ParameterError: If ``inputs`` is empty or ``start`` is out of range.
    """
    if not 0 <= start < len(inputs):
        raise ParameterError("Start index {} outside 0..{}".format(start, len(inputs) - 1))
    unit, pairing = basic_unit(s)
    rest = inputs[start + 1:]
    spec = IterationSpec(unit, pairing, len(rest), {STATE: inputs[start]}, [{CONTROL: u} for u in rest])
    return iterate(spec).final[STATE]


def basic_weights(s: Any, n: int) -> list[Fraction | float]:
    """``w_i = s(1-s)^i`` for ``i < n`` and ``w_n = (1-s)^n``; they sum to 1."""
    s = to_number(s)
    if s == 1:
        raise ParameterError("The parameter 1 is not a linear quandle operation")
    return [s * (1 - s) ** i for i in range(n)] + [(1 - s) ** n]


def basic_impulse_weights(s: Any, n: int) -> list[Any]:
    """
    The weights read off the machine: ``w_i`` is the output for a unit impulse on ``u_{n-i}``.
    """
    weights = []
    for i in range(n + 1):
        inputs = [1 if j == n - i else 0 for j in range(n + 1)]
        weights.append(basic_output(s, inputs).payload)
    return weights
