"""Entropy arithmetic: fusion, capacities and mutual information."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from tanglekit.config import to_number
from tanglekit.errors import EntropySpecError
from tanglekit.machine.concat import processes
from tanglekit.machine.model import Machine
from tanglekit.quandle.color import SCALAR_KINDS, ColorValue

Number = Fraction | float


def fuse_entropy(h0: Number, h1: Number, s: Number) -> Number:
    """Entropy of the fused stream, ``(1-s)·h0 + s·h1``."""
    return (1 - s) * h0 + s * h1


def interaction_capacity(in_color: Number, out_color: Number) -> Number:
    return in_color - out_color


def mutual_information(h1: Number, h1_given: Number) -> Number:
    """
    ``I = H(1) - H(1|·)``.

    Raises:
        EntropySpecError: If the conditional entropy is negative or exceeds the entropy.
    """
    if h1_given < 0 or h1_given > h1:
        raise EntropySpecError("({}, {}) is not an entropy and conditional entropy pair".format(h1, h1_given))
    return h1 - h1_given


@dataclass(frozen=True)
class EntropySpec:
    """Entropies of three sources, in bits per symbol.

    Attributes:
        h0, h1, h2: H(0), H(1), H(2).
        h1g2: H(1|2).
        h1g02: H(1|0,2).
        h1g0: H(1|0), optional. When given, interactions fusing source 0 into source 1 are
            compared with I(1:0).

    Raises:
        EntropySpecError: Unless ``H(2) < H(1|2) < H(1)`` and ``H(0)⊲ₜH(2) < H(1|0,2) < H(1|2)``,
            which are exactly the conditions for ``t, s ∈ (0, 1)``.
    """

    h0: Any
    h1: Any
    h2: Any
    h1g2: Any
    h1g02: Any
    h1g0: Any = None

    def __post_init__(self):
        for name in ("h0", "h1", "h2", "h1g2", "h1g02", "h1g0"):
            value = getattr(self, name)
            if value is None:
                continue
            try:
                number = to_number(value)
            except (ValueError, ZeroDivisionError):
                raise EntropySpecError("{} = {!r} is not a number".format(name, value))
            if number < 0:
                raise EntropySpecError("{} = {} is negative".format(name, value))
            object.__setattr__(self, name, number)

        if not self.h2 < self.h1g2 < self.h1:
            raise EntropySpecError("Need H(2) < H(1|2) < H(1), got {}, {}, {}".format(self.h2, self.h1g2, self.h1))
        if not self.h02 < self.h1g02 < self.h1g2:
            raise EntropySpecError(
                "Need H(0)⊲ₜH(2) < H(1|0,2) < H(1|2), got {}, {}, {}".format(self.h02, self.h1g02, self.h1g2)
            )
        if self.h1g0 is not None and not self.h1g02 <= self.h1g0 <= self.h1:
            raise EntropySpecError(
                "Need H(1|0,2) <= H(1|0) <= H(1), got {}, {}, {}".format(self.h1g02, self.h1g0, self.h1)
            )

    @property
    def t(self) -> Number:
        """``(H(1) - H(1|2)) / (H(1) - H(2))``"""
        return (self.h1 - self.h1g2) / (self.h1 - self.h2)

    @property
    def h02(self) -> Number:
        """``H(0) ⊲ₜ H(2)``"""
        return fuse_entropy(self.h0, self.h2, self.t)

    @property
    def s(self) -> Number:
        """``(H(1|2) - H(1|0,2)) / (H(1|2) - H(0)⊲ₜH(2))``"""
        return (self.h1g2 - self.h1g02) / (self.h1g2 - self.h02)

    def to_json(self) -> dict[str, Any]:
        data = {
            "H0": self.h0,
            "H1": self.h1,
            "H2": self.h2,
            "H1g2": self.h1g2,
            "H1g02": self.h1g02,
        }
        if self.h1g0 is not None:
            data["H1g0"] = self.h1g0
        return {k: number_json(v) for k, v in data.items()}


def number_json(value: Any) -> Any:
    """Fractions become "p/q" strings next to their float value; floats pass through."""
    if isinstance(value, Fraction):
        return {"exact": str(value), "value": float(value)}
    return value


def scalar(color: ColorValue) -> Number:
    if color.kind not in SCALAR_KINDS:
        raise EntropySpecError("Entropy colours must be scalars, got '{}'".format(color.kind))
    return color.payload


def global_capacity(m: Machine) -> list[Number]:
    """Initial minus terminal colour of every path process, sorted."""
    capacities = []
    for process in processes(m):
        if process.control:
            continue
        capacities.append(scalar(m.color(process.initial)) - scalar(m.color(process.terminal)))
    return sorted(capacities)


def chain_capacities(m: Machine, register: str) -> list[Number]:
    """
    Colour drops along the path process containing ``register``, edge by edge.

    They sum to the process capacity, initial minus terminal colour.
    """
    component = m.component_of(register)
    colors = [scalar(m.color(r)) for r in component.registers]
    return [colors[i] - colors[i + 1] for i in range(len(colors) - 1)]
