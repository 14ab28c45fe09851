"""Affine automorphisms ``x ↦ a·x + b`` of linear quandles."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from tanglekit.errors import ParameterError
from tanglekit.quandle.color import ColorValue
from tanglekit.quandle.families.linear import map_entries, to_modular
from tanglekit.quandle.quandle import Quandle


@dataclass(frozen=True)
class AffineAutomorphism:
    """An affine map applied entrywise to every colour.

    Every linear operation commutes with it: ``(1-s)(ax+b) + s(ay+b) = a((1-s)x+sy) + b``.
    Only the global action on a whole machine is supported.
    """

    scale: Any = 1
    shift: Any = 0

    def check(self, quandle: Quandle):
        """
        Raises:
            ParameterError: If the quandle is not linear or the scale is not invertible.
        """
        if any(op.family != "linear" for op in quandle.operations):
            raise ParameterError("Affine automorphisms are only defined on linear quandles")
        modulus = quandle.carrier.modulus
        scale = to_modular(self.scale, modulus) if modulus is not None else self.scale
        if scale == 0:
            raise ParameterError("Automorphism scale must be invertible")

    def __call__(self, quandle: Quandle, color: ColorValue) -> ColorValue:
        modulus = quandle.carrier.modulus
        if modulus is not None:
            a = to_modular(self.scale, modulus)
            b = to_modular(self.shift, modulus)
            return map_entries(color, lambda e: (a * e + b) % modulus)
        a, b = self.scale, self.shift
        if not quandle.carrier.exact:
            a, b = float(a), float(b)
        else:
            a, b = Fraction(a), Fraction(b)
        return map_entries(color, lambda e: a * e + b)

    def to_json(self) -> dict[str, Any]:
        return {"scale": str(self.scale), "shift": str(self.shift)}
