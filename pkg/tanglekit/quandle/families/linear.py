"""The linear (affine-combination) family: ``x ⊲ₛ y = (1-s)x + s·y``."""

from fractions import Fraction
from typing import Any, Callable, TYPE_CHECKING

from tanglekit.config import to_number
from tanglekit.errors import CarrierError, ParameterError
from tanglekit.quandle.color import (
    ColorValue,
    FLOAT,
    GF,
    HERMITIAN,
    RATIONAL,
    VECTOR,
    fraction_text,
)
from tanglekit.quandle.family import BaseFamily

if TYPE_CHECKING:
    from tanglekit.quandle.quandle import Quandle


def to_modular(value: Any, modulus: int) -> int:
    """Map a rational number into GF(p)."""
    if isinstance(value, float):
        raise ParameterError("Prime field parameters must be rational, got {}".format(value))
    value = Fraction(value)
    if value.denominator % modulus == 0:
        raise ParameterError(
            "Parameter {} is undefined modulo {}".format(fraction_text(value), modulus)
        )
    return value.numerator * pow(value.denominator, -1, modulus) % modulus


def map_entries(color: ColorValue, fn: Callable[[Any], Any]) -> ColorValue:
    payload = color.payload
    if color.kind == HERMITIAN:
        return ColorValue(color.kind, tuple(tuple(fn(e) for e in row) for row in payload))
    if color.kind == VECTOR:
        return ColorValue(color.kind, tuple(fn(e) for e in payload))
    return ColorValue(color.kind, fn(payload))


def combine(x: ColorValue, y: ColorValue, a: Any, b: Any, modulus: int | None = None) -> ColorValue:
    """Entrywise ``a·x + b·y`` (reduced mod p on prime fields)."""
    if x.kind != y.kind:
        raise CarrierError("Cannot combine colours of kind '{}' and '{}'".format(x.kind, y.kind))

    if modulus is not None:
        return ColorValue(x.kind, (a * x.payload + b * y.payload) % modulus)

    if x.kind == HERMITIAN:
        if len(x.payload) != len(y.payload):
            raise CarrierError("Matrix colours of different dimension")
        rows = tuple(
            tuple(a * ex + b * ey for ex, ey in zip(rx, ry))
            for rx, ry in zip(x.payload, y.payload)
        )
        return ColorValue(x.kind, rows)

    if x.kind == VECTOR:
        if len(x.payload) != len(y.payload):
            raise CarrierError("Vector colours of different dimension")
        return ColorValue(x.kind, tuple(a * ex + b * ey for ex, ey in zip(x.payload, y.payload)))

    return ColorValue(x.kind, a * x.payload + b * y.payload)


class LinearFamily(BaseFamily):
    """Linear quandle operations over ℚ, ℝ, GF(p), vectors and Hermitian matrices.

    The inverse of ``⊲ₛ`` is ``z ⊳ₛ⁻¹ y = (z - s·y) / (1 - s)``, itself the linear operation with
    parameter ``s / (s - 1)``.
    """

    name = "linear"
    param_key = "s"
    carriers = ("rational", "real", "gf", "vector", "hermitian")

    def _validate_param(self, quandle: "Quandle", param: Any):
        if not isinstance(param, (int, Fraction, float)) or isinstance(param, bool):
            raise ParameterError("Linear parameter must be a number, got {!r}".format(param))
        modulus = quandle.carrier.modulus
        if modulus is not None:
            if to_modular(param, modulus) == 1:
                raise ParameterError(
                    "Linear parameter {} is 1 modulo {}".format(fraction_text(param), modulus)
                )
        elif param == 1:
            raise ParameterError("Linear parameter s must differ from 1")

    def coefficients(self, quandle: "Quandle", param: Any, inverse: bool) -> tuple[Any, Any]:
        """Return ``(a, b)`` such that the operation is ``a·x + b·y``."""
        modulus = quandle.carrier.modulus
        if modulus is not None:
            s = to_modular(param, modulus)
            if not inverse:
                return (1 - s) % modulus, s
            scale = pow((1 - s) % modulus, -1, modulus)
            return scale, (-s * scale) % modulus
        if not inverse:
            return 1 - param, param
        scale = 1 / (1 - param) if isinstance(param, float) else Fraction(1) / (1 - param)
        return scale, -param * scale

    def _apply(self, quandle: "Quandle", param: Any, x: ColorValue, y: ColorValue) -> ColorValue:
        a, b = self.coefficients(quandle, param, inverse=False)
        return combine(x, y, a, b, quandle.carrier.modulus)

    def _invert(self, quandle: "Quandle", param: Any, z: ColorValue, y: ColorValue) -> ColorValue:
        a, b = self.coefficients(quandle, param, inverse=True)
        return combine(z, y, a, b, quandle.carrier.modulus)

    def encode_param(self, param: Any) -> Any:
        if isinstance(param, (int, Fraction)):
            return fraction_text(param)
        return param

    def decode_param(self, raw: Any, precision: str | None = None) -> Any:
        if raw is None:
            raise ParameterError("Linear operation requires the parameter 's'")
        if isinstance(raw, float) and precision is None:
            return raw
        return to_number(raw, precision)


def is_scalar_linear(quandle: "Quandle") -> bool:
    """True when every operation is linear on a scalar carrier (ℚ, ℝ or GF(p))."""
    return quandle.carrier.color_kind in (RATIONAL, FLOAT, GF) and all(
        op.family == LinearFamily.name for op in quandle.operations
    )
