"""The log-linear family on strictly positive reals: ``x ⊲ₛ y = x^(1-s)·y^s``."""

from fractions import Fraction
from typing import Any, TYPE_CHECKING

from tanglekit.config import to_number
from tanglekit.errors import CarrierError, ParameterError
from tanglekit.quandle.color import ColorValue, FLOAT, fraction_text
from tanglekit.quandle.family import BaseFamily

if TYPE_CHECKING:
    from tanglekit.quandle.quandle import Quandle


def _positive(color: ColorValue) -> float:
    if color.kind != FLOAT:
        raise CarrierError("Log-linear operands must be real, got '{}'".format(color.kind))
    value = float(color.payload)
    if value <= 0.0:
        raise CarrierError("Log-linear operands must be strictly positive, got {}".format(value))
    return value


class LoglinearFamily(BaseFamily):
    """Geometric interpolation, the multiplicative counterpart of the linear family."""

    name = "loglinear"
    param_key = "s"
    carriers = ("positive",)

    def _validate_param(self, quandle: "Quandle", param: Any):
        if not isinstance(param, (int, Fraction, float)) or isinstance(param, bool):
            raise ParameterError("Log-linear parameter must be a number, got {!r}".format(param))
        if param == 1:
            raise ParameterError("Log-linear parameter s must differ from 1")

    def _apply(self, quandle: "Quandle", param: Any, x: ColorValue, y: ColorValue) -> ColorValue:
        s = float(param)
        return ColorValue(FLOAT, _positive(x) ** (1.0 - s) * _positive(y) ** s)

    def _invert(self, quandle: "Quandle", param: Any, z: ColorValue, y: ColorValue) -> ColorValue:
        s = float(param)
        return ColorValue(FLOAT, (_positive(z) / _positive(y) ** s) ** (1.0 / (1.0 - s)))

    def encode_param(self, param: Any) -> Any:
        if isinstance(param, (int, Fraction)):
            return fraction_text(param)
        return param

    def decode_param(self, raw: Any, precision: str | None = None) -> Any:
        if raw is None:
            raise ParameterError("Log-linear operation requires the parameter 's'")
        return to_number(raw, precision)
