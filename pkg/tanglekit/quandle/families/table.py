"""Finite quandles given by an operation table ``table[x][y] = x ⊲ y``."""

from typing import Any, TYPE_CHECKING

from tanglekit.errors import CarrierError, ParameterError
from tanglekit.quandle.color import ColorValue, FINITE
from tanglekit.quandle.family import BaseFamily

if TYPE_CHECKING:
    from tanglekit.quandle.quandle import Quandle


class TableFamily(BaseFamily):
    name = "table"
    param_key = "table"
    carriers = ("finite",)

    def _validate_param(self, quandle: "Quandle", param: Any):
        if not isinstance(param, int) or not 0 <= param < len(quandle.tables):
            raise ParameterError("No operation table with index {!r}".format(param))
        size = quandle.carrier.dimension
        table = quandle.tables[param]
        if len(table) != size or any(len(row) != size for row in table):
            raise ParameterError("Operation table {} is not {}x{}".format(param, size, size))

    def _apply(self, quandle: "Quandle", param: Any, x: ColorValue, y: ColorValue) -> ColorValue:
        size = quandle.carrier.dimension
        if not (0 <= x.payload < size and 0 <= y.payload < size):
            raise CarrierError("Table {} has no entry for ({}, {})".format(param, x, y))
        try:
            return ColorValue(FINITE, quandle.tables[param][x.payload][y.payload])
        except (IndexError, TypeError):
            raise CarrierError("Table {} has no entry for ({}, {})".format(param, x, y))

    def _invert(self, quandle: "Quandle", param: Any, z: ColorValue, y: ColorValue) -> ColorValue:
        size = quandle.carrier.dimension
        value = None
        if 0 <= z.payload < size and 0 <= y.payload < size:
            value = quandle.inverse_tables[param][z.payload][y.payload]
        if value is None:
            raise CarrierError("Table {} has no inverse entry for ({}, {})".format(param, z, y))
        return ColorValue(FINITE, value)

    def decode_param(self, raw: Any, precision: str | None = None) -> Any:
        if raw is None:
            return 0
        return int(raw)
