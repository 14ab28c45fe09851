"""Defines the BaseFamily abstraction every operation family inherits from."""

from typing import Any, TYPE_CHECKING

from tanglekit.errors import ParameterError
from tanglekit.quandle.color import ColorValue

if TYPE_CHECKING:
    from tanglekit.quandle.quandle import Quandle


class BaseFamily:
    """BaseFamily is the class all operation families inherit from.

    A family implements ``x ⊲ y`` and its inverse for one parameter value on the carriers it
    supports. Families are stateless; :class:`tanglekit.quandle.factory.FamilyFactory` hands out
    one shared instance per name.
    """

    name: str = ""
    """str: The family name used in machine documents."""

    param_key: str | None = "s"
    """str | None: The document key holding the parameter, None when the family takes none."""

    carriers: tuple[str, ...] = ()
    """tuple[str, ...]: Carrier kinds the family can operate on."""

    def _apply(self, quandle: "Quandle", param: Any, x: ColorValue, y: ColorValue) -> ColorValue:
        raise NotImplementedError("Must implement in subclass")

    def _invert(self, quandle: "Quandle", param: Any, z: ColorValue, y: ColorValue) -> ColorValue:
        raise NotImplementedError("Must implement in subclass")

    def _validate_param(self, quandle: "Quandle", param: Any):
        raise NotImplementedError("Must implement in subclass")

    def supports(self, carrier_kind: str) -> bool:
        return carrier_kind in self.carriers

    def apply(self, quandle: "Quandle", param: Any, x: ColorValue, y: ColorValue) -> ColorValue:
        """Return ``x ⊲ y``."""
        return self._apply(quandle, param, x, y)

    def invert(self, quandle: "Quandle", param: Any, z: ColorValue, y: ColorValue) -> ColorValue:
        """Return the unique ``x`` with ``x ⊲ y = z``."""
        return self._invert(quandle, param, z, y)

    def validate_param(self, quandle: "Quandle", param: Any):
        """
        Check that ``param`` names an admissible operation on the quandle's carrier.

        Raises:
            ParameterError: If the carrier is not supported or the parameter is not admissible.
        """
        if not self.supports(quandle.carrier.kind):
            raise ParameterError(
                "Family '{}' does not operate on carrier '{}'".format(
                    self.name, quandle.carrier.kind
                )
            )
        self._validate_param(quandle, param)

    def encode_param(self, param: Any) -> Any:
        return param

    def decode_param(self, raw: Any, precision: str | None = None) -> Any:
        return raw
