"""Operation labels: which member of the operation family B an agent applies."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from tanglekit.quandle.color import fraction_text


def param_text(param: Any) -> str:
    if param is None:
        return ""
    if isinstance(param, (int, Fraction)) and not isinstance(param, bool):
        return fraction_text(param)
    return repr(param)


@dataclass(frozen=True)
class OpLabel:
    """One operation of a B-family quandle.

    Attributes:
        family (str): Family name resolved by :class:`tanglekit.quandle.factory.FamilyFactory`
            ("linear", "loglinear", "conjugation", "table").
        param (Any): Family parameter, e.g. the ``s`` of ``(1-s)x + sy``. ``None`` for conjugation,
            a table index for tables.
        inverse (bool): True for the inverse operation, the unique ``z`` with ``z ⊲ y = x``.
    """

    family: str
    param: Any = None
    inverse: bool = False

    def inverted(self) -> "OpLabel":
        return OpLabel(self.family, self.param, not self.inverse)

    @property
    def base(self) -> "OpLabel":
        return OpLabel(self.family, self.param, False) if self.inverse else self

    @property
    def code(self) -> str:
        text = "{}[{}]".format(self.family, param_text(self.param))
        return text + "^-1" if self.inverse else text

    def __str__(self) -> str:
        return self.code

    def to_json(self) -> dict[str, Any]:
        from tanglekit.quandle.factory import FamilyFactory

        family = FamilyFactory.load(self.family)
        data: dict[str, Any] = {"family": self.family}
        if family.param_key is not None:
            data[family.param_key] = family.encode_param(self.param)
        data["inverse"] = self.inverse
        return data

    @staticmethod
    def from_json(data: dict[str, Any], precision: str | None = None) -> "OpLabel":
        from tanglekit.quandle.factory import FamilyFactory

        family = FamilyFactory.load(data["family"])
        param = None
        if family.param_key is not None:
            param = family.decode_param(data.get(family.param_key), precision)
        return OpLabel(data["family"], param, bool(data.get("inverse", False)))
