"""Exception hierarchy for tanglekit.

Everything raised on purpose derives from :class:`TanglekitError` so the CLI can turn it into a
JSON error document. Failed validations, failed axioms and inconclusive searches are reports, not
exceptions.
"""

from typing import Any


class TanglekitError(Exception):
    """Base class of all tanglekit errors"""

    def to_dict(self) -> dict[str, Any]:
        return {"type": type(self).__name__, "message": str(self)}


class QuandleError(TanglekitError):
    pass


class ParameterError(QuandleError):
    """An operation parameter outside its admissible set (e.g. a linear parameter of 1)"""


class CarrierError(QuandleError):
    """A colour that does not belong to the carrier, or an operand the family cannot handle"""


class UnknownFamilyError(QuandleError):
    def __init__(self, family: str):
        super().__init__("Unknown operation family '{}'".format(family))
        self.family = family


class ColoringError(TanglekitError):
    pass


class UnderdeterminedError(ColoringError):
    def __init__(self, unresolved: list[str]):
        super().__init__(
            "Colouring is underdetermined; unresolved registers: {}".format(
                ", ".join(unresolved)
            )
        )
        self.unresolved = list(unresolved)

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["unresolved"] = self.unresolved
        return data


class InconsistentColoringError(ColoringError):
    def __init__(self, register: str | None, first: Any, second: Any, reason: str = ""):
        if register is None:
            message = "Colouring is inconsistent: {}".format(reason or "no solution")
        else:
            message = "Register '{}' would need two colours: {} and {}".format(
                register, first, second
            )
        super().__init__(message)
        self.register = register
        self.first = first
        self.second = second

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["register"] = self.register
        data["candidates"] = [str(self.first), str(self.second)]
        return data


class MachineStructureError(TanglekitError):
    pass


class ConcatenationError(TanglekitError):
    pass


class MoveError(TanglekitError):
    pass


class StaleMoveError(MoveError):
    """The move site no longer matches the machine it is applied to"""


class CanonicalizationError(TanglekitError):
    pass


class EntropySpecError(TanglekitError):
    pass


class HamiltonianError(TanglekitError):
    pass


class SingularSystemError(TanglekitError):
    pass


class DocumentError(TanglekitError):
    pass


class SchemaError(DocumentError):
    def __init__(self, pointer: str, message: str):
        super().__init__("{}: {}".format(pointer or "/", message))
        self.pointer = pointer or "/"

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["pointer"] = self.pointer
        return data


class SchemaVersionError(DocumentError):
    pass
