"""The endpoint-colour invariant preserved by every move."""

from pydantic import BaseModel

from tanglekit.errors import CanonicalizationError
from tanglekit.machine.concat import processes
from tanglekit.machine.model import Machine
from tanglekit.quandle.color import color_code


class InvariantProfile(BaseModel):
    """Sorted (initial, terminal) colour codes of the path processes, and the process counts.

    Cycle colour sets are not part of the profile: R2+ and R3 change the colours on a cycle.
    """

    endpoints: list[tuple[str, str]]
    paths: int
    cycles: int


def invariant_profile(m: Machine) -> InvariantProfile:
    """
    Raises:
        CanonicalizationError: If an endpoint register is uncoloured.
    """
    pairs = []
    cycles = 0
    for process in processes(m):
        if process.control:
            cycles += 1
            continue
        initial = m.color(process.initial)
        terminal = m.color(process.terminal)
        if initial is None or terminal is None:
            raise CanonicalizationError("Endpoint colours are needed for the invariant profile")
        pairs.append((color_code(initial), color_code(terminal)))
    return InvariantProfile(endpoints=sorted(pairs), paths=len(pairs), cycles=cycles)
