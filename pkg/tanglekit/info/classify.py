"""Classify the interactions of an entropy machine."""

from typing import Any, Mapping
import enum

from pydantic import BaseModel

import tanglekit.log as log
from tanglekit.config import EPS_EQ
from tanglekit.errors import ColoringError
from tanglekit.info.entropy import Number, interaction_capacity, number_json, scalar
from tanglekit.machine.model import Machine


class InteractionClass(enum.Enum):
    """How an interaction's colours relate to real entropies."""

    OPTIMAL = "Optimal"
    SUBOPTIMAL = "Suboptimal"
    ABSTRACT = "Abstract"


class Interaction(BaseModel):
    agent: str
    edge: tuple[str, str]
    input: str
    output: str
    capacity: Any
    expected: Any = None
    cls: InteractionClass

    def to_json(self) -> dict[str, Any]:
        data = self.model_dump(mode="python")
        data["edge"] = list(self.edge)
        data["capacity"] = number_json(self.capacity)
        data["expected"] = number_json(self.expected)
        data["cls"] = self.cls.value
        return data


def _in_range(value: Number, admissible: tuple[Number, Number]) -> bool:
    low, high = admissible
    return low <= value <= high


def _same(a: Number, b: Number) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return abs(float(a) - float(b)) <= EPS_EQ * max(1.0, abs(float(a)), abs(float(b)))
    return a == b


def classify_interactions(
    m: Machine,
    admissible: tuple[Number, Number] = (0, 1),
    expected: Mapping[str, Number] | None = None,
) -> list[Interaction]:
    """
    Sort every interaction of a coloured entropy machine into a class.

    An interaction is one patient edge together with the agent acting on it. The input is the
    edge's earlier register along its process and the output the later one, whichever way the
    agent's operation runs, and the interaction's capacity is ``ρ(input) - ρ(output)``.

    * Abstract: the input, output or agent colour lies outside the ``admissible`` entropy range.
    * Suboptimal: ``expected`` names a mutual information for the output register and the
      capacity differs from it.
    * Optimal: otherwise.

    Args:
        m (Machine): A fully coloured machine over a scalar quandle.
        admissible (tuple): Inclusive range of meaningful entropies.
        expected (Mapping[str, Number] | None): Output register id to the mutual information the
            interaction should carry.

    Returns:
        list[Interaction]: One entry per patient edge, ordered by agent then edge.
    """
    expected = dict(expected or {})
    result: list[Interaction] = []
    for agent in m.agents:
        agent_color = m.color(agent.register)
        for patient in agent.patients:
            source, target = patient.edge
            colors = [m.color(agent.register), m.color(source), m.color(target)]
            if any(c is None for c in colors):
                raise ColoringError("Interaction at {} is not fully coloured".format(list(patient.edge)))
            value_in = scalar(m.color(source))
            value_out = scalar(m.color(target))
            capacity = interaction_capacity(value_in, value_out)
            wanted = expected.get(target)

            if not all(_in_range(v, admissible) for v in (scalar(agent_color), value_in, value_out)):
                cls = InteractionClass.ABSTRACT
            elif wanted is not None and not _same(capacity, wanted):
                cls = InteractionClass.SUBOPTIMAL
            else:
                cls = InteractionClass.OPTIMAL

            result.append(
                Interaction(
                    agent=agent.register,
                    edge=patient.edge,
                    input=source,
                    output=target,
                    capacity=capacity,
                    expected=wanted,
                    cls=cls,
                )
            )

    log.debug(
        "Classified interactions",
        details={c.value: sum(1 for i in result if i.cls is c) for c in InteractionClass},
    )
    return result
