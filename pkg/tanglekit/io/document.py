"""Machine documents: the versioned JSON (or YAML) form of a machine and its attached moves."""

from pathlib import Path
from typing import Any, Literal, TextIO
import json

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

import tanglekit.log as log
from tanglekit.config import PRECISION_FLOAT, PRECISION_RATIONAL
from tanglekit.errors import (
    MachineStructureError,
    MoveError,
    QuandleError,
    SchemaError,
    SchemaVersionError,
    UnknownFamilyError,
)
from tanglekit.machine.model import Agent, Component, Direction, Machine, Patient
from tanglekit.quandle.factory import FamilyFactory
from tanglekit.quandle.ops import OpLabel
from tanglekit.quandle.quandle import Quandle
from tanglekit.rewrite.moves import MoveSite

SCHEMA_VERSION = "tanglekit/1"

YAML_SUFFIXES = (".yaml", ".yml")


class PatientDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    edge: tuple[str, str]
    direction: str = Direction.FORWARD.value


class AgentDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    agent: str = Field(alias="register")
    op: int | dict[str, Any] = 0
    patients: list[PatientDocument] = Field(default_factory=list)


class RegisterDocument(BaseModel):
    """A register of the machine; ``color`` is absent for an uncoloured register."""

    model_config = ConfigDict(extra="forbid")

    id: str = Field(min_length=1)
    color: Any = None


class ComponentDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["path", "cycle"] = "path"
    registers: list[str] = Field(min_length=1)


class QuandleDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    carrier: dict[str, Any]
    operations: list[dict[str, Any]] = Field(min_length=1)
    tables: list[list[list[int]]] | None = None


class MachineDocument(BaseModel):
    """The serialized machine.

    ``registers`` lists every register once, with its colour when it has one. Operations of
    agents are indices into ``quandle.operations`` or, for inverse operations, full operation
    objects. Patient directions are ``"v→w"`` (``ρ(v) ⊲ ρ(u) = ρ(w)`` for the edge ``[v, w]``) or
    ``"w→v"``. Colours use the carrier's JSON encoding: rationals as "p/q" strings, floats as JSON
    numbers written with ``repr`` precision, complex entries as ``[re, im]``.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    version: str = Field(alias="schema")
    quandle: QuandleDocument
    registers: list[RegisterDocument] = Field(default_factory=list)
    components: list[ComponentDocument]
    agents: list[AgentDocument] = Field(default_factory=list)
    moves: list[dict[str, Any]] | None = None


def _pointer(loc: tuple) -> str:
    return "/" + "/".join(str(part) for part in loc)


def _precision(q: Quandle) -> str:
    return PRECISION_RATIONAL if q.carrier.exact else PRECISION_FLOAT


def _check_family(family: Any, pointer: str):
    try:
        FamilyFactory.load(str(family))
    except UnknownFamilyError as e:
        raise SchemaError(pointer, str(e))


def parse_document(data: Any) -> MachineDocument:
    """
    Raises:
        SchemaVersionError: If the document is for another schema version.
        SchemaError: If the document does not follow the schema.
    """
    if not isinstance(data, dict):
        raise SchemaError("/", "A machine document must be an object")
    if "schema" not in data:
        raise SchemaError("/schema", "Missing schema version")
    if data["schema"] != SCHEMA_VERSION:
        raise SchemaVersionError(
            "Unsupported schema version '{}', expected '{}'".format(data["schema"], SCHEMA_VERSION)
        )
    try:
        document = MachineDocument.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        raise SchemaError(_pointer(error["loc"]), error["msg"])

    for i, op in enumerate(document.quandle.operations):
        _check_family(op.get("family"), "/quandle/operations/{}/family".format(i))
    for i, agent in enumerate(document.agents):
        if isinstance(agent.op, dict):
            _check_family(agent.op.get("family"), "/agents/{}/op/family".format(i))

    return document


def _build_quandle(document: MachineDocument) -> Quandle:
    try:
        return Quandle.from_json(document.quandle.model_dump(exclude_none=True))
    except (QuandleError, KeyError, TypeError, ValueError) as e:
        raise SchemaError("/quandle", str(e))


def _build_op(q: Quandle, op: int | dict[str, Any], index: int) -> OpLabel:
    pointer = "/agents/{}/op".format(index)
    if isinstance(op, int):
        if not 0 <= op < len(q.operations):
            raise SchemaError(pointer, "Operation index {} out of range".format(op))
        return q.operation(op)
    try:
        return OpLabel.from_json(op, _precision(q))
    except (QuandleError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(pointer, str(e))


def _build_colors(document: MachineDocument) -> dict[str, Any]:
    """Colours keyed by register id. Every listed register must belong to a component."""
    known = {r for c in document.components for r in c.registers}
    colors: dict[str, Any] = {}
    seen: set[str] = set()
    for i, register in enumerate(document.registers):
        pointer = "/registers/{}/id".format(i)
        if register.id in seen:
            raise SchemaError(pointer, "Register '{}' is listed twice".format(register.id))
        if register.id not in known:
            raise SchemaError(pointer, "Register '{}' is not on any component".format(register.id))
        seen.add(register.id)
        if register.color is not None:
            colors[register.id] = register.color
    return colors


def machine_from_document(data: Any) -> Machine:
    """
    Build a machine from a parsed JSON or YAML document.

    Raises:
        SchemaVersionError: If the document is for another schema version.
        SchemaError: If the document is malformed, with the JSON pointer of the offending value.
    """
    document = parse_document(data)
    q = _build_quandle(document)

    components = []
    for i, c in enumerate(document.components):
        try:
            components.append(Component(c.kind, tuple(c.registers)))
        except MachineStructureError as e:
            raise SchemaError("/components/{}".format(i), str(e))

    agents = []
    for i, a in enumerate(document.agents):
        try:
            patients = tuple(Patient(p.edge, Direction.parse(p.direction)) for p in a.patients)
        except MachineStructureError as e:
            raise SchemaError("/agents/{}/patients".format(i), str(e))
        agents.append(Agent(a.agent, _build_op(q, a.op, i), patients))

    colors = _build_colors(document)
    try:
        m = Machine(q, tuple(components), tuple(agents), colors)
    except MachineStructureError as e:
        raise SchemaError("/", str(e))

    log.trace("Loaded machine document", details=m.summary())

    return m


def moves_from_document(data: Any) -> list[MoveSite]:
    """The move sequence attached to a document, or a bare list of move sites."""
    if isinstance(data, list):
        raw, prefix = data, ""
    else:
        document = parse_document(data)
        raw, prefix = document.moves or [], "/moves"
    sites = []
    for i, move in enumerate(raw):
        try:
            sites.append(MoveSite.from_json(move))
        except (MoveError, QuandleError) as e:
            raise SchemaError("{}/{}".format(prefix, i), str(e))
    return sites


def machine_to_document(m: Machine, moves: list[MoveSite] | None = None) -> dict[str, Any]:
    q = m.quandle
    agents = []
    for agent in m.agents:
        op: int | dict[str, Any] = (
            q.operations.index(agent.op) if agent.op in q.operations else agent.op.to_json()
        )
        agents.append(
            {
                "register": agent.register,
                "op": op,
                "patients": [{"edge": list(p.edge), "direction": p.direction.value} for p in agent.patients],
            }
        )
    registers = []
    for r in m.registers:
        entry: dict[str, Any] = {"id": r}
        color = m.color(r)
        if color is not None:
            entry["color"] = q.carrier.encode(color)
        registers.append(entry)
    data: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "quandle": q.to_json(),
        "registers": registers,
        "components": [{"kind": c.kind, "registers": list(c.registers)} for c in m.components],
        "agents": agents,
    }
    if moves is not None:
        data["moves"] = [site.to_json() for site in moves]
    return data


def _is_yaml(path: str | Path) -> bool:
    return Path(path).suffix.lower() in YAML_SUFFIXES


def read_document(path: str | Path) -> Any:
    """
    Read a JSON or YAML file, chosen by suffix.

    Raises:
        SchemaError: If the file is not well-formed.
    """
    with open(path, "r", encoding="utf-8") as f:
        try:
            if _is_yaml(path):
                return YAML(typ="safe").load(f)
            return json.load(f)
        except json.JSONDecodeError as e:
            raise SchemaError("/", "Invalid JSON: {}".format(e))
        except YAMLError as e:
            raise SchemaError("/", "Invalid YAML: {}".format(e))


def write_document(data: Any, stream: TextIO, yaml: bool = False):
    if yaml:
        writer = YAML(typ="safe")
        writer.default_flow_style = False
        writer.dump(data, stream)
    else:
        json.dump(data, stream, indent=2, ensure_ascii=False)
        stream.write("\n")


def load_machine(path: str | Path) -> Machine:
    return machine_from_document(read_document(path))


def save_machine(m: Machine, path: str | Path, moves: list[MoveSite] | None = None):
    """Write ``m`` (and ``moves``) as JSON, or YAML for a .yaml/.yml path."""
    with open(path, "w", encoding="utf-8") as f:
        write_document(machine_to_document(m, moves), f, yaml=_is_yaml(path))
    log.debug("Saved machine to {}", str(path))
