from fractions import Fraction
from pathlib import Path
import json

import pytest

from tanglekit.data import TOY_LEFT, fixture
from tanglekit.errors import SchemaError, SchemaVersionError
from tanglekit.io.document import (
    AgentDocument,
    SCHEMA_VERSION,
    load_machine,
    machine_from_document,
    machine_to_document,
    moves_from_document,
    read_document,
    save_machine,
)
from tanglekit.io.dot import export_dot
from tanglekit.machine.coloring import solve_coloring, validate
from tanglekit.machine.model import Direction, Machine
from tanglekit.markov.units import markov_unit
from tanglekit.rewrite.canonical import canonical_key
from tanglekit.rewrite.moves import r3

GOLDEN = Path(__file__).parent / "golden" / "interaction.json"


def test_packaged_fixture_validates(toy_left: Machine):

    assert read_document(fixture(TOY_LEFT))["schema"] == SCHEMA_VERSION
    assert validate(toy_left).valid
    assert toy_left.is_complete


def test_round_trip_keeps_the_machine(tmp_path, machine_factory, document_count):

    for seed in range(document_count):
        m = machine_factory(seed)
        path = tmp_path / "machine-{}.json".format(seed)
        save_machine(m, path)

        assert canonical_key(load_machine(path)) == canonical_key(m)


def test_yaml_round_trip(tmp_path, toy_left: Machine):

    path = tmp_path / "toy.yaml"
    save_machine(toy_left, path)

    assert "schema: tanglekit/1" in path.read_text()
    assert canonical_key(load_machine(path)) == canonical_key(toy_left)


def test_moves_are_attached(tmp_path, toy_left: Machine):

    site = r3("Y", "Y1", "Z", [("X", "X1", "X2")])
    path = tmp_path / "toy.json"
    save_machine(toy_left, path, moves=[site])

    assert moves_from_document(read_document(path)) == [site]
    assert moves_from_document([site.to_json()]) == [site]


def test_unknown_family_names_its_pointer(toy_left: Machine):

    data = machine_to_document(toy_left)
    data["quandle"]["operations"][0]["family"] = "nosuch"

    with pytest.raises(SchemaError) as e:
        machine_from_document(data)

    assert e.value.pointer == "/quandle/operations/0/family"
    assert "nosuch" in str(e.value)


def test_schema_errors(toy_left: Machine):

    data = machine_to_document(toy_left)

    with pytest.raises(SchemaVersionError):
        machine_from_document({**data, "schema": "tanglekit/0"})

    with pytest.raises(SchemaError) as e:
        machine_from_document({k: v for k, v in data.items() if k != "schema"})
    assert e.value.pointer == "/schema"

    with pytest.raises(SchemaError) as e:
        machine_from_document({**data, "components": "none"})
    assert e.value.pointer.startswith("/components")

    broken = json.loads(json.dumps(data))
    broken["agents"][0]["op"] = 7
    with pytest.raises(SchemaError) as e:
        machine_from_document(broken)
    assert e.value.pointer == "/agents/0/op"


def test_malformed_json(tmp_path):

    path = tmp_path / "broken.json"
    path.write_text("{not json")

    with pytest.raises(SchemaError):
        read_document(path)


def test_dot_export(interaction: Machine):

    text = export_dot(solve_coloring(interaction), name="interaction")
    lines = text.splitlines()

    assert lines[0] == 'digraph "interaction" {'
    assert len([line for line in lines if "[label=" in line]) == 3
    assert '  "x" -> "x\'";' in lines
    assert len([line for line in lines if "dashed" in line]) == 1
    assert export_dot(solve_coloring(interaction), name="interaction") == text


def test_dot_export_of_a_markov_unit():

    text = export_dot(markov_unit("0.3", "0.5").machine)

    assert text.count("[label=") == 6
    assert text.count("dashed") == 2


def test_golden_document_layout(tmp_path, interaction: Machine):

    m = load_machine(GOLDEN)

    assert m.color("x'") is None
    assert m.color("y").payload == Fraction(2)
    assert m.agent_map["y"].patients[0].direction is Direction.FORWARD
    assert canonical_key(m) == canonical_key(interaction)

    path = tmp_path / "interaction.json"
    save_machine(interaction, path)

    assert path.read_text(encoding="utf-8") == GOLDEN.read_text(encoding="utf-8")


def test_backward_patients_are_written_as_arrows(interaction: Machine):

    data = machine_to_document(interaction)
    data["agents"][0]["patients"][0]["direction"] = "w→v"
    data["registers"] = [{"id": "x'", "color": "0"}, {"id": "y", "color": "2"}, {"id": "x"}]

    m = machine_from_document(data)

    assert solve_coloring(m).color("x").payload == Fraction(1)
    assert machine_to_document(m)["agents"][0]["patients"][0]["direction"] == "w→v"


def test_register_list_errors(interaction: Machine):

    data = machine_to_document(interaction)

    with pytest.raises(SchemaError) as e:
        machine_from_document({**data, "registers": data["registers"] + [{"id": "z", "color": "1"}]})
    assert e.value.pointer == "/registers/3/id"

    with pytest.raises(SchemaError) as e:
        machine_from_document({**data, "registers": data["registers"] + [{"id": "x"}]})
    assert e.value.pointer == "/registers/3/id"

    with pytest.raises(SchemaError) as e:
        machine_from_document({**data, "colors": {"x": "0"}})
    assert e.value.pointer == "/colors"


def test_agent_documents_keep_the_register_key():

    document = AgentDocument.model_validate({"register": "y", "op": 0})

    assert "register" not in AgentDocument.model_fields
    assert document.agent == "y"
    assert document.model_dump(by_alias=True)["register"] == "y"
