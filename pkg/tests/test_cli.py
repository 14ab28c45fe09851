import json

import pytest

from tanglekit.cli.main import execute
from tanglekit.data import TOY_LEFT, TOY_RIGHT, fixture
from tanglekit.io.document import load_machine, machine_to_document, save_machine
from tanglekit.markov.iteration import basic_unit
from tanglekit.rewrite.canonical import canonical_key
from tanglekit.rewrite.moves import r3


@pytest.fixture(autouse=True)
def rational_precision(monkeypatch):
    monkeypatch.setenv("TANGLEKIT_PRECISION", "rational")
    monkeypatch.setenv("TANGLEKIT_LOG_LEVEL", "ERROR")


def run(capsys, *argv: str) -> tuple[int, dict]:
    code = execute(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_validate(capsys):

    code, output = run(capsys, "validate", str(fixture(TOY_LEFT)))

    assert code == 0
    assert output["command"] == "validate"
    assert output["schema"] == "tanglekit/1"
    assert output["valid"]
    assert output["summary"]["registers"] == 6


def test_validate_broken_colouring(capsys, tmp_path, toy_left):

    data = machine_to_document(toy_left)
    data["registers"] = [{"id": r["id"], "color": "7"} if r["id"] == "X1" else r for r in data["registers"]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))

    code, output = run(capsys, "validate", str(path))

    assert code == 1
    assert not output["ok"]
    assert output["violations"][0]["edge"] == ["X", "X1"]


def test_color_writes_the_completed_machine(capsys, tmp_path, interaction):

    source = tmp_path / "partial.json"
    target = tmp_path / "complete.json"
    save_machine(interaction.without_colors(["x"]), source)

    code, output = run(capsys, "color", str(source), "--set", "x=4", "-o", str(target))

    assert code == 0
    colors = {r["id"]: r.get("color") for r in output["machine"]["registers"]}
    assert colors["x'"] == "3"
    assert load_machine(target).is_complete


def test_color_reports_underdetermined(capsys, tmp_path, interaction):

    source = tmp_path / "partial.json"
    save_machine(interaction.without_colors(["x"]), source)

    code, output = run(capsys, "color", str(source))

    assert code == 1
    assert output["error"]["type"] == "UnderdeterminedError"
    assert output["error"]["unresolved"] == ["x", "x'"]


def test_equiv(capsys):

    code, output = run(capsys, "equiv", str(fixture(TOY_LEFT)), str(fixture(TOY_RIGHT)), "--max-moves", "4")

    assert code == 0
    assert output["status"] == "found"
    assert output["length"] == 1


def test_equiv_inconclusive(capsys):

    code, output = run(capsys, "equiv", str(fixture(TOY_LEFT)), str(fixture(TOY_RIGHT)), "--max-moves", "0")

    assert code == 1
    assert output["status"] == "not_found_within_budget"


def test_moves_and_replay(capsys, tmp_path):

    code, output = run(capsys, "moves", str(fixture(TOY_LEFT)), "--kind", "R3")

    assert code == 0
    assert output["count"] == len(output["moves"]) > 0

    moves = tmp_path / "moves.json"
    target = tmp_path / "replayed.json"
    moves.write_text(json.dumps([r3("Y", "Y1", "Z", [("X", "X1", "X2")]).to_json()]))

    code, output = run(capsys, "replay", str(fixture(TOY_LEFT)), str(moves), "-o", str(target))

    assert code == 0
    assert output["applied"] == 1
    assert canonical_key(load_machine(target)) == canonical_key(load_machine(fixture(TOY_RIGHT)))


def test_invariants(capsys):

    _, left = run(capsys, "invariants", str(fixture(TOY_LEFT)))
    _, right = run(capsys, "invariants", str(fixture(TOY_RIGHT)))

    assert left["profile"] == right["profile"]
    assert left["profile"]["paths"] == 3
    assert left["canonical_key"] != right["canonical_key"]


def test_iterate(capsys, tmp_path):

    unit, _ = basic_unit("1/2")
    path = tmp_path / "filter.json"
    save_machine(unit, path)

    code, output = run(
        capsys,
        "iterate",
        str(path),
        "--pairing",
        "x'=x",
        "--copies",
        "2",
        "--initial",
        "x=0",
        "--control",
        "u=4",
        "--steady",
    )

    assert code == 0
    assert output["trajectory"] == [{"x": "0"}, {"x": "2"}, {"x": "3"}]
    assert output["steady_state"]["state"] == {"x": "4"}


def test_iterate_needs_a_pairing(capsys, tmp_path):

    unit, _ = basic_unit("1/2")
    path = tmp_path / "filter.json"
    save_machine(unit, path)

    code, output = run(capsys, "iterate", str(path))

    assert code == 1
    assert "pairing" in output["error"]["message"]


def test_dot(capsys, tmp_path):

    code, output = run(capsys, "dot", str(fixture(TOY_LEFT)))

    assert code == 0
    assert output["dot"].startswith('digraph "toy_left" {')

    target = tmp_path / "toy.dot"
    code, _ = run(capsys, "dot", str(fixture(TOY_LEFT)), "-o", str(target))

    assert target.read_text() == output["dot"]


def test_demo_info(capsys):

    code, output = run(capsys, "demo-info")

    assert code == 0
    assert output["s"]["exact"] == "7/10"
    assert output["equal_capacities"]


def test_demo_aqc(capsys, tmp_path):

    target = tmp_path / "gaps.csv"
    code, output = run(capsys, "demo-aqc", "--grid", "51", "--csv", str(target))

    assert code == 0
    assert output["feasibility"]["right"]["verdict"] == "Infeasible"
    assert target.read_text().startswith("machine,register,s,gap")


def test_demo_markov(capsys):

    code, output = run(capsys, "demo-markov", "--copies", "2")

    assert code == 0
    assert output["feed_forward"]["orders"] == ["P1P0"]
    assert output["feed_back"]["composite_is_P2"]


def test_missing_file(capsys):

    code, output = run(capsys, "validate", "no-such-machine.json")

    assert code == 1
    assert output["error"]["type"] == "FileNotFoundError"


def test_usage_errors():

    with pytest.raises(SystemExit) as e:
        execute([])
    assert e.value.code == 2

    with pytest.raises(SystemExit) as e:
        execute(["equiv", "only-one.json"])
    assert e.value.code == 2
