import pytest

from tanglekit.errors import CanonicalizationError
from tanglekit.machine.model import Machine, MachineBuilder
from tanglekit.quandle.quandle import linear_quandle
from tanglekit.rewrite.canonical import canonical_key, isomorphism
from tanglekit.rewrite.search import SearchBudget, SearchStatus, search_equivalent

SPOKES = 6


def loose_registers(count: int) -> Machine:
    builder = MachineBuilder(linear_quandle("1/2"))
    for i in range(count):
        builder.path("r{}".format(i)).color("r{}".format(i), 1)
    return builder.build()


def wheel(backward: int | None = None) -> Machine:
    """``y`` acts on SPOKES identical edges; spoke ``backward`` is flipped when given."""
    builder = MachineBuilder(linear_quandle("1/2")).path("y").color("y", 2)
    patients = []
    for i in range(SPOKES):
        v, w = "x{}".format(i), "x{}'".format(i)
        builder.path(v, w)
        if i == backward:
            patients.append((v, w, "backward"))
            builder.colors({v: 1, w: 0})
        else:
            patients.append((v, w))
            builder.colors({v: 0, w: 1})
    return builder.agent("y", 0, patients=patients).build()


def test_interchangeable_components_have_a_key():

    m = loose_registers(9)
    renamed = m.rename_registers({"r{}".format(i): "s{}".format(8 - i) for i in range(9)})

    assert canonical_key(m) == canonical_key(renamed)
    assert canonical_key(m) != canonical_key(loose_registers(8))


def test_symmetric_machine_is_equivalent_to_itself():

    m = loose_registers(9)
    result = search_equivalent(m, m, SearchBudget(max_moves=1))

    assert result.status is SearchStatus.FOUND
    assert result.moves == []


def test_symmetric_agent_keeps_its_isomorphism():

    m = wheel()
    shift = {"x{}".format(i): "x{}".format((i + 1) % SPOKES) for i in range(SPOKES)}
    shift.update({"x{}'".format(i): "x{}'".format((i + 1) % SPOKES) for i in range(SPOKES)})
    renamed = m.rename_registers(shift)

    mapping = isomorphism(m, renamed)

    assert mapping is not None
    assert mapping["y"] == "y"
    assert all(m.color(r) == renamed.color(mapping[r]) for r in m.registers)
    for r in m.registers:
        following = m.successor(r)
        assert renamed.successor(mapping[r]) == (mapping[following] if following else None)


def test_flipped_patient_changes_the_key():

    assert canonical_key(wheel(backward=3)) == canonical_key(wheel(backward=0))
    assert canonical_key(wheel(backward=3)) != canonical_key(wheel())


def test_rotated_cycles_share_a_key():

    q = linear_quandle("1/2")
    a = MachineBuilder(q)
    b = MachineBuilder(q)
    for i in range(5):
        names = ["c{}_{}".format(i, k) for k in range(3)]
        a.cycle(*names)
        b.cycle(*(names[i % 3:] + names[:i % 3]))
        a.colors({n: 1 for n in names})
        b.colors({n: 1 for n in names})

    assert canonical_key(a.build()) == canonical_key(b.build())


def test_uncoloured_registers_cannot_be_canonicalized():

    with pytest.raises(CanonicalizationError):
        canonical_key(wheel().without_colors(["y"]))
