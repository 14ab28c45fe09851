from fractions import Fraction

import numpy as np
import pytest

from tanglekit.data import TOY_LEFT, TOY_RIGHT, fixture
from tanglekit.io.document import load_machine
from tanglekit.machine.coloring import solve_coloring
from tanglekit.machine.model import Machine, MachineBuilder
from tanglekit.quandle.quandle import linear_quandle

QUICK_MACHINES = 12
FULL_MACHINES = 200

QUICK_DOCUMENTS = 40
FULL_DOCUMENTS = 500


def pytest_addoption(parser):
    parser.addoption(
        "--full-sweep",
        action="store_true",
        default=False,
        help="Run the randomized property sweeps at their full sizes",
    )


@pytest.fixture
def full_sweep(pytestconfig) -> bool:
    return pytestconfig.getoption("--full-sweep")


@pytest.fixture
def machine_count(full_sweep) -> int:
    return FULL_MACHINES if full_sweep else QUICK_MACHINES


@pytest.fixture
def document_count(full_sweep) -> int:
    return FULL_DOCUMENTS if full_sweep else QUICK_DOCUMENTS


def random_machine(seed: int) -> Machine:
    """
    A fully coloured machine with at most 12 registers over a rational linear quandle.

    Agents only act on components that come after their own, so every colour follows from the
    initial colours.
    """
    rng = np.random.default_rng(seed)
    q = linear_quandle("1/2", "1/3")
    builder = MachineBuilder(q)

    components: list[list[str]] = []
    count = 0
    for _ in range(int(rng.integers(2, 5))):
        size = int(rng.integers(1, 4))
        registers = ["r{}".format(count + i) for i in range(size)]
        count += size
        components.append(registers)
        builder.path(*registers)

    ops: dict[str, int] = {}
    for k in range(1, len(components)):
        earlier = [r for c in components[:k] for r in c]
        registers = components[k]
        for v, w in zip(registers, registers[1:]):
            if rng.random() < 0.7:
                agent = earlier[int(rng.integers(len(earlier)))]
                op = ops.setdefault(agent, int(rng.integers(len(q.operations))))
                direction = "forward" if rng.random() < 0.5 else "backward"
                builder.agent(agent, op, patients=[(v, w, direction)])

    for registers in components:
        builder.color(registers[0], Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4))))

    return solve_coloring(builder.build())


@pytest.fixture
def machine_factory():
    return random_machine


@pytest.fixture
def toy_left() -> Machine:
    return load_machine(fixture(TOY_LEFT))


@pytest.fixture
def toy_right() -> Machine:
    return load_machine(fixture(TOY_RIGHT))


@pytest.fixture
def interaction() -> Machine:
    """A single interaction: y acts with s = 1/2 on the edge (x, x')."""
    return (
        MachineBuilder(linear_quandle("1/2"))
        .path("x", "x'")
        .path("y")
        .agent("y", 0, patients=[("x", "x'")])
        .colors({"x": 0, "y": 2})
        .build()
    )
