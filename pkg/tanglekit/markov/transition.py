"""Transition matrices read off machine colourings, and their stochasticity."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import sympy

import tanglekit.log as log
from tanglekit.config import EPS_EQ
from tanglekit.errors import SingularSystemError, UnderdeterminedError
from tanglekit.machine.coloring import propagate, solve_coloring
from tanglekit.machine.model import Machine


def to_sympy(value: Any) -> sympy.Expr:
    """Fractions and ints become exact rationals, floats stay floats."""
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, float):
        return sympy.Float(value)
    return sympy.sympify(value)


def matrix(rows: Sequence[Sequence[Any]]) -> sympy.ImmutableMatrix:
    return sympy.ImmutableMatrix([[to_sympy(v) for v in row] for row in rows])


def is_exact(m: sympy.MatrixBase) -> bool:
    return all(not isinstance(v, sympy.Float) for v in m)


def same(a: Any, b: Any) -> bool:
    """Exact equality, or ``EPS_EQ`` closeness once a float is involved."""
    if isinstance(a, sympy.Float) or isinstance(b, sympy.Float):
        return abs(float(a) - float(b)) <= EPS_EQ
    return sympy.simplify(a - b) == 0


def matrices_equal(a: sympy.MatrixBase, b: sympy.MatrixBase) -> bool:
    return a.shape == b.shape and all(same(x, y) for x, y in zip(a, b))


def matrix_json(m: sympy.MatrixBase) -> list[list[Any]]:
    def text(value: sympy.Expr) -> Any:
        if isinstance(value, sympy.Float):
            return float(value)
        if value.is_Integer:
            return int(value)
        return str(value)

    return [[text(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def inverse(m: sympy.MatrixBase, what: str) -> sympy.ImmutableMatrix:
    """
    Raises:
        SingularSystemError: If ``m`` is singular.
    """
    det = m.det()
    if same(det, 0):
        raise SingularSystemError("{} is singular".format(what))
    return sympy.ImmutableMatrix(m.inv())


@dataclass(frozen=True)
class TransitionMatrix:
    """A named transition matrix; its stochasticity flags are computed, never declared."""

    name: str
    matrix: sympy.ImmutableMatrix

    def _in_unit_interval(self, value: Any) -> bool:
        return (value >= 0 or same(value, 0)) and (value <= 1 or same(value, 1))

    @property
    def row_stochastic(self) -> bool:
        m = self.matrix
        if not all(self._in_unit_interval(v) for v in m):
            return False
        return all(same(sum(m.row(i)), 1) for i in range(m.rows))

    @property
    def doubly_stochastic(self) -> bool:
        m = self.matrix
        return self.row_stochastic and all(same(sum(m.col(j)), 1) for j in range(m.cols))

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "matrix": matrix_json(self.matrix),
            "row_stochastic": self.row_stochastic,
            "doubly_stochastic": self.doubly_stochastic,
        }


def transfer_matrix(
    m: Machine,
    inputs: Sequence[str],
    outputs: Sequence[str],
    fixed: Mapping[str, Any] | None = None,
) -> sympy.ImmutableMatrix:
    """
    The matrix taking ``inputs`` colours to ``outputs`` colours of a linear machine.

    Column ``j`` is read from the colouring seeded with 1 on ``inputs[j]``, 0 on the other inputs
    and ``fixed`` elsewhere. Propagation is tried first, the full linear solve second.

    Raises:
        UnderdeterminedError: If an output is not determined by the seeds.
    """
    q = m.quandle
    bare = m.without_colors()
    columns: list[list[Any]] = []
    for j in range(len(inputs)):
        seeds: dict[str, Any] = {r: q.color(value) for r, value in (fixed or {}).items()}
        for k, register in enumerate(inputs):
            seeds[register] = q.color(1 if k == j else 0)
        colors = propagate(bare, seeds)
        if any(r not in colors for r in outputs):
            colors = solve_coloring(bare, seeds).color_map
        missing = [r for r in outputs if r not in colors]
        if missing:
            raise UnderdeterminedError(missing)
        columns.append([colors[r].payload for r in outputs])

    result = matrix([[columns[j][i] for j in range(len(inputs))] for i in range(len(outputs))])
    log.trace("Transfer matrix", details={"inputs": list(inputs), "outputs": list(outputs)})
    return result


@dataclass
class Stability:
    """Stable, or the first entry or row that keeps a one-step matrix from being stochastic."""

    stable: bool
    matrix: str | None = None
    row: int | None = None
    column: int | None = None
    value: Any = None

    def to_json(self) -> dict[str, Any]:
        if self.stable:
            return {"verdict": "Stable"}
        value = float(self.value) if isinstance(self.value, sympy.Expr) else self.value
        return {
            "verdict": "Unstable",
            "matrix": self.matrix,
            "row": self.row,
            "column": self.column,
            "value": value,
            "exact": str(self.value),
        }


def internal_stability(matrices: Iterable[TransitionMatrix]) -> Stability:
    """
    Stable when every one-step matrix is row stochastic.

    The witness is the first entry outside ``[0, 1]`` in row-major order, or else the first row
    whose sum differs from 1 (``column`` is then None and ``value`` the row sum).
    """
    for tm in matrices:
        m = tm.matrix
        for i in range(m.rows):
            for j in range(m.cols):
                if not tm._in_unit_interval(m[i, j]):
                    return Stability(False, tm.name, i, j, m[i, j])
        for i in range(m.rows):
            total = sum(m.row(i))
            if not same(total, 1):
                return Stability(False, tm.name, i, None, total)
    return Stability(True)
