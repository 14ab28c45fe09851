"""Affine solution sets of the colouring constraints of scalar linear machines."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
import scipy.linalg
import sympy
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

import tanglekit.log as log
from tanglekit.config import EPS_EQ
from tanglekit.quandle.families.linear import to_modular

EXACT = "exact"
MODULAR = "modular"
REAL = "real"


def _to_sympy(value: Any) -> sympy.Expr:
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.Integer(value) if isinstance(value, int) else sympy.nsimplify(value)


def _to_fraction(value: sympy.Expr) -> Fraction:
    numerator, denominator = sympy.fraction(value)
    return Fraction(int(numerator), int(denominator))


def _nonzero(value: Any) -> bool:
    if isinstance(value, float):
        return abs(value) > EPS_EQ
    return value != 0


@dataclass(frozen=True)
class AffineSolution:
    """The solutions ``particular + span(basis)`` of an affine system, or no solution at all.

    Attributes:
        variables (tuple[str, ...]): Variable names, in column order.
        particular (tuple | None): One solution, None when the system is inconsistent.
        basis (tuple[tuple, ...]): A basis of the homogeneous solutions.
    """

    variables: tuple[str, ...]
    particular: tuple[Any, ...] | None
    basis: tuple[tuple[Any, ...], ...] = ()

    @property
    def dimension(self) -> int | None:
        return None if self.particular is None else len(self.basis)

    @property
    def kind(self) -> str:
        if self.particular is None:
            return "empty"
        if not self.basis:
            return "point"
        return "line" if len(self.basis) == 1 else "space"

    @property
    def free_variables(self) -> list[str]:
        """Variables that some homogeneous solution moves."""
        return [v for i, v in enumerate(self.variables) if any(_nonzero(b[i]) for b in self.basis)]

    def point(self) -> dict[str, Any]:
        if self.particular is None:
            return {}
        return dict(zip(self.variables, self.particular))

    def to_json(self) -> dict[str, Any]:
        def text(value: Any) -> Any:
            return str(value) if isinstance(value, Fraction) else value

        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "variables": list(self.variables),
            "particular": None if self.particular is None else [text(v) for v in self.particular],
            "basis": [[text(v) for v in b] for b in self.basis],
        }


@dataclass
class AffineSystem:
    """Collect equations ``Σ cᵢ·xᵢ = rhs`` by variable name and solve them.

    Attributes:
        arithmetic (str): "exact" (ℚ, sympy DomainMatrix over QQ), "modular" (GF(p)) or "real"
            (numpy least squares with a scipy null space).
        modulus (int | None): The prime p for modular arithmetic.
    """

    arithmetic: str = EXACT
    modulus: int | None = None
    variables: list[str] = field(default_factory=list)
    rows: list[tuple[dict[int, Any], Any]] = field(default_factory=list)

    def variable(self, name: str) -> int:
        if name not in self.variables:
            self.variables.append(name)
        return self.variables.index(name)

    def add(self, coefficients: dict[str, Any], rhs: Any = 0):
        row: dict[int, Any] = {}
        for name, value in coefficients.items():
            index = self.variable(name)
            row[index] = row.get(index, 0) + value
        self.rows.append((row, rhs))

    def solve(self) -> AffineSolution:
        log.trace(
            "Solving affine system",
            details={"arithmetic": self.arithmetic, "variables": len(self.variables), "equations": len(self.rows)},
        )
        if self.arithmetic == REAL:
            return self._solve_real()
        return self._solve_exact()

    def _dense(self) -> tuple[list[list[Any]], list[Any]]:
        n = len(self.variables)
        matrix = [[row.get(j, 0) for j in range(n)] for row, _ in self.rows]
        return matrix, [rhs for _, rhs in self.rows]

    def _solve_exact(self) -> AffineSolution:
        n = len(self.variables)
        matrix, rhs = self._dense()
        p = self.modulus

        if p is not None:
            augmented = [[sympy.Integer(to_modular(v, p)) for v in row + [b]] for row, b in zip(matrix, rhs)]
        else:
            augmented = [[_to_sympy(v) for v in row + [b]] for row, b in zip(matrix, rhs)]

        if not augmented:
            one, zero = (1, 0) if p is not None else (Fraction(1), Fraction(0))
            basis = tuple(tuple(one if i == j else zero for i in range(n)) for j in range(n))
            return AffineSolution(tuple(self.variables), tuple(zero for _ in range(n)), basis)

        domain = GF(p) if p is not None else QQ
        dm = DomainMatrix.from_list_sympy(len(augmented), n + 1, augmented).convert_to(domain)
        reduced, pivots = dm.rref()
        rows = reduced.to_Matrix()

        def scalar(value: sympy.Expr) -> Any:
            return int(value) % p if p is not None else _to_fraction(value)

        if n in pivots:
            return AffineSolution(tuple(self.variables), None)

        particular = [scalar(sympy.Integer(0))] * n
        for i, column in enumerate(pivots):
            particular[column] = scalar(rows[i, n])

        basis = []
        for free in (j for j in range(n) if j not in pivots):
            vector = [scalar(sympy.Integer(0))] * n
            vector[free] = scalar(sympy.Integer(1))
            for i, column in enumerate(pivots):
                vector[column] = scalar(-rows[i, free])
            basis.append(tuple(vector))

        return AffineSolution(tuple(self.variables), tuple(particular), tuple(basis))

    def _solve_real(self) -> AffineSolution:
        n = len(self.variables)
        matrix, rhs = self._dense()
        if not matrix:
            return AffineSolution(
                tuple(self.variables), tuple(0.0 for _ in range(n)), tuple(tuple(row) for row in np.eye(n).tolist())
            )
        a = np.array(matrix, dtype=float)
        b = np.array(rhs, dtype=float)
        x, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
        if np.linalg.norm(a @ x - b) > EPS_EQ * (1.0 + np.linalg.norm(b)) * max(1, n):
            return AffineSolution(tuple(self.variables), None)
        null = scipy.linalg.null_space(a, rcond=EPS_EQ)
        basis = tuple(tuple(float(v) for v in null[:, k]) for k in range(null.shape[1]))
        return AffineSolution(tuple(self.variables), tuple(float(v) for v in x), basis)


def affine_solution_set(
    matrix: list[list[Any]], rhs: list[Any], arithmetic: str = EXACT, modulus: int | None = None
) -> AffineSolution:
    """
    Solve ``A x = b`` and describe every solution.

    Args:
        matrix: The rows of A.
        rhs: The vector b.
        arithmetic (str): "exact", "modular" or "real".
        modulus (int | None): The prime p when arithmetic is "modular".

    Returns:
        AffineSolution: A particular solution and a basis of the kernel, or the empty set.
    """
    system = AffineSystem(arithmetic=arithmetic, modulus=modulus)
    width = len(matrix[0]) if matrix else 0
    for j in range(width):
        system.variable("x{}".format(j))
    for row, b in zip(matrix, rhs):
        system.add({"x{}".format(j): v for j, v in enumerate(row) if v != 0}, b)
    return system.solve()
