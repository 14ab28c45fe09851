"""Spectra of Hamiltonian colours."""

from fractions import Fraction
from typing import Any, Sequence
import math

import numpy as np
import scipy.linalg as sla

from tanglekit.errors import HamiltonianError
from tanglekit.quandle.color import HERMITIAN, ColorValue
from tanglekit.quandle.quandle import is_hermitian

H0 = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1)))
H1 = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
SIGMA_X = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))
SIGMA_Z = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1)))

Rows = tuple[tuple[Any, ...], ...]


def hamiltonian_rows(h: ColorValue | Sequence[Sequence[Any]] | np.ndarray) -> Rows:
    """
    The rows of a Hermitian matrix given as a colour, nested sequence or array.

    Raises:
        HamiltonianError: If the matrix is not square and Hermitian.
    """
    if isinstance(h, ColorValue):
        if h.kind != HERMITIAN:
            raise HamiltonianError("Colour of kind '{}' is not a Hamiltonian".format(h.kind))
        rows = h.payload
    else:
        rows = tuple(tuple(row) for row in h)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise HamiltonianError("A Hamiltonian must be a non-empty square matrix")
    if not is_hermitian(rows):
        raise HamiltonianError("Matrix is not Hermitian")
    return rows


def _modulus_squared(value: Any) -> Any:
    if isinstance(value, complex):
        return abs(value) ** 2
    return value * value


def _discriminant(rows: Rows) -> Any:
    """``tr² - 4·det`` of a 2×2 Hermitian matrix, written as ``(a-d)² + 4|b|²``."""
    a, b = rows[0]
    d = rows[1][1]
    value = (a - d) ** 2 + 4 * _modulus_squared(b)
    return value.real if isinstance(value, complex) else value


def eigenvalues(h: ColorValue | Sequence[Sequence[Any]] | np.ndarray) -> np.ndarray:
    """Eigenvalues in ascending order, with multiplicity."""
    rows = hamiltonian_rows(h)
    if len(rows) == 2:
        trace = rows[0][0] + rows[1][1]
        trace = float(trace.real if isinstance(trace, complex) else trace)
        root = math.sqrt(float(_discriminant(rows)))
        return np.array([(trace - root) / 2, (trace + root) / 2])
    dtype = complex if any(isinstance(e, complex) for row in rows for e in row) else float
    return sla.eigvalsh(np.array(rows, dtype=dtype))


def gap(h: ColorValue | Sequence[Sequence[Any]] | np.ndarray) -> float:
    """
    The spectral gap ``λ₁ - λ₀``.

    2×2 matrices use ``sqrt(tr² - 4·det)``, so an exactly degenerate rational matrix has gap 0.0.

    Raises:
        HamiltonianError: If the matrix is not Hermitian or has a single eigenvalue.
    """
    rows = hamiltonian_rows(h)
    if len(rows) < 2:
        raise HamiltonianError("The gap needs at least two eigenvalues")
    if len(rows) == 2:
        return math.sqrt(float(_discriminant(rows)))
    values = eigenvalues(rows)
    return float(values[1] - values[0])


def smallest_eigenvalue(h: ColorValue | Sequence[Sequence[Any]] | np.ndarray) -> float:
    return float(eigenvalues(h)[0])
