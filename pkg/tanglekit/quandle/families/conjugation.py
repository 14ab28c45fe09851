"""Conjugation quandles of a group: ``x ⊲ y = y⁻¹xy``."""

from fractions import Fraction
from typing import Any, TYPE_CHECKING

import sympy

from tanglekit.errors import CarrierError, ParameterError
from tanglekit.quandle.color import ColorValue, MATRIX, PERMUTATION
from tanglekit.quandle.family import BaseFamily

if TYPE_CHECKING:
    from tanglekit.quandle.quandle import Quandle


def permutation_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inverse = [0] * len(p)
    for i, image in enumerate(p):
        inverse[image] = i
    return tuple(inverse)


def to_sympy_matrix(rows: tuple[tuple[Any, ...], ...]) -> sympy.Matrix:
    return sympy.Matrix(
        [[sympy.Rational(Fraction(e).numerator, Fraction(e).denominator) for e in row] for row in rows]
    )


def from_sympy_matrix(matrix: sympy.Matrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(Fraction(int(sympy.fraction(e)[0]), int(sympy.fraction(e)[1])) for e in matrix.row(i))
        for i in range(matrix.rows)
    )


class ConjugationFamily(BaseFamily):
    """Conjugation in S_n (permutation tuples) or in GL_n(ℚ) (rational matrices).

    Permutations are tuples of images. As maps, ``x ⊲ y = y ∘ x ∘ y⁻¹`` so that
    ``(x ⊲ y)[i] = y[x[y⁻¹[i]]]``; the identity permutation acts trivially.
    """

    name = "conjugation"
    param_key = None
    carriers = ("permutation", "matrix")

    def _validate_param(self, quandle: "Quandle", param: Any):
        if param is not None:
            raise ParameterError("Conjugation takes no parameter, got {!r}".format(param))

    def _apply(self, quandle: "Quandle", param: Any, x: ColorValue, y: ColorValue) -> ColorValue:
        if x.kind == PERMUTATION:
            yinv = permutation_inverse(y.payload)
            return ColorValue(PERMUTATION, tuple(y.payload[x.payload[yinv[i]]] for i in range(len(yinv))))
        return self._conjugate(x, y, inverse=False)

    def _invert(self, quandle: "Quandle", param: Any, z: ColorValue, y: ColorValue) -> ColorValue:
        if z.kind == PERMUTATION:
            yinv = permutation_inverse(y.payload)
            return ColorValue(PERMUTATION, tuple(yinv[z.payload[y.payload[i]]] for i in range(len(yinv))))
        return self._conjugate(z, y, inverse=True)

    @staticmethod
    def _conjugate(x: ColorValue, y: ColorValue, inverse: bool) -> ColorValue:
        if x.kind != MATRIX or y.kind != MATRIX:
            raise CarrierError("Conjugation expects group elements, got '{}'".format(x.kind))
        mx = to_sympy_matrix(x.payload)
        my = to_sympy_matrix(y.payload)
        if my.det() == 0:
            raise CarrierError("Matrix is not invertible")
        result = my * mx * my.inv() if inverse else my.inv() * mx * my
        return ColorValue(MATRIX, from_sympy_matrix(result))
