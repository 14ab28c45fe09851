"""Colour values carried by machine registers."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any
import cmath
import math

from tanglekit.config import EPS_EQ

RATIONAL = "rational"
FLOAT = "float"
GF = "gf"
VECTOR = "vector"
HERMITIAN = "hermitian"
PERMUTATION = "permutation"
MATRIX = "matrix"
FINITE = "finite"

COLOR_KINDS = (RATIONAL, FLOAT, GF, VECTOR, HERMITIAN, PERMUTATION, MATRIX, FINITE)

SCALAR_KINDS = (RATIONAL, FLOAT, GF)


@dataclass(frozen=True)
class ColorValue:
    """A tagged element of a quandle carrier.

    The payload is normalised by :class:`tanglekit.quandle.quandle.Carrier`:

    * rational: ``Fraction``
    * float: ``float``
    * gf: ``int`` in ``range(p)``
    * vector: tuple of entries
    * hermitian, matrix: tuple of row tuples
    * permutation: tuple of images of ``0..n-1``
    * finite: ``int`` index into the finite carrier
    """

    kind: str
    payload: Any

    def __str__(self) -> str:
        return color_text(self)

    @property
    def is_exact(self) -> bool:
        return all(not isinstance(e, (float, complex)) for e in entries(self))


def entries(color: ColorValue) -> list[Any]:
    """Flatten the payload into its numeric entries."""
    payload = color.payload
    if color.kind in (HERMITIAN, MATRIX):
        return [e for row in payload for e in row]
    if color.kind in (VECTOR, PERMUTATION):
        return list(payload)
    return [payload]


def shape(color: ColorValue) -> tuple[int, ...]:
    payload = color.payload
    if color.kind in (HERMITIAN, MATRIX):
        return (len(payload), len(payload[0]) if payload else 0)
    if color.kind in (VECTOR, PERMUTATION):
        return (len(payload),)
    return ()


def _entries_close(a: Any, b: Any) -> bool:
    if isinstance(a, complex) or isinstance(b, complex):
        return cmath.isclose(complex(a), complex(b), rel_tol=EPS_EQ, abs_tol=EPS_EQ)
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(float(a), float(b), rel_tol=EPS_EQ, abs_tol=EPS_EQ)
    return a == b


def colors_close(a: ColorValue | None, b: ColorValue | None) -> bool:
    """Exact equality for exact payloads, ``EPS_EQ`` tolerance as soon as a float is involved."""
    if a is None or b is None:
        return a is b
    if a.kind != b.kind or shape(a) != shape(b):
        return False
    return all(_entries_close(x, y) for x, y in zip(entries(a), entries(b)))


def fraction_text(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def _quantize(value: float) -> str:
    quantum = round(value / EPS_EQ)
    return "~{}".format(0 if quantum == 0 else quantum)


def entry_code(value: Any) -> str:
    """Deterministic text for one entry; floats are quantized at ``EPS_EQ``."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, complex):
        return "{},{}".format(_quantize(value.real), _quantize(value.imag))
    if isinstance(value, float):
        return _quantize(value)
    if isinstance(value, (int, Fraction)):
        return fraction_text(value)
    return str(value)


def color_code(color: ColorValue) -> str:
    """A hashable text code equal for colours that compare equal (floats up to quantization)."""
    payload = color.payload
    if color.kind in (HERMITIAN, MATRIX):
        body = ";".join(",".join(entry_code(e) for e in row) for row in payload)
    elif color.kind in (VECTOR, PERMUTATION):
        body = ",".join(entry_code(e) for e in payload)
    else:
        body = entry_code(payload)
    return "{}:{}".format(color.kind, body)


def _entry_text(value: Any) -> str:
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return fraction_text(value)
    if isinstance(value, complex):
        return "{}{:+}j".format(value.real, value.imag)
    return repr(value)


def color_text(color: ColorValue) -> str:
    """Human readable rendering used in reports and DOT labels."""
    payload = color.payload
    if color.kind in (HERMITIAN, MATRIX):
        return "[" + "; ".join(" ".join(_entry_text(e) for e in row) for row in payload) + "]"
    if color.kind in (VECTOR, PERMUTATION):
        return "(" + ", ".join(_entry_text(e) for e in payload) + ")"
    return _entry_text(payload)


def to_float(color: ColorValue) -> float:
    """The value of a scalar colour as a float."""
    if color.kind not in SCALAR_KINDS:
        raise TypeError("Colour of kind '{}' is not a scalar".format(color.kind))
    return float(color.payload)
