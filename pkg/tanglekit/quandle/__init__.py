"""Quandles: colours, the operation family B and the axioms they satisfy.

Folders include the following:

- families: One module per operation family, loaded by name through the FamilyFactory

"""

from .color import ColorValue, colors_close, color_code
from .ops import OpLabel
from .quandle import (
    AxiomReport,
    AxiomResult,
    Carrier,
    Quandle,
    apply,
    check_axioms,
    conjugation_quandle_gl,
    conjugation_quandle_sn,
    dihedral_quandle,
    gf_linear_quandle,
    hermitian_linear_quandle,
    invert,
    kauffman_quandle,
    linear_quandle,
    loglinear_quandle,
    table_quandle,
    vector_linear_quandle,
)
from .automorphism import AffineAutomorphism

__all__ = [
    "AffineAutomorphism",
    "AxiomReport",
    "AxiomResult",
    "Carrier",
    "ColorValue",
    "OpLabel",
    "Quandle",
    "apply",
    "check_axioms",
    "color_code",
    "colors_close",
    "conjugation_quandle_gl",
    "conjugation_quandle_sn",
    "dihedral_quandle",
    "gf_linear_quandle",
    "hermitian_linear_quandle",
    "invert",
    "kauffman_quandle",
    "linear_quandle",
    "loglinear_quandle",
    "table_quandle",
    "vector_linear_quandle",
]
