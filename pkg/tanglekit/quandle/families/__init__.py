"""Operation families loaded by name through the FamilyFactory.

- linear: (1-s)x + sy on ℚ, ℝ, GF(p), vectors and Hermitian matrices
- loglinear: x^(1-s) y^s on strictly positive reals
- conjugation: y⁻¹xy on permutations and invertible rational matrices
- table: finite operation tables
"""
