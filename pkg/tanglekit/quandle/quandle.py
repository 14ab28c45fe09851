"""Carriers, B-family quandles, the quandle operations and the axiom checker."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from typing import Any, Iterator
import json

import numpy as np
import sympy
from pydantic import BaseModel

import tanglekit.log as log
from tanglekit.config import EPS_HERMITIAN, PRECISION_FLOAT, to_number
from tanglekit.errors import CarrierError, ParameterError, QuandleError
from tanglekit.quandle.color import (
    ColorValue,
    FINITE,
    FLOAT,
    GF,
    HERMITIAN,
    MATRIX,
    PERMUTATION,
    RATIONAL,
    VECTOR,
    colors_close,
    fraction_text,
)
from tanglekit.quandle.factory import FamilyFactory
from tanglekit.quandle.ops import OpLabel

CARRIER_COLOR_KINDS: dict[str, str] = {
    "rational": RATIONAL,
    "real": FLOAT,
    "positive": FLOAT,
    "gf": GF,
    "vector": VECTOR,
    "hermitian": HERMITIAN,
    "permutation": PERMUTATION,
    "matrix": MATRIX,
    "finite": FINITE,
}

FINITE_CARRIERS = ("gf", "permutation", "finite")

DEFAULT_SAMPLES = 1000


def _parse_entry(raw: Any, exact: bool) -> Any:
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        value = complex(float(raw[0]), float(raw[1]))
        return value if value.imag != 0.0 else value.real
    if isinstance(raw, complex):
        return raw if raw.imag != 0.0 else raw.real
    if exact:
        if isinstance(raw, float):
            return Fraction(str(raw))
        return Fraction(raw) if not isinstance(raw, str) else Fraction(raw.strip())
    if isinstance(raw, str):
        return float(Fraction(raw.strip()))
    return float(raw)


def _encode_entry(value: Any) -> Any:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Fraction):
        return fraction_text(value)
    if isinstance(value, bool):
        return int(value)
    return value


def _conj(value: Any) -> Any:
    return value.conjugate() if isinstance(value, complex) else value


@dataclass(frozen=True)
class Carrier:
    """The underlying set of a quandle.

    Attributes:
        kind (str): One of rational, real, positive, gf, vector, hermitian, permutation, matrix,
            finite.
        dimension (int | None): Vector length, matrix size, permutation degree or finite size.
        modulus (int | None): The prime p of GF(p).
        exact (bool): Whether entries are kept as fractions (vector, hermitian) or floats.
    """

    kind: str
    dimension: int | None = None
    modulus: int | None = None
    exact: bool = True

    def __post_init__(self):
        if self.kind not in CARRIER_COLOR_KINDS:
            raise CarrierError("Unknown carrier kind '{}'".format(self.kind))
        if self.kind == "gf":
            if self.modulus is None or not sympy.isprime(self.modulus):
                raise CarrierError("GF(p) needs a prime modulus, got {}".format(self.modulus))
        if self.kind in ("vector", "hermitian", "permutation", "matrix", "finite"):
            if self.dimension is None or self.dimension < 1:
                raise CarrierError("Carrier '{}' needs a positive dimension".format(self.kind))
        if self.kind in ("real", "positive") and self.exact:
            object.__setattr__(self, "exact", False)

    @property
    def color_kind(self) -> str:
        return CARRIER_COLOR_KINDS[self.kind]

    @property
    def is_finite(self) -> bool:
        return self.kind in FINITE_CARRIERS

    def color(self, raw: Any) -> ColorValue:
        """
        Coerce a plain Python or JSON value into a colour of this carrier.

        Raises:
            CarrierError: If the value does not belong to the carrier.
        """
        if isinstance(raw, ColorValue):
            self.check(raw)
            return raw
        try:
            color = self._coerce(raw)
        except (TypeError, ValueError, ZeroDivisionError, IndexError) as e:
            raise CarrierError("Value {!r} is not in carrier '{}': {}".format(raw, self.kind, e))
        self.check(color)
        return color

    def _coerce(self, raw: Any) -> ColorValue:
        kind = self.kind
        if kind == "rational":
            return ColorValue(RATIONAL, _parse_entry(raw, True))
        if kind in ("real", "positive"):
            return ColorValue(FLOAT, _parse_entry(raw, False))
        if kind == "gf":
            return ColorValue(GF, int(raw) % self.modulus)
        if kind == "vector":
            return ColorValue(VECTOR, tuple(_parse_entry(e, self.exact) for e in raw))
        if kind == "hermitian":
            return ColorValue(
                HERMITIAN, tuple(tuple(_parse_entry(e, self.exact) for e in row) for row in raw)
            )
        if kind == "matrix":
            return ColorValue(MATRIX, tuple(tuple(_parse_entry(e, True) for e in row) for row in raw))
        if kind == "permutation":
            return ColorValue(PERMUTATION, tuple(int(e) for e in raw))
        return ColorValue(FINITE, int(raw))

    def check(self, color: ColorValue):
        """Raise CarrierError unless ``color`` is an element of this carrier."""
        if color.kind != self.color_kind:
            raise CarrierError(
                "Colour of kind '{}' is not in carrier '{}'".format(color.kind, self.kind)
            )
        payload = color.payload
        n = self.dimension
        if self.kind == "positive" and not payload > 0:
            raise CarrierError("Colour {} is not strictly positive".format(payload))
        if self.kind == "gf" and not 0 <= payload < self.modulus:
            raise CarrierError("Colour {} is not reduced modulo {}".format(payload, self.modulus))
        if self.kind == "finite" and not 0 <= payload < n:
            raise CarrierError("Colour {} is outside the finite carrier of size {}".format(payload, n))
        if self.kind == "vector" and len(payload) != n:
            raise CarrierError("Vector colour has length {}, expected {}".format(len(payload), n))
        if self.kind in ("hermitian", "matrix"):
            if len(payload) != n or any(len(row) != n for row in payload):
                raise CarrierError("Matrix colour is not {}x{}".format(n, n))
        if self.kind == "hermitian" and not is_hermitian(payload):
            raise CarrierError("Matrix colour is not Hermitian")
        if self.kind == "permutation" and sorted(payload) != list(range(n)):
            raise CarrierError("Colour {} is not a permutation of 0..{}".format(payload, n - 1))

    def encode(self, color: ColorValue) -> Any:
        """The JSON value of a colour (rational entries as "p/q" strings)."""
        payload = color.payload
        if color.kind in (HERMITIAN, MATRIX):
            return [[_encode_entry(e) for e in row] for row in payload]
        if color.kind in (VECTOR, PERMUTATION):
            return [_encode_entry(e) for e in payload]
        return _encode_entry(payload)

    def elements(self) -> Iterator[ColorValue]:
        """Enumerate a finite carrier."""
        if self.kind == "gf":
            return (ColorValue(GF, i) for i in range(self.modulus))
        if self.kind == "finite":
            return (ColorValue(FINITE, i) for i in range(self.dimension))
        if self.kind == "permutation":
            return (ColorValue(PERMUTATION, p) for p in permutations(range(self.dimension)))
        raise CarrierError("Carrier '{}' is not finite".format(self.kind))

    def sample(self, rng: np.random.Generator) -> ColorValue:
        """Draw a random element; used by the sampled axiom checks and the test factories."""
        kind = self.kind
        n = self.dimension or 0

        def rational() -> Fraction:
            return Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9)))

        def entry() -> Any:
            return rational() if self.exact else float(rng.uniform(-10.0, 10.0))

        if kind == "rational":
            return ColorValue(RATIONAL, rational())
        if kind == "real":
            return ColorValue(FLOAT, float(rng.uniform(-10.0, 10.0)))
        if kind == "positive":
            return ColorValue(FLOAT, float(rng.uniform(0.1, 10.0)))
        if kind == "vector":
            return ColorValue(VECTOR, tuple(entry() for _ in range(n)))
        if kind == "hermitian":
            rows = [[None] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = entry()
                for j in range(i + 1, n):
                    value = entry()
                    if not self.exact:
                        value = complex(value, float(rng.uniform(-10.0, 10.0)))
                    rows[i][j] = value
                    rows[j][i] = _conj(value)
            return ColorValue(HERMITIAN, tuple(tuple(row) for row in rows))
        if kind == "matrix":
            while True:
                rows = tuple(
                    tuple(Fraction(int(rng.integers(-3, 4))) for _ in range(n)) for _ in range(n)
                )
                if sympy.Matrix(rows).det() != 0:
                    return ColorValue(MATRIX, rows)
        if kind == "gf":
            return ColorValue(GF, int(rng.integers(0, self.modulus)))
        if kind == "permutation":
            return ColorValue(PERMUTATION, tuple(int(i) for i in rng.permutation(n)))
        return ColorValue(FINITE, int(rng.integers(0, n)))

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.dimension is not None:
            data["dimension"] = self.dimension
        if self.modulus is not None:
            data["modulus"] = self.modulus
        if self.kind in ("vector", "hermitian"):
            data["exact"] = self.exact
        return data


def is_hermitian(rows: tuple[tuple[Any, ...], ...]) -> bool:
    n = len(rows)
    for i in range(n):
        for j in range(i, n):
            a = rows[i][j]
            b = _conj(rows[j][i])
            if isinstance(a, (float, complex)) or isinstance(b, (float, complex)):
                if abs(complex(a) - complex(b)) > EPS_HERMITIAN:
                    return False
            elif a != b:
                return False
    return True


@dataclass(frozen=True)
class Quandle:
    """A B-family of quandles: one carrier and an indexed set of operations.

    Attributes:
        carrier (Carrier): The underlying set.
        operations (tuple[OpLabel, ...]): The operations of B (non-inverted labels).
        tables (tuple): Operation tables for the "table" family, indexed by the op parameter.
        samples (int): Number of sampled triples for axiom checks on infinite carriers.
        seed (int): Seed for those samples.
        strict (bool): Validate operation parameters on construction. Only axiom experiments
            switch this off.
    """

    carrier: Carrier
    operations: tuple[OpLabel, ...]
    tables: tuple[tuple[tuple[int, ...], ...], ...] = ()
    samples: int = field(default=DEFAULT_SAMPLES, compare=False)
    seed: int = field(default=0, compare=False)
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        ops: list[OpLabel] = []
        for op in self.operations:
            if op.base not in ops:
                ops.append(op.base)
        if not ops:
            raise QuandleError("A quandle needs at least one operation")
        object.__setattr__(self, "operations", tuple(ops))
        object.__setattr__(
            self, "tables", tuple(tuple(tuple(int(v) for v in row) for row in t) for t in self.tables)
        )
        for op in ops:
            family = FamilyFactory.load(op.family)
            if self.strict:
                family.validate_param(self, op.param)
            elif not family.supports(self.carrier.kind):
                raise ParameterError(
                    "Family '{}' does not operate on carrier '{}'".format(op.family, self.carrier.kind)
                )

    @cached_property
    def operation_pool(self) -> tuple[OpLabel, ...]:
        """Every operation together with its inverse, in a fixed order."""
        pool: list[OpLabel] = []
        for op in self.operations:
            pool.append(op)
            pool.append(op.inverted())
        return tuple(pool)

    @cached_property
    def inverse_tables(self) -> tuple[tuple[tuple[int | None, ...], ...], ...]:
        result = []
        for table in self.tables:
            n = len(table)
            inverse: list[list[int | None]] = [[None] * n for _ in range(n)]
            for x, y in product(range(n), range(n)):
                z = table[x][y]
                if 0 <= z < n and inverse[z][y] is None:
                    inverse[z][y] = x
            result.append(tuple(tuple(row) for row in inverse))
        return tuple(result)

    def operation(self, index: int = 0) -> OpLabel:
        return self.operations[index]

    def color(self, raw: Any) -> ColorValue:
        return self.carrier.color(raw)

    def is_admissible(self, op: OpLabel) -> bool:
        return op.base in self.operations

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "carrier": self.carrier.to_json(),
            "operations": [op.to_json() for op in self.operations],
        }
        if self.tables:
            data["tables"] = [[list(row) for row in t] for t in self.tables]
        return data

    @cached_property
    def code(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(data: dict[str, Any], precision: str | None = None) -> "Quandle":
        carrier_data = data["carrier"]
        carrier = Carrier(
            kind=carrier_data["kind"],
            dimension=carrier_data.get("dimension"),
            modulus=carrier_data.get("modulus"),
            exact=carrier_data.get("exact", True),
        )
        if precision is None:
            precision = "rational" if carrier.exact else PRECISION_FLOAT
        operations = tuple(OpLabel.from_json(op, precision) for op in data["operations"])
        return Quandle(carrier, operations, tuple(data.get("tables", ())))


def apply(q: Quandle, op: OpLabel, x: ColorValue, y: ColorValue) -> ColorValue:
    """
    Return ``x ⊲ y`` for the operation ``op``; an inverse label returns ``x ⊳⁻¹ y``.

    Raises:
        QuandleError: If the operation is not in the quandle's family.
        CarrierError: If an operand is not in the carrier or the family cannot handle it.
    """
    if not q.is_admissible(op):
        raise QuandleError("Operation {} is not part of this quandle".format(op.code))
    kind = q.carrier.color_kind
    if x.kind != kind or y.kind != kind:
        raise CarrierError(
            "Operands of kind '{}', '{}' do not belong to carrier '{}'".format(x.kind, y.kind, q.carrier.kind)
        )
    family = FamilyFactory.load(op.family)
    if op.inverse:
        return family.invert(q, op.param, x, y)
    return family.apply(q, op.param, x, y)


def invert(q: Quandle, op: OpLabel, z: ColorValue, y: ColorValue) -> ColorValue:
    """Return the unique ``x`` with ``apply(q, op, x, y) == z``."""
    return apply(q, op.inverted(), z, y)


class AxiomResult(BaseModel):
    axiom: str
    passed: bool
    checked: int
    witness: list[str] | None = None
    operations: list[str] | None = None
    message: str | None = None


class AxiomReport(BaseModel):
    exhaustive: bool
    results: list[AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, axiom: str) -> AxiomResult:
        return next(r for r in self.results if r.axiom == axiom)


_ARITHMETIC_FAILURES = (ArithmeticError, ValueError, QuandleError)


class _AxiomTally:
    def __init__(self, axiom: str):
        self.axiom = axiom
        self.checked = 0
        self.witness: list[ColorValue] | None = None
        self.operations: list[OpLabel] | None = None
        self.message: str | None = None

    @property
    def failed(self) -> bool:
        return self.witness is not None

    def record(self, ok: bool, witness: list[ColorValue], ops: list[OpLabel], message: str | None = None):
        self.checked += 1
        if not ok and self.witness is None:
            self.witness = witness
            self.operations = ops
            self.message = message

    def result(self) -> AxiomResult:
        return AxiomResult(
            axiom=self.axiom,
            passed=self.witness is None,
            checked=self.checked,
            witness=[str(c) for c in self.witness] if self.witness is not None else None,
            operations=[op.code for op in self.operations] if self.operations is not None else None,
            message=self.message,
        )


def _check_idempotence(q: Quandle, tally: _AxiomTally, op: OpLabel, x: ColorValue):
    try:
        tally.record(colors_close(apply(q, op, x, x), x), [x], [op])
    except _ARITHMETIC_FAILURES as e:
        tally.record(False, [x], [op], str(e) or type(e).__name__)


def _check_reversibility(q: Quandle, tally: _AxiomTally, op: OpLabel, x: ColorValue, y: ColorValue):
    try:
        ok = colors_close(invert(q, op, apply(q, op, x, y), y), x)
        ok = ok and colors_close(apply(q, op, invert(q, op, x, y), y), x)
        tally.record(ok, [x, y], [op])
    except _ARITHMETIC_FAILURES as e:
        tally.record(False, [x, y], [op], str(e) or type(e).__name__)


def _check_distributivity(
    q: Quandle, tally: _AxiomTally, op1: OpLabel, op2: OpLabel, x: ColorValue, y: ColorValue, z: ColorValue
):
    try:
        left = apply(q, op2, apply(q, op1, x, y), z)
        right = apply(q, op1, apply(q, op2, x, z), apply(q, op2, y, z))
        tally.record(colors_close(left, right), [x, y, z], [op1, op2])
    except _ARITHMETIC_FAILURES as e:
        tally.record(False, [x, y, z], [op1, op2], str(e) or type(e).__name__)


def check_axioms(q: Quandle) -> AxiomReport:
    """
    Check idempotence, two-sided reversibility and distributivity.

    Finite carriers are checked exhaustively over every element and every pair of operations
    (inverses included). Other carriers use ``q.samples`` seeded random triples. A failing axiom
    reports the first witness found; failures are data, never exceptions.

    Args:
        q (Quandle): The quandle to check.

    Returns:
        AxiomReport: One result per axiom.
    """
    idempotence = _AxiomTally("idempotence")
    reversibility = _AxiomTally("reversibility")
    distributivity = _AxiomTally("distributivity")
    pool = q.operation_pool

    exhaustive = q.carrier.is_finite

    log.debug(
        "Checking quandle axioms",
        details={"carrier": q.carrier.kind, "operations": [op.code for op in pool], "exhaustive": exhaustive},
    )

    if exhaustive:
        elements = list(q.carrier.elements())
        for op, x in product(pool, elements):
            _check_idempotence(q, idempotence, op, x)
        for op, x, y in product(pool, elements, elements):
            _check_reversibility(q, reversibility, op, x, y)
        for op1, op2, x, y, z in product(pool, pool, elements, elements, elements):
            _check_distributivity(q, distributivity, op1, op2, x, y, z)
    else:
        rng = np.random.default_rng(q.seed)
        for _ in range(q.samples):
            x, y, z = (q.carrier.sample(rng) for _ in range(3))
            op1 = pool[int(rng.integers(len(pool)))]
            op2 = pool[int(rng.integers(len(pool)))]
            _check_idempotence(q, idempotence, op1, x)
            _check_reversibility(q, reversibility, op1, x, y)
            _check_distributivity(q, distributivity, op1, op2, x, y, z)

    report = AxiomReport(
        exhaustive=exhaustive,
        results=[idempotence.result(), reversibility.result(), distributivity.result()],
    )

    if not report.passed:
        log.info("Quandle axioms failed", details=report.model_dump())

    return report


def _numbers(params: tuple[Any, ...], precision: str | None) -> tuple[Any, ...]:
    return tuple(to_number(p, precision) for p in params)


def linear_quandle(*params: Any, precision: str | None = None) -> Quandle:
    """Linear quandle over ℚ (rational precision) or ℝ (float precision)."""
    values = _numbers(params, precision)
    kind = "real" if any(isinstance(v, float) for v in values) else "rational"
    return Quandle(Carrier(kind), tuple(OpLabel("linear", v) for v in values))


def gf_linear_quandle(modulus: int, *params: Any) -> Quandle:
    """Linear quandle over the prime field GF(p); parameters are reduced mod p."""
    return Quandle(
        Carrier("gf", modulus=modulus),
        tuple(OpLabel("linear", Fraction(p)) for p in params),
    )


def kauffman_quandle(modulus: int) -> Quandle:
    """``a ⊲ b = 2b - a`` over GF(p)."""
    return gf_linear_quandle(modulus, 2)


def vector_linear_quandle(dimension: int, *params: Any, exact: bool = True) -> Quandle:
    precision = "rational" if exact else PRECISION_FLOAT
    return Quandle(
        Carrier("vector", dimension=dimension, exact=exact),
        tuple(OpLabel("linear", v) for v in _numbers(params, precision)),
    )


def hermitian_linear_quandle(dimension: int, *params: Any, exact: bool = True) -> Quandle:
    """Entrywise linear quandle on d×d Hermitian matrices: ``(1-s)X + sY``."""
    precision = "rational" if exact else PRECISION_FLOAT
    return Quandle(
        Carrier("hermitian", dimension=dimension, exact=exact),
        tuple(OpLabel("linear", v) for v in _numbers(params, precision)),
    )


def loglinear_quandle(*params: Any) -> Quandle:
    return Quandle(Carrier("positive"), tuple(OpLabel("loglinear", v) for v in _numbers(params, "rational")))


def conjugation_quandle_sn(n: int) -> Quandle:
    return Quandle(Carrier("permutation", dimension=n), (OpLabel("conjugation"),))


def conjugation_quandle_gl(n: int) -> Quandle:
    return Quandle(Carrier("matrix", dimension=n), (OpLabel("conjugation"),))


def table_quandle(*tables: list[list[int]]) -> Quandle:
    size = len(tables[0])
    return Quandle(
        Carrier("finite", dimension=size),
        tuple(OpLabel("table", i) for i in range(len(tables))),
        tuple(tuple(tuple(row) for row in t) for t in tables),
    )


def dihedral_quandle(n: int) -> Quandle:
    """The dihedral quandle R_n: ``x ⊲ y = 2y - x mod n``."""
    return table_quandle([[(2 * y - x) % n for y in range(n)] for x in range(n)])
