"""Runtime configuration read from the environment (and an optional ``.env`` file)."""

from fractions import Fraction
import os

from dotenv import load_dotenv

import tanglekit.log as log

load_dotenv()

EPS_EQ = 1e-9
"""float: Tolerance for comparing float colours."""

EPS_HERMITIAN = 1e-12
"""float: Tolerance for the Hermitian check on float matrices."""

PRECISION_RATIONAL = "rational"
PRECISION_FLOAT = "float"
PRECISIONS = (PRECISION_RATIONAL, PRECISION_FLOAT)

DEFAULT_MAX_STATES = 20000


def get_precision() -> str:
    """Return TANGLEKIT_PRECISION, one of "rational" or "float". Default is "rational"."""
    precision = os.getenv("TANGLEKIT_PRECISION", PRECISION_RATIONAL).strip().lower()
    if precision not in PRECISIONS:
        log.warn("Ignoring TANGLEKIT_PRECISION={}, using {}", precision, PRECISION_RATIONAL)
        return PRECISION_RATIONAL
    return precision


def get_log_level() -> str:
    return os.getenv("TANGLEKIT_LOG_LEVEL", "WARNING").strip().upper()


def get_seed() -> int:
    return _int_from_env("TANGLEKIT_SEED", 0)


def get_max_states() -> int:
    return _int_from_env("TANGLEKIT_MAX_STATES", DEFAULT_MAX_STATES)


def _int_from_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        log.warn("Ignoring {}={}, using {}", name, value, default)
        return default


def to_number(value: str | int | float | Fraction, precision: str | None = None) -> Fraction | float:
    """
    Convert a command line or document value into the number type of the precision mode.

    Rational mode goes through ``Fraction(str(value))`` so that ``0.7`` becomes ``7/10`` rather
    than the binary expansion of the float.

    Args:
        value: The value to convert. Strings such as "1/2" or "0.3" are accepted.
        precision (str | None): "rational" or "float". Defaults to :func:`get_precision`.

    Returns:
        Fraction | float: The converted number.
    """
    precision = precision or get_precision()
    if precision == PRECISION_FLOAT:
        if isinstance(value, str) and "/" in value:
            return float(Fraction(value))
        return float(value)
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value).strip())
