"""Logging front end used throughout tanglekit.

Import it as ``import tanglekit.log as log`` and call ``log.debug("message {}", value, details={...})``.
Messages are rendered with :class:`rich.logging.RichHandler` on stderr so that stdout stays free
for the JSON documents the CLI emits.
"""

from typing import Any
import json
import logging

from rich.console import Console
from rich.logging import RichHandler

TRACE = 5
logging.addLevelName(TRACE, "TRACE")

LOGGER_NAME = "tanglekit"

_logger = logging.getLogger(LOGGER_NAME)
_logger.addHandler(logging.NullHandler())

_identity: str | None = None


def setup(identity: str = LOGGER_NAME, level: str | int | None = None) -> logging.Logger:
    """
    Attach the rich stderr handler and set the level.

    Calling setup twice replaces the handler rather than stacking a second one.

    Args:
        identity (str): The name shown in front of every message.
        level (str | int | None): Level name ("TRACE", "DEBUG", ...) or number. Defaults to WARNING.

    Returns:
        logging.Logger: The package logger.
    """
    global _identity

    _identity = identity

    for handler in list(_logger.handlers):
        if isinstance(handler, RichHandler):
            _logger.removeHandler(handler)

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
        markup=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    _logger.addHandler(handler)
    _logger.setLevel(_level_number(level))
    _logger.propagate = False

    return _logger


def set_identity(identity: str):
    global _identity
    _identity = identity


def reset_identity():
    global _identity
    _identity = LOGGER_NAME


def get_level() -> int:
    return _logger.level


def _level_number(level: str | int | None) -> int:
    if level is None:
        return logging.WARNING
    if isinstance(level, int):
        return level
    name = level.upper()
    if name == "TRACE":
        return TRACE
    if name == "WARN":
        name = "WARNING"
    number = logging.getLevelName(name)
    return number if isinstance(number, int) else logging.WARNING


def _format(message: str, args: tuple, details: dict[str, Any] | None) -> str:
    text = message.format(*args) if args else message
    if details is not None:
        text = "{} {}".format(text, json.dumps(details, default=str, sort_keys=True))
    if _identity:
        text = "[{}] {}".format(_identity, text)
    return text


def _emit(level: int, message: str, args: tuple, details: dict[str, Any] | None):
    if not _logger.isEnabledFor(level):
        return
    _logger.log(level, _format(message, args, details))


def trace(message: str, *args, details: dict[str, Any] | None = None):
    _emit(TRACE, message, args, details)


def debug(message: str, *args, details: dict[str, Any] | None = None):
    _emit(logging.DEBUG, message, args, details)


def info(message: str, *args, details: dict[str, Any] | None = None):
    _emit(logging.INFO, message, args, details)


def warn(message: str, *args, details: dict[str, Any] | None = None):
    _emit(logging.WARNING, message, args, details)


def error(message: str, *args, details: dict[str, Any] | None = None):
    _emit(logging.ERROR, message, args, details)
