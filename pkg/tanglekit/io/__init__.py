"""Reading and writing machines: versioned documents and DOT export."""

from .document import (
    SCHEMA_VERSION,
    MachineDocument,
    load_machine,
    machine_from_document,
    machine_to_document,
    moves_from_document,
    read_document,
    save_machine,
    write_document,
)
from .dot import export_dot

__all__ = [
    "MachineDocument",
    "SCHEMA_VERSION",
    "export_dot",
    "load_machine",
    "machine_from_document",
    "machine_to_document",
    "moves_from_document",
    "read_document",
    "save_machine",
    "write_document",
]
