"""Produce instances.jsonl files by running a contextual encoder over
sentences with marked drug pairs."""

from .export import DEFAULT_CLASSES, ExporterError, ExportStats, export, load_encoder
from .raw import RawInstance, read_raw

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CLASSES",
    "ExportStats",
    "ExporterError",
    "RawInstance",
    "export",
    "load_encoder",
    "read_raw",
]
