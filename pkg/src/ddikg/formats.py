"""Low-level helpers for the line-oriented file formats.

All text formats in this package are UTF-8 with LF line endings.  Blank
lines and lines starting with ``#`` are ignored by every reader.  Floats
are serialized with ``repr``, which is the shortest decimal string that
round-trips exactly; re-writing a parsed file therefore reproduces it
byte for byte.
"""

from __future__ import annotations

import io
import os
from collections.abc import Iterator
from contextlib import contextmanager
from typing import IO, Union

from .errors import ParseError

TextSource = Union[str, os.PathLike, IO[str]]


def fmt_float(x: float) -> str:
    """Shortest exact decimal representation of a float."""
    return repr(float(x))


def source_name(source: TextSource) -> str:
    if isinstance(source, (str, os.PathLike)):
        return os.fspath(source)
    return getattr(source, "name", "<stream>")


@contextmanager
def open_text(source: TextSource, mode: str = "r") -> Iterator[IO[str]]:
    """Yield a text stream for a path or pass an existing stream through."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, mode, encoding="utf-8", newline="" if "w" in mode else None) as fh:
            yield fh
    elif isinstance(source, io.IOBase) or hasattr(source, "read") or hasattr(source, "write"):
        yield source
    else:
        raise TypeError(f"expected path or file object, got {type(source).__name__}")


def iter_tsv(source: TextSource, n_fields: int) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_number, fields)`` for each data line of a TSV source.

    Raises :class:`ParseError` naming the offending line when a data line
    does not split into exactly ``n_fields`` tab-separated fields.
    """
    name = source_name(source)
    with open_text(source) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != n_fields:
                raise ParseError(
                    f"expected {n_fields} tab-separated fields, got {len(fields)}",
                    source=name,
                    line=lineno,
                )
            yield lineno, fields
