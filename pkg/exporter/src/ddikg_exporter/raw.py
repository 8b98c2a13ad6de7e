"""The raw.tsv input format: sentences with character-level entity offsets.

Each line has nine tab-separated fields:
``id  sentence  e1_start  e1_end  e2_start  e2_end  label  drug1  drug2``.
Offsets are 0-based with exclusive ends.  ``label``, ``drug1`` and
``drug2`` may be empty.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass


class RawParseError(ValueError):
    def __init__(self, message: str, source: str = "<input>", line: int | None = None):
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class RawInstance:
    """One sentence with two marked drug mentions."""

    id: str
    sentence: str
    span1: tuple[int, int]  # character offsets, end-exclusive
    span2: tuple[int, int]
    label: str | None = None
    drug1: str | None = None
    drug2: str | None = None

    def __post_init__(self):
        for name, (start, end) in (("span1", self.span1), ("span2", self.span2)):
            if not (0 <= start < end <= len(self.sentence)):
                raise ValueError(
                    f"instance {self.id!r}: {name} ({start}, {end}) outside the sentence"
                )
        a, b = sorted([self.span1, self.span2])
        if a[1] > b[0]:
            raise ValueError(f"instance {self.id!r}: entity spans overlap")

    @property
    def mention1(self) -> str:
        return self.sentence[self.span1[0] : self.span1[1]]

    @property
    def mention2(self) -> str:
        return self.sentence[self.span2[0] : self.span2[1]]


def read_raw(path) -> list[RawInstance]:
    instances = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw_line in enumerate(fh, start=1):
            line = raw_line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 9:
                raise RawParseError(
                    f"expected 9 tab-separated fields, got {len(fields)}",
                    source=str(path),
                    line=lineno,
                )
            ident, sentence, s1, e1, s2, e2, label, drug1, drug2 = fields
            try:
                instance = RawInstance(
                    id=ident,
                    sentence=sentence,
                    span1=(int(s1), int(e1)),
                    span2=(int(s2), int(e2)),
                    label=label or None,
                    drug1=drug1 or None,
                    drug2=drug2 or None,
                )
            except ValueError as exc:
                raise RawParseError(str(exc), source=str(path), line=lineno) from None
            instances.append(instance)
    return instances
