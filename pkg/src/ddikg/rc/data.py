"""Instance records and the ``instances.jsonl`` / ``predictions.tsv`` formats.

An instances file starts with a header line ``{"dim": d, "classes": [...]}``
followed by one JSON object per instance.  The hidden-state matrix is a
T x d array of numbers whose row 0 is the sequence-start slot; entity token
spans are inclusive index pairs that must not touch row 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from ..errors import DdiKgError, ParseError
from ..formats import TextSource, fmt_float, open_text, source_name
from ..validation import check_span

#: Canonical label set; "Int" abbreviates "Interaction", "Other" is the
#: negative class excluded from macro averaging.
DEFAULT_CLASSES = ("Mechanism", "Effect", "Advice", "Int", "Other")

DEFAULT_MAX_SEQUENCE_LENGTH = 300

_ALIASES = {"interaction": "int", "int": "interaction"}


def canonical_label(label: str, classes: Sequence[str]) -> str:
    """Resolve a label case-insensitively against ``classes``.

    "Interaction" and "Int" are accepted for each other when only one of
    them is declared.
    """
    folded = {c.casefold(): c for c in classes}
    key = label.strip().casefold()
    if key in folded:
        return folded[key]
    alias = _ALIASES.get(key)
    if alias is not None and alias in folded:
        return folded[alias]
    raise DdiKgError(f"unknown label {label!r} (classes: {list(classes)})")


@dataclass(frozen=True)
class RcInstance:
    """One classification example over precomputed hidden states."""

    id: str
    hidden: np.ndarray  # T x d, row 0 is the sequence-start slot
    span1: tuple[int, int]
    span2: tuple[int, int]
    mention1: str = ""
    mention2: str = ""
    drug1: str | None = None
    drug2: str | None = None
    label: str | None = None

    def __post_init__(self):
        hidden = np.asarray(self.hidden, dtype=np.float64)
        if hidden.ndim != 2 or hidden.shape[0] < 1:
            raise DdiKgError(f"instance {self.id!r}: hidden must be a T x d matrix with T >= 1")
        if not np.all(np.isfinite(hidden)):
            raise DdiKgError(f"instance {self.id!r}: hidden contains non-finite entries")
        object.__setattr__(self, "hidden", hidden)
        for name in ("span1", "span2"):
            span = check_span(getattr(self, name), hidden.shape[0])
            object.__setattr__(self, name, span)

    @property
    def length(self) -> int:
        return self.hidden.shape[0]

    @property
    def dim(self) -> int:
        return self.hidden.shape[1]

    def with_drugs(self, drug1: str | None, drug2: str | None) -> "RcInstance":
        return replace(self, drug1=drug1, drug2=drug2)


@dataclass(frozen=True)
class InstanceDataset:
    instances: tuple[RcInstance, ...]
    classes: tuple[str, ...]
    dim: int


def read_instances(
    source: TextSource, max_length: int = DEFAULT_MAX_SEQUENCE_LENGTH
) -> InstanceDataset:
    name = source_name(source)
    instances: list[RcInstance] = []
    header = None
    with open_text(source) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON: {exc}", source=name, line=lineno) from None
            if header is None:
                if not isinstance(obj, dict) or "dim" not in obj or "classes" not in obj:
                    raise ParseError(
                        'first line must be a header {"dim": d, "classes": [...]}',
                        source=name,
                        line=lineno,
                    )
                header = (int(obj["dim"]), tuple(str(c) for c in obj["classes"]))
                continue
            dim, classes = header
            try:
                hidden = np.array(obj["hidden"], dtype=np.float64)
                if hidden.ndim != 2 or hidden.shape[1] != dim:
                    raise ParseError(
                        f"hidden must be T x {dim} (declared dim)", source=name, line=lineno
                    )
                if hidden.shape[0] > max_length:
                    raise ParseError(
                        f"sequence length {hidden.shape[0]} exceeds maximum {max_length}",
                        source=name,
                        line=lineno,
                    )
                label = obj.get("label")
                instance = RcInstance(
                    id=str(obj["id"]),
                    hidden=hidden,
                    span1=tuple(obj["span1"]),
                    span2=tuple(obj["span2"]),
                    mention1=str(obj.get("mention1") or ""),
                    mention2=str(obj.get("mention2") or ""),
                    drug1=obj.get("drug1"),
                    drug2=obj.get("drug2"),
                    label=None if label is None else canonical_label(str(label), classes),
                )
            except KeyError as exc:
                raise ParseError(f"missing field {exc}", source=name, line=lineno) from None
            except (DdiKgError, ValueError, TypeError) as exc:
                raise ParseError(str(exc), source=name, line=lineno) from None
            instances.append(instance)
    if header is None:
        raise ParseError("empty instances file (missing header)", source=name)
    return InstanceDataset(instances=tuple(instances), classes=header[1], dim=header[0])


def _float_rows(hidden: np.ndarray) -> list[list[float]]:
    return [[float(v) for v in row] for row in hidden]


def write_instances(dataset: InstanceDataset, sink: TextSource) -> None:
    """Serialize a dataset; output is byte-stable under read/write cycles."""
    with open_text(sink, "w") as fh:
        fh.write(json.dumps({"dim": dataset.dim, "classes": list(dataset.classes)}) + "\n")
        for inst in dataset.instances:
            obj = {
                "id": inst.id,
                "label": inst.label,
                "hidden": _float_rows(inst.hidden),
                "span1": list(inst.span1),
                "span2": list(inst.span2),
                "drug1": inst.drug1,
                "drug2": inst.drug2,
                "mention1": inst.mention1,
                "mention2": inst.mention2,
            }
            fh.write(json.dumps(obj, separators=(",", ":")) + "\n")


def write_predictions(
    ids: Sequence[str],
    labels: Sequence[str],
    probabilities: np.ndarray,
    sink: TextSource,
) -> None:
    """``predictions.tsv``: ``id<TAB>label<TAB>p1,p2,...`` per instance."""
    with open_text(sink, "w") as fh:
        for i, (inst_id, label) in enumerate(zip(ids, labels)):
            probs = ",".join(fmt_float(p) for p in probabilities[i])
            fh.write(f"{inst_id}\t{label}\t{probs}\n")
