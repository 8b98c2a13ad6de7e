"""Run a contextual encoder and emit instances.jsonl hidden-state files.

The output follows the relation-classification contract: a header line
``{"dim": d, "classes": [...]}`` followed by one JSON object per instance
whose ``hidden`` matrix is the encoder's final hidden states (row 0 is the
sequence-start token) and whose spans are inclusive token-index ranges
recovered through the tokenizer's character-to-token alignment.  Instances
whose entity tokens are lost to truncation are skipped and counted, never
emitted with an empty span.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Sequence

import torch

from .raw import RawInstance

logger = logging.getLogger(__name__)

DEFAULT_CLASSES = ("Mechanism", "Effect", "Advice", "Int", "Other")
DEFAULT_MAX_LENGTH = 300


class ExporterError(RuntimeError):
    pass


@dataclass
class ExportStats:
    written: int = 0
    skipped: list[tuple[str, str]] = field(default_factory=list)  # (id, reason)


def load_encoder(name_or_path: str):
    """Load a tokenizer/model pair; unknown encoders fail at startup."""
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(name_or_path, use_fast=True)
        model = AutoModel.from_pretrained(name_or_path)
    except (OSError, ValueError) as exc:
        raise ExporterError(f"cannot load encoder {name_or_path!r}: {exc}") from exc
    if not getattr(tokenizer, "is_fast", False):
        raise ExporterError(
            f"encoder {name_or_path!r} has no fast tokenizer; "
            "character-to-token alignment needs one"
        )
    model.eval()
    return tokenizer, model


def _token_span(offsets, char_span) -> tuple[int, int] | None:
    """Inclusive token range covering a character range; None when empty.

    Special tokens carry the (0, 0) offset and never match because their
    end does not exceed the span start.
    """
    start, end = char_span
    touched = [
        i
        for i, (a, b) in enumerate(offsets)
        if a < end and b > start and b > a
    ]
    if not touched:
        return None
    return touched[0], touched[-1]


def export(
    raw: Sequence[RawInstance],
    encoder_name: str,
    sink,
    max_length: int = DEFAULT_MAX_LENGTH,
    classes: Sequence[str] = DEFAULT_CLASSES,
) -> ExportStats:
    """Encode sentences and stream instances.jsonl to ``sink``.

    Returns counts of written and skipped instances; skips keep their
    reason for the log.  Output order follows input order.
    """
    tokenizer, model = load_encoder(encoder_name)
    dim = int(model.config.hidden_size)
    stats = ExportStats()
    sink.write(json.dumps({"dim": dim, "classes": list(classes)}) + "\n")
    for instance in raw:
        encoded = tokenizer(
            instance.sentence,
            return_offsets_mapping=True,
            truncation=True,
            max_length=max_length,
            return_tensors="pt",
        )
        offsets = [tuple(map(int, pair)) for pair in encoded["offset_mapping"][0].tolist()]
        span1 = _token_span(offsets, instance.span1)
        span2 = _token_span(offsets, instance.span2)
        if span1 is None or span2 is None:
            which = "first" if span1 is None else "second"
            reason = f"{which} entity lost to truncation at {max_length} tokens"
            stats.skipped.append((instance.id, reason))
            logger.warning("skipping %s: %s", instance.id, reason)
            continue
        if span1[0] == 0 or span2[0] == 0:
            stats.skipped.append((instance.id, "entity span touches the start slot"))
            continue
        with torch.no_grad():
            output = model(
                input_ids=encoded["input_ids"],
                attention_mask=encoded["attention_mask"],
            )
        hidden = output.last_hidden_state[0]
        obj = {
            "id": instance.id,
            "label": instance.label,
            "hidden": [[float(v) for v in row] for row in hidden.tolist()],
            "span1": list(span1),
            "span2": list(span2),
            "drug1": instance.drug1,
            "drug2": instance.drug2,
            "mention1": instance.mention1,
            "mention2": instance.mention2,
        }
        sink.write(json.dumps(obj, separators=(",", ":")) + "\n")
        stats.written += 1
    return stats
