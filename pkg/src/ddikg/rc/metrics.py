"""Per-class precision/recall/F1 and macro/micro aggregates.

The class whose name folds to "other" is the negative class: it gets no
row of its own and is excluded from the aggregates.  Macro averages are
unweighted means over the positive classes that actually occur in the gold
labels or the predictions (classes absent from both are skipped, so small
evaluations are not diluted by structurally absent classes).  All ratios
use the 0/0 -> 0 convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import DdiKgError
from ..formats import TextSource, open_text
from .data import RcInstance
from .head import FallbackFn, KgeLookup, RcParams, predict_batch

#: Row order of the report, after the standard benchmark's table layout.
DISPLAY_ORDER = ("Advice", "Effect", "Mechanism", "Int")

NEGATIVE_CLASS = "other"  # casefolded


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int
    predicted: int


@dataclass(frozen=True)
class MetricsReport:
    per_class: dict[str, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    micro_precision: float
    micro_recall: float
    micro_f1: float
    n_instances: int


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def classification_report(
    golds: Sequence[str], predictions: Sequence[str], classes: Sequence[str]
) -> MetricsReport:
    """Confusion-matrix metrics over the positive classes."""
    if len(golds) != len(predictions):
        raise DdiKgError(
            f"{len(golds)} gold labels vs {len(predictions)} predictions"
        )
    known = set(classes)
    for label in list(golds) + list(predictions):
        if label not in known:
            raise DdiKgError(f"label {label!r} is not in the class list {list(classes)}")

    positive = [c for c in classes if c.casefold() != NEGATIVE_CLASS]
    per_class: dict[str, ClassMetrics] = {}
    tp_sum = pred_sum = gold_sum = 0
    macro_terms: list[ClassMetrics] = []
    for cls in positive:
        tp = sum(1 for g, p in zip(golds, predictions) if g == cls and p == cls)
        n_pred = sum(1 for p in predictions if p == cls)
        n_gold = sum(1 for g in golds if g == cls)
        precision = _ratio(tp, n_pred)
        recall = _ratio(tp, n_gold)
        f1 = _ratio(2 * precision * recall, precision + recall)
        metrics = ClassMetrics(precision, recall, f1, n_gold, n_pred)
        per_class[cls] = metrics
        tp_sum += tp
        pred_sum += n_pred
        gold_sum += n_gold
        if n_gold > 0 or n_pred > 0:
            macro_terms.append(metrics)

    k = len(macro_terms)
    macro_p = _ratio(sum(m.precision for m in macro_terms), k)
    macro_r = _ratio(sum(m.recall for m in macro_terms), k)
    macro_f1 = _ratio(sum(m.f1 for m in macro_terms), k)
    micro_p = _ratio(tp_sum, pred_sum)
    micro_r = _ratio(tp_sum, gold_sum)
    micro_f1 = _ratio(2 * micro_p * micro_r, micro_p + micro_r)
    return MetricsReport(
        per_class=per_class,
        macro_precision=macro_p,
        macro_recall=macro_r,
        macro_f1=macro_f1,
        micro_precision=micro_p,
        micro_recall=micro_r,
        micro_f1=micro_f1,
        n_instances=len(golds),
    )


def evaluate(
    dataset: Sequence[RcInstance],
    params: RcParams,
    mode: str = "text",
    kge_lookup: KgeLookup | None = None,
    fallback: FallbackFn | None = None,
) -> MetricsReport:
    """Argmax-predict every instance and score against its gold label."""
    for inst in dataset:
        if inst.label is None:
            raise DdiKgError(f"instance {inst.id!r} is unlabeled; cannot evaluate")
    predictions, _ = predict_batch(dataset, params, mode, kge_lookup, fallback)
    golds = [inst.label for inst in dataset]
    return classification_report(golds, predictions, params.classes)


def format_metrics(report: MetricsReport) -> str:
    """Aligned table: one row per positive class, then macro and micro lines."""
    ordered = [c for c in DISPLAY_ORDER if c in report.per_class]
    ordered += [c for c in report.per_class if c not in ordered]
    rows = [("class", "precision", "recall", "f1", "support")]
    for cls in ordered:
        m = report.per_class[cls]
        rows.append(
            (cls, f"{m.precision:.6f}", f"{m.recall:.6f}", f"{m.f1:.6f}", str(m.support))
        )
    rows.append(
        (
            "macro",
            f"{report.macro_precision:.6f}",
            f"{report.macro_recall:.6f}",
            f"{report.macro_f1:.6f}",
            str(report.n_instances),
        )
    )
    rows.append(
        (
            "micro",
            f"{report.micro_precision:.6f}",
            f"{report.micro_recall:.6f}",
            f"{report.micro_f1:.6f}",
            str(report.n_instances),
        )
    )
    widths = [max(len(r[c]) for r in rows) for c in range(5)]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows
    )


def write_metrics(report: MetricsReport, sink: TextSource) -> None:
    with open_text(sink, "w") as fh:
        fh.write(format_metrics(report) + "\n")
