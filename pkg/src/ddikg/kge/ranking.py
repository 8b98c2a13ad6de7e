"""Filtered link-prediction evaluation (MRR, Hits@k)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DdiKgError
from ..formats import TextSource, fmt_float, open_text
from ..graph import KnowledgeGraph
from .config import higher_is_better
from .params import KgeParams
from .models import score_indices

HITS_KS = (1, 3, 10)


@dataclass(frozen=True)
class LinkPredictionReport:
    mrr: float
    hits_at: dict[int, float]
    n_queries: int
    mean_rank: float = field(default=float("nan"))


def _rank_of_true(scores: np.ndarray, true_pos: int, descending: bool) -> float:
    """Mean rank of the true candidate within its tied block."""
    s_true = scores[true_pos]
    better = scores > s_true if descending else scores < s_true
    tied = scores == s_true
    return int(better.sum()) + (int(tied.sum()) + 1) / 2.0


def rank_triples(
    params: KgeParams,
    model: str,
    test: KnowledgeGraph,
    all_graph: KnowledgeGraph,
    mode: str = "filtered",
    norm: str = "l2",
) -> LinkPredictionReport:
    """Rank every test triple against same-kind head and tail replacements.

    For each test triple both slots are replaced by every entity of the
    same kind, candidates are scored with the model's orientation, and the
    true entity's rank is recorded (ties get the mean rank of their block).
    ``filtered`` mode drops candidates that form a triple present in
    ``all_graph``, the query itself excepted.  MRR and Hits@k average over
    all ``2 * |test|`` queries.
    """
    if mode not in ("raw", "filtered"):
        raise DdiKgError(f"mode must be 'raw' or 'filtered', got {mode!r}")
    descending = higher_is_better(model)
    ranks: list[float] = []
    for triple in test.triples:
        h, r, t = all_graph._index_triple(triple)
        for slot, true_idx in (("tail", t), ("head", h)):
            pool = all_graph.entities_of_kind(all_graph.entity_kinds[true_idx])
            if slot == "tail":
                heads = np.full(len(pool), h)
                tails = pool
            else:
                heads = pool
                tails = np.full(len(pool), t)
            rels = np.full(len(pool), r)
            scores = score_indices(params, model, heads, rels, tails, norm=norm)
            keep = np.ones(len(pool), dtype=bool)
            if mode == "filtered":
                for j, candidate in enumerate(pool):
                    if candidate == true_idx:
                        continue
                    hh, tt = (h, candidate) if slot == "tail" else (candidate, t)
                    if all_graph.contains_indices(int(hh), r, int(tt)):
                        keep[j] = False
            kept_scores = scores[keep]
            true_pos = int(np.flatnonzero(pool[keep] == true_idx)[0])
            ranks.append(_rank_of_true(kept_scores, true_pos, descending))

    if not ranks:
        return LinkPredictionReport(
            mrr=0.0, hits_at={k: 0.0 for k in HITS_KS}, n_queries=0
        )
    arr = np.array(ranks)
    return LinkPredictionReport(
        mrr=float((1.0 / arr).mean()),
        hits_at={k: float((arr <= k).mean()) for k in HITS_KS},
        n_queries=len(arr),
        mean_rank=float(arr.mean()),
    )


def format_report(report: LinkPredictionReport) -> str:
    rows = [("metric", "value"), ("mrr", f"{report.mrr:.6f}")]
    for k in sorted(report.hits_at):
        rows.append((f"hits@{k}", f"{report.hits_at[k]:.6f}"))
    rows.append(("mean_rank", f"{report.mean_rank:.6f}"))
    rows.append(("n_queries", str(report.n_queries)))
    width = max(len(r[0]) for r in rows)
    return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows)


def write_report_kv(report: LinkPredictionReport, sink: TextSource) -> None:
    """Machine-readable ``key<TAB>value`` form of the report."""
    with open_text(sink, "w") as fh:
        fh.write(f"mrr\t{fmt_float(report.mrr)}\n")
        for k in sorted(report.hits_at):
            fh.write(f"hits@{k}\t{fmt_float(report.hits_at[k])}\n")
        fh.write(f"mean_rank\t{fmt_float(report.mean_rank)}\n")
        fh.write(f"n_queries\t{report.n_queries}\n")
