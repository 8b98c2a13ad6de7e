"""Embedding export/import and trained-model persistence.

``embeddings.tsv``: one line per entity, ``entity_id v1 ... v_d`` with
space-separated repr-formatted floats (exact round-trip).  Model files are
``.npz`` archives carrying the parameter arrays plus enough vocabulary
metadata to rebuild compatible graphs.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import DdiKgError, ParseError
from ..formats import TextSource, fmt_float, open_text, source_name
from ..graph import KnowledgeGraph
from .params import KgeParams
from .training import DrugEmbedding


def export_embeddings(embeddings: Sequence[DrugEmbedding], sink: TextSource) -> int:
    """Write ``embeddings.tsv``; returns the number of rows written."""
    dims = {e.vector.shape for e in embeddings}
    if len(dims) > 1:
        raise DdiKgError(f"inconsistent embedding dimensions: {sorted(dims)}")
    count = 0
    with open_text(sink, "w") as fh:
        for emb in embeddings:
            values = " ".join(fmt_float(v) for v in emb.vector)
            fh.write(f"{emb.entity} {values}\n")
            count += 1
    return count


def load_embeddings(source: TextSource) -> dict[str, np.ndarray]:
    """Read ``embeddings.tsv`` into an id -> vector mapping."""
    name = source_name(source)
    out: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open_text(source) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) < 2:
                raise ParseError("expected an id and at least one value", source=name, line=lineno)
            try:
                vector = np.array([float(v) for v in fields[1:]], dtype=np.float64)
            except ValueError as exc:
                raise ParseError(f"bad float: {exc}", source=name, line=lineno) from None
            if dim is None:
                dim = len(vector)
            elif len(vector) != dim:
                raise ParseError(
                    f"dimension mismatch: expected {dim}, got {len(vector)}",
                    source=name,
                    line=lineno,
                )
            out[fields[0]] = vector
    return out


@dataclass(frozen=True)
class SavedKgeModel:
    """A trained model plus the vocabulary it was trained over."""

    model: str
    norm: str
    params: KgeParams
    entities: dict[str, str]  # id -> kind, in index order
    relation_signatures: dict[str, tuple[str, str]]  # in index order

    def vocabulary_graph(self) -> KnowledgeGraph:
        """An empty graph carrying this model's entity/relation indices."""
        return KnowledgeGraph(dict(self.entities), dict(self.relation_signatures), [])


def save_kge_model(
    path, params: KgeParams, model: str, norm: str, graph: KnowledgeGraph
) -> None:
    meta = {
        "format": "ddikg-kge-model",
        "version": 1,
        "model": model,
        "norm": norm,
        "relation_signatures": {
            name: list(graph.relation_signatures[name]) for name in graph.relation_names
        },
    }
    arrays = {
        "meta": np.array(json.dumps(meta, sort_keys=True)),
        "entity_ids": np.array(graph.entity_ids),
        "entity_kinds": np.array(graph.entity_kinds),
        "entities": params.entities,
    }
    if params.relations is not None:
        arrays["relations"] = params.relations
    if params.relation_matrices is not None:
        arrays["relation_matrices"] = params.relation_matrices
    with open(path, "wb") as fh:
        np.savez(fh, **arrays)


def load_kge_model(path) -> SavedKgeModel:
    with np.load(path, allow_pickle=False) as data:
        try:
            meta = json.loads(str(data["meta"]))
        except KeyError:
            raise DdiKgError(f"{path}: not a ddikg model file") from None
        if meta.get("format") != "ddikg-kge-model":
            raise DdiKgError(f"{path}: not a ddikg model file")
        entity_ids = [str(e) for e in data["entity_ids"]]
        entity_kinds = [str(k) for k in data["entity_kinds"]]
        params = KgeParams(
            entities=data["entities"],
            relations=data["relations"] if "relations" in data else None,
            relation_matrices=(
                data["relation_matrices"] if "relation_matrices" in data else None
            ),
        )
    return SavedKgeModel(
        model=meta["model"],
        norm=meta["norm"],
        params=params,
        entities=dict(zip(entity_ids, entity_kinds)),
        relation_signatures={
            name: (hk, tk) for name, (hk, tk) in meta["relation_signatures"].items()
        },
    )
