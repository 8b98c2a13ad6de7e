"""Parameter containers and initialization for the embedding models."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..graph import KnowledgeGraph
from ..validation import as_rng
from .config import TRANSLATIONAL, KgeConfig


@dataclass
class KgeParams:
    """Trainable arrays for one model.

    ``entities`` is |E| x d.  ``relations`` holds per-relation vectors
    (|R| x d, or |R| x k for TransR); RESCAL has none.  ``relation_matrices``
    holds per-relation projection (TransR, |R| x k x d) or bilinear
    (RESCAL, |R| x d x d) matrices; TransE and DistMult have none.
    """

    entities: np.ndarray
    relations: np.ndarray | None = None
    relation_matrices: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.entities.shape[1]

    def copy(self) -> "KgeParams":
        return KgeParams(
            entities=self.entities.copy(),
            relations=None if self.relations is None else self.relations.copy(),
            relation_matrices=(
                None if self.relation_matrices is None else self.relation_matrices.copy()
            ),
        )

    def zeros_like(self) -> "KgeParams":
        """Gradient accumulator with the same structure."""
        return KgeParams(
            entities=np.zeros_like(self.entities),
            relations=None if self.relations is None else np.zeros_like(self.relations),
            relation_matrices=(
                None
                if self.relation_matrices is None
                else np.zeros_like(self.relation_matrices)
            ),
        )

    def all_finite(self) -> bool:
        arrays = [self.entities, self.relations, self.relation_matrices]
        return all(a is None or bool(np.all(np.isfinite(a))) for a in arrays)


def normalize_rows(matrix: np.ndarray, rows: np.ndarray | None = None) -> None:
    """Rescale rows to unit L2 norm in place (all rows when ``rows`` is None)."""
    view = matrix if rows is None else matrix[rows]
    norms = np.linalg.norm(view, axis=1, keepdims=True)
    np.maximum(norms, 1e-300, out=norms)
    if rows is None:
        matrix /= norms
    else:
        matrix[rows] = view / norms


def init_params(config: KgeConfig, graph: KnowledgeGraph, seed) -> KgeParams:
    """Seeded uniform initialization in [-6/sqrt(d), +6/sqrt(d)].

    Entity rows of translational models start on the unit sphere; TransR
    projection matrices start as the k x d identity (truncated when k != d).
    """
    rng = as_rng(seed)
    d, k = config.dim, config.k
    n_e, n_r = graph.n_entities, graph.n_relations
    bound = 6.0 / np.sqrt(d)

    entities = rng.uniform(-bound, bound, size=(n_e, d))
    relations: np.ndarray | None = None
    matrices: np.ndarray | None = None

    if config.model in ("transe", "distmult"):
        relations = rng.uniform(-bound, bound, size=(n_r, d))
    elif config.model == "transr":
        relations = rng.uniform(-bound, bound, size=(n_r, k))
        matrices = np.broadcast_to(np.eye(k, d), (n_r, k, d)).copy()
    elif config.model == "rescal":
        matrices = rng.uniform(-bound, bound, size=(n_r, d, d))

    if config.model in TRANSLATIONAL:
        normalize_rows(entities)
    return KgeParams(entities=entities, relations=relations, relation_matrices=matrices)
