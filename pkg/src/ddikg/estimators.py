"""Scikit-learn style estimators wrapping the trainers.

``KgEmbedder`` fits knowledge-graph embeddings on a :class:`KnowledgeGraph`
and transforms entity ids (or a whole graph) into vectors.
``RelationClassifier`` fits the classification head on labeled
:class:`RcInstance` lists and predicts labels/probabilities.  Both follow
the get_params/set_params contract, so they clone and compose with the
wider ecosystem.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import DdiKgError, UnknownEntityError
from .graph import KnowledgeGraph, Triple
from .kge import (
    KgeConfig,
    drug_embeddings,
    higher_is_better,
    rank_triples,
    score_indices,
    train,
)
from .rc import (
    DEFAULT_CLASSES,
    RcInstance,
    RcTrainConfig,
    evaluate,
    predict_batch,
    train_rc,
)
from .validation import ensure_fitted


class KgEmbedder(BaseEstimator, TransformerMixin):
    """Knowledge-graph embedding trainer with a transform interface.

    Parameters mirror :class:`KgeConfig`; fitted state lives in
    ``params_``, ``graph_`` and ``loss_history_``.
    """

    def __init__(
        self,
        model: str = "transe",
        dim: int = 200,
        learning_rate: float = 0.0001,
        epochs: int = 300,
        margin: float = 1.0,
        negatives: int = 1,
        norm: str = "l2",
        batch_size: int = 256,
        relation_dim: int | None = None,
        seed: int = 0,
    ):
        self.model = model
        self.dim = dim
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.margin = margin
        self.negatives = negatives
        self.norm = norm
        self.batch_size = batch_size
        self.relation_dim = relation_dim
        self.seed = seed

    def _config(self) -> KgeConfig:
        return KgeConfig(
            model=self.model,
            dim=self.dim,
            learning_rate=self.learning_rate,
            epochs=self.epochs,
            margin=self.margin,
            negatives=self.negatives,
            norm=self.norm,
            batch_size=self.batch_size,
            relation_dim=self.relation_dim,
            seed=self.seed,
        )

    def fit(self, X: KnowledgeGraph, y=None):
        if not isinstance(X, KnowledgeGraph):
            raise DdiKgError(f"KgEmbedder.fit expects a KnowledgeGraph, got {type(X).__name__}")
        history: list[float] = []
        self.params_ = train(X, self._config(), loss_history=history)
        self.graph_ = X
        self.loss_history_ = history
        return self

    def transform(self, X) -> np.ndarray:
        """Embedding rows for a KnowledgeGraph (all entities) or ids."""
        ensure_fitted(self, "params_")
        if isinstance(X, KnowledgeGraph):
            return self.params_.entities.copy()
        indices = []
        for e in X:
            if isinstance(e, str):
                if e not in self.graph_.entity_index:
                    raise UnknownEntityError(f"unregistered entity {e!r}")
                indices.append(self.graph_.entity_index[e])
            else:
                indices.append(int(e))
        return self.params_.entities[np.array(indices, dtype=np.int64)]

    def score_triples(self, triples: Sequence[Triple]) -> np.ndarray:
        ensure_fitted(self, "params_")
        if not triples:
            return np.zeros(0)
        idx = np.array([self.graph_._index_triple(t) for t in triples], dtype=np.int64)
        return score_indices(
            self.params_, self.model, idx[:, 0], idx[:, 1], idx[:, 2], norm=self.norm
        )

    def drug_embeddings(self):
        ensure_fitted(self, "params_")
        return drug_embeddings(self.params_, self.graph_)

    def evaluate(self, test: KnowledgeGraph, mode: str = "filtered"):
        """Filtered (or raw) link-prediction report against the training graph."""
        ensure_fitted(self, "params_")
        return rank_triples(
            self.params_, self.model, test, self.graph_, mode=mode, norm=self.norm
        )

    @property
    def higher_is_better_(self) -> bool:
        return higher_is_better(self.model)


class RelationClassifier(BaseEstimator):
    """Classification head over precomputed hidden states.

    In fused mode, ``kge_lookup`` maps drug ids to KG vectors and
    ``fallback`` (a callable on the mention string) covers drugs without a
    KG entry.
    """

    def __init__(
        self,
        mode: str = "text",
        epochs: int = 5,
        learning_rate: float = 0.1,
        batch_size: int = 32,
        seed: int = 0,
        fused_dim: int | None = None,
        classes: Sequence[str] = DEFAULT_CLASSES,
        kge_lookup=None,
        fallback=None,
    ):
        self.mode = mode
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.batch_size = batch_size
        self.seed = seed
        self.fused_dim = fused_dim
        self.classes = classes
        self.kge_lookup = kge_lookup
        self.fallback = fallback

    def _config(self) -> RcTrainConfig:
        return RcTrainConfig(
            mode=self.mode,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            seed=self.seed,
            fused_dim=self.fused_dim,
        )

    def fit(self, X: Sequence[RcInstance], y=None):
        history: list[float] = []
        self.params_ = train_rc(
            list(X),
            self._config(),
            classes=tuple(self.classes),
            kge_lookup=self.kge_lookup,
            fallback=self.fallback,
            loss_history=history,
        )
        self.classes_ = np.array(self.params_.classes, dtype=object)
        self.loss_history_ = history
        return self

    def predict(self, X: Sequence[RcInstance]) -> np.ndarray:
        ensure_fitted(self, "params_")
        labels, _ = predict_batch(
            list(X), self.params_, self.mode, self.kge_lookup, self.fallback
        )
        return np.array(labels, dtype=object)

    def predict_proba(self, X: Sequence[RcInstance]) -> np.ndarray:
        ensure_fitted(self, "params_")
        _, probs = predict_batch(
            list(X), self.params_, self.mode, self.kge_lookup, self.fallback
        )
        return probs

    def evaluate(self, X: Sequence[RcInstance]):
        """MetricsReport over labeled instances."""
        ensure_fitted(self, "params_")
        return evaluate(list(X), self.params_, self.mode, self.kge_lookup, self.fallback)
