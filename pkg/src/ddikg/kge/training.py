"""SGD training loop and drug-vector extraction."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import IO

import numpy as np

from ..errors import DdiKgError
from ..graph import KnowledgeGraph
from ..validation import as_rng
from .config import TRANSLATIONAL, KgeConfig
from .models import loss_and_grad_indices
from .params import KgeParams, init_params, normalize_rows
from .sampling import corrupt_indices

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DrugEmbedding:
    """The trained entity-space vector of one drug node."""

    entity: str
    vector: np.ndarray


def train(
    graph: KnowledgeGraph,
    config: KgeConfig,
    log: IO[str] | None = None,
    loss_history: list[float] | None = None,
) -> KgeParams:
    """Train embeddings with plain SGD over (positive, corrupted) pairs.

    Each epoch shuffles the triples, draws ``config.negatives`` corruptions
    per positive, applies one SGD step per mini-batch, and (for
    translational models) re-normalizes every touched entity row to unit L2
    norm.  The run is fully determined by ``config.seed``.  Per-epoch mean
    loss lines ``epoch<TAB>mean_loss`` go to ``log`` when given.
    """
    if graph.n_triples == 0:
        raise DdiKgError("cannot train on an empty graph")
    rng = as_rng(config.seed)
    params = init_params(config, graph, rng)
    triples = graph.triple_indices()
    n = len(triples)
    translational = config.model in TRANSLATIONAL

    for epoch in range(config.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        n_pairs = 0
        for start in range(0, n, config.batch_size):
            batch = triples[order[start : start + config.batch_size]]
            pos = np.repeat(batch, config.negatives, axis=0)
            neg = np.array(
                [corrupt_indices(h, r, t, graph, rng) for h, r, t in pos],
                dtype=np.int64,
            )
            loss, grads = loss_and_grad_indices(
                params,
                config.model,
                pos,
                neg,
                margin=config.margin,
                norm=config.norm,
                graph=graph,
            )
            lr = config.learning_rate
            params.entities -= lr * grads.entities
            if params.relations is not None:
                params.relations -= lr * grads.relations
            if params.relation_matrices is not None:
                params.relation_matrices -= lr * grads.relation_matrices
            if translational:
                touched = np.unique(np.concatenate([pos[:, [0, 2]], neg[:, [0, 2]]]))
                normalize_rows(params.entities, touched)
            epoch_loss += loss
            n_pairs += len(pos)
        mean_loss = epoch_loss / n_pairs
        if log is not None:
            log.write(f"{epoch}\t{mean_loss:.8g}\n")
        if loss_history is not None:
            loss_history.append(mean_loss)
        logger.debug("epoch %d mean loss %.8g", epoch, mean_loss)
    return params


def drug_embeddings(params: KgeParams, graph: KnowledgeGraph) -> list[DrugEmbedding]:
    """Entity-space rows of all drug nodes, in index order.

    For TransR this is deliberately the unprojected entity-space vector:
    downstream fusion consumes one vector per drug independent of any
    relation.
    """
    return [
        DrugEmbedding(entity=graph.entity_ids[i], vector=params.entities[i].copy())
        for i in graph.entities_of_kind("drug")
    ]
