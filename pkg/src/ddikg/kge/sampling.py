"""Type-constrained, filtered negative sampling."""

from __future__ import annotations

import numpy as np

from ..graph import KnowledgeGraph, Triple

#: Rejection-sampling budget before an unfiltered corruption is returned.
MAX_ATTEMPTS = 100


def corrupt_indices(
    head: int,
    relation: int,
    tail: int,
    graph: KnowledgeGraph,
    rng: np.random.Generator,
) -> tuple[int, int, int]:
    """Corrupt one slot of an index triple.

    A fair coin picks head or tail; the replacement is drawn uniformly from
    entities of the same kind.  Candidates that reproduce a triple present
    in ``graph`` (or leave the triple unchanged) are rejected and redrawn,
    up to :data:`MAX_ATTEMPTS`; after that the last candidate is returned
    unfiltered, which matters only for degenerate vocabularies.
    """
    corrupt_head = rng.random() < 0.5
    original = head if corrupt_head else tail
    pool = graph.entities_of_kind(graph.entity_kinds[original])
    candidate = original
    for _ in range(MAX_ATTEMPTS):
        candidate = int(pool[rng.integers(len(pool))])
        if candidate == original:
            continue
        h, t = (candidate, tail) if corrupt_head else (head, candidate)
        if not graph.contains_indices(h, relation, t):
            break
    return (candidate, relation, tail) if corrupt_head else (head, relation, candidate)


def corrupt(triple: Triple, graph: KnowledgeGraph, rng: np.random.Generator) -> Triple:
    """Identifier-level corruption of one triple."""
    h, r, t = graph._index_triple(triple)
    ch, cr, ct = corrupt_indices(h, r, t, graph, rng)
    return Triple(graph.entity_ids[ch], graph.relation_names[cr], graph.entity_ids[ct])
