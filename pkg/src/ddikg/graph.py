"""Typed heterogeneous knowledge graph: loading, validation, stats, splits.

The graph stores directed ``(head, relation, tail)`` triples over entities
typed as drug, target or disease.  Each relation declares one
``(head_kind, tail_kind)`` signature, either through an explicit schema or
inferred from the first triple that uses it.  Instances are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import GraphValidationError, SchemaError, SplitError, UnknownEntityError
from .formats import TextSource, iter_tsv, open_text, source_name
from .validation import check_fractions

logger = logging.getLogger(__name__)

ENTITY_KINDS = ("drug", "target", "disease")

#: Relation signatures of the canonical five-relation biomedical profile.
BIO_KG_SCHEMA: dict[str, tuple[str, str]] = {
    "drug-target": ("drug", "target"),
    "target-target": ("target", "target"),
    "drug-disease": ("drug", "disease"),
    "disease-disease": ("disease", "disease"),
    "disease-target": ("disease", "target"),
}


@dataclass(frozen=True)
class Triple:
    """One directed edge, by entity/relation identifier."""

    head: str
    relation: str
    tail: str


@dataclass(frozen=True)
class KgStats:
    """Per-kind node counts and per-relation edge counts."""

    nodes_by_kind: dict[str, int]
    edges_by_relation: dict[str, int]
    total_nodes: int
    total_edges: int
    self_loops: int


class KnowledgeGraph:
    """Immutable triple store with dense entity/relation indices.

    Parameters
    ----------
    entities:
        Mapping of entity id to kind, in registration order.  Indices are
        assigned densely in that order.
    relations:
        Relation signatures: relation name to ``(head_kind, tail_kind)``.
    triples:
        The edges.  Duplicates are collapsed (a count is kept) and every
        triple is checked against its relation's signature.
    """

    def __init__(
        self,
        entities: dict[str, str],
        relations: dict[str, tuple[str, str]],
        triples: list[Triple],
    ):
        for entity, kind in entities.items():
            if not entity:
                raise GraphValidationError("empty entity identifier")
            if kind not in ENTITY_KINDS:
                raise SchemaError(f"unknown entity kind {kind!r} for entity {entity!r}")
        for relation, (hk, tk) in relations.items():
            if hk not in ENTITY_KINDS or tk not in ENTITY_KINDS:
                raise SchemaError(
                    f"relation {relation!r} declares unknown kinds ({hk!r}, {tk!r})"
                )

        self.entity_ids: tuple[str, ...] = tuple(entities)
        self.entity_kinds: tuple[str, ...] = tuple(entities.values())
        self.entity_index: dict[str, int] = {e: i for i, e in enumerate(entities)}
        self.relation_names: tuple[str, ...] = tuple(relations)
        self.relation_index: dict[str, int] = {r: i for i, r in enumerate(relations)}
        self.relation_signatures: dict[str, tuple[str, str]] = dict(relations)

        kept: list[Triple] = []
        seen: set[tuple[int, int, int]] = set()
        duplicates = 0
        self_loops = 0
        for t in triples:
            idx = self._index_triple(t)
            head_kind = self.entity_kinds[idx[0]]
            tail_kind = self.entity_kinds[idx[2]]
            want = self.relation_signatures[t.relation]
            if (head_kind, tail_kind) != want:
                raise GraphValidationError(
                    f"triple ({t.head}, {t.relation}, {t.tail}) has kinds "
                    f"({head_kind}, {tail_kind}); relation {t.relation!r} "
                    f"requires {want}"
                )
            if idx in seen:
                duplicates += 1
                continue
            seen.add(idx)
            kept.append(t)
            if t.head == t.tail:
                self_loops += 1

        if duplicates:
            logger.warning("collapsed %d duplicate triple(s)", duplicates)
        self.triples: tuple[Triple, ...] = tuple(kept)
        self.n_duplicates_collapsed = duplicates
        self.n_self_loops = self_loops
        self._triple_set = seen
        self._index_array = (
            np.array([self._index_triple(t) for t in kept], dtype=np.int64)
            if kept
            else np.empty((0, 3), dtype=np.int64)
        )
        self._kind_pools = {
            kind: np.array(
                [i for i, k in enumerate(self.entity_kinds) if k == kind],
                dtype=np.int64,
            )
            for kind in ENTITY_KINDS
        }

    # -- lookups ---------------------------------------------------------

    @property
    def n_entities(self) -> int:
        return len(self.entity_ids)

    @property
    def n_relations(self) -> int:
        return len(self.relation_names)

    @property
    def n_triples(self) -> int:
        return len(self.triples)

    def kind_of(self, entity: str) -> str:
        try:
            return self.entity_kinds[self.entity_index[entity]]
        except KeyError:
            raise UnknownEntityError(f"unregistered entity {entity!r}") from None

    def entities_of_kind(self, kind: str) -> np.ndarray:
        """Dense indices of all entities of one kind."""
        return self._kind_pools[kind]

    def triple_indices(self) -> np.ndarray:
        """All triples as an (n, 3) int array of (head, relation, tail) indices."""
        return self._index_array

    def _index_triple(self, triple: Triple) -> tuple[int, int, int]:
        try:
            h = self.entity_index[triple.head]
        except KeyError:
            raise UnknownEntityError(f"unregistered entity {triple.head!r}") from None
        try:
            t = self.entity_index[triple.tail]
        except KeyError:
            raise UnknownEntityError(f"unregistered entity {triple.tail!r}") from None
        try:
            r = self.relation_index[triple.relation]
        except KeyError:
            raise UnknownEntityError(f"unregistered relation {triple.relation!r}") from None
        return h, r, t

    def contains(self, triple: Triple) -> bool:
        """Set membership of a triple; O(1) expected.

        Raises :class:`UnknownEntityError` for unregistered identifiers.
        """
        return self._index_triple(triple) in self._triple_set

    def contains_indices(self, head: int, relation: int, tail: int) -> bool:
        return (head, relation, tail) in self._triple_set

    def with_triples(self, triples: list[Triple]) -> "KnowledgeGraph":
        """A graph over the same vocabulary holding only ``triples``."""
        return KnowledgeGraph(
            dict(zip(self.entity_ids, self.entity_kinds)),
            dict(self.relation_signatures),
            triples,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            set(zip(self.entity_ids, self.entity_kinds))
            == set(zip(other.entity_ids, other.entity_kinds))
            and self.relation_signatures == other.relation_signatures
            and set(self.triples) == set(other.triples)
        )

    def __repr__(self) -> str:
        return (
            f"KnowledgeGraph(|E|={self.n_entities}, |R|={self.n_relations}, "
            f"|T|={self.n_triples})"
        )


# -- loading and serialization -----------------------------------------------


def load_graph(
    triples_source: TextSource,
    types_source: TextSource,
    schema: dict[str, tuple[str, str]] | None = None,
) -> KnowledgeGraph:
    """Build a validated graph from ``triples.tsv`` and ``entity_types.tsv``.

    ``triples_source`` lines are ``head<TAB>relation<TAB>tail``;
    ``types_source`` lines are ``entity<TAB>kind`` with kind one of
    drug/target/disease (case-insensitive).  When ``schema`` is None,
    relation signatures are inferred from each relation's first triple and
    later triples must agree; pass :data:`BIO_KG_SCHEMA` (or your own) to
    enforce a declared profile.
    """
    entities: dict[str, str] = {}
    for lineno, (entity, kind) in iter_tsv(types_source, 2):
        kind_lc = kind.strip().lower()
        if kind_lc not in ENTITY_KINDS:
            raise SchemaError(
                f"{source_name(types_source)}:{lineno}: unknown entity kind {kind!r} "
                f"(expected one of {ENTITY_KINDS})"
            )
        entities[entity.strip()] = kind_lc

    raw: list[Triple] = []
    for lineno, (head, relation, tail) in iter_tsv(triples_source, 3):
        triple = Triple(head.strip(), relation.strip(), tail.strip())
        for e in (triple.head, triple.tail):
            if e not in entities:
                raise GraphValidationError(
                    f"{source_name(triples_source)}:{lineno}: entity {e!r} "
                    "missing from the types source"
                )
        raw.append(triple)

    if schema is None:
        relations: dict[str, tuple[str, str]] = {}
        for t in raw:
            sig = (entities[t.head], entities[t.tail])
            relations.setdefault(t.relation, sig)
    else:
        relations = dict(schema)
        for t in raw:
            if t.relation not in relations:
                raise SchemaError(
                    f"relation {t.relation!r} is not declared in the schema "
                    f"(declared: {sorted(relations)})"
                )
    return KnowledgeGraph(entities, relations, raw)


def load_schema(source: TextSource) -> dict[str, tuple[str, str]]:
    """Read a relation-signature file: ``relation<TAB>head_kind<TAB>tail_kind``."""
    schema: dict[str, tuple[str, str]] = {}
    for lineno, (relation, hk, tk) in iter_tsv(source, 3):
        hk, tk = hk.strip().lower(), tk.strip().lower()
        if hk not in ENTITY_KINDS or tk not in ENTITY_KINDS:
            raise SchemaError(
                f"{source_name(source)}:{lineno}: unknown kind in signature "
                f"({hk!r}, {tk!r})"
            )
        schema[relation.strip()] = (hk, tk)
    return schema


def save_graph(graph: KnowledgeGraph, triples_sink: TextSource, types_sink: TextSource) -> None:
    """Write the graph back out in the two-file TSV format."""
    with open_text(triples_sink, "w") as fh:
        for t in graph.triples:
            fh.write(f"{t.head}\t{t.relation}\t{t.tail}\n")
    with open_text(types_sink, "w") as fh:
        for entity, kind in zip(graph.entity_ids, graph.entity_kinds):
            fh.write(f"{entity}\t{kind}\n")


# -- stats ---------------------------------------------------------------


def stats(graph: KnowledgeGraph) -> KgStats:
    """Node counts per kind and edge counts per relation; order-invariant."""
    nodes = {kind: int(len(graph.entities_of_kind(kind))) for kind in ENTITY_KINDS}
    edges = {name: 0 for name in graph.relation_names}
    for t in graph.triples:
        edges[t.relation] += 1
    return KgStats(
        nodes_by_kind=nodes,
        edges_by_relation=edges,
        total_nodes=sum(nodes.values()),
        total_edges=sum(edges.values()),
        self_loops=graph.n_self_loops,
    )


def format_stats(s: KgStats) -> str:
    """Render stats as a two-column node/edge table."""
    node_rows = [(k.capitalize(), str(n)) for k, n in s.nodes_by_kind.items()]
    node_rows.append(("Total Nodes", str(s.total_nodes)))
    edge_rows = [(name, str(n)) for name, n in s.edges_by_relation.items()]
    edge_rows.append(("Total Edges", str(s.total_edges)))

    rows = [("Node Types", "Count", "Edge Types", "Count")]
    for i in range(max(len(node_rows), len(edge_rows))):
        left = node_rows[i] if i < len(node_rows) else ("", "")
        right = edge_rows[i] if i < len(edge_rows) else ("", "")
        rows.append(left + right)
    widths = [max(len(r[c]) for r in rows) for c in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    if s.self_loops:
        lines.append(f"(self-loops: {s.self_loops})")
    return "\n".join(lines)


# -- splitting -----------------------------------------------------------


def split(
    graph: KnowledgeGraph,
    fractions: tuple[float, float, float],
    seed: int,
) -> tuple[KnowledgeGraph, KnowledgeGraph, KnowledgeGraph]:
    """Partition the triples into train/valid/test graphs over a shared vocabulary.

    The partition is deterministic given ``seed``.  Entity coverage is then
    enforced: any valid/test triple mentioning an entity that never occurs
    in a train triple is reassigned to train, so embeddings trained on the
    train split cover every evaluation entity.  Raises :class:`SplitError`
    when a non-zero fraction ends up with no triples.
    """
    fracs = check_fractions(fractions)
    n = graph.n_triples
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    c1 = int(round(fracs[0] * n))
    c2 = int(round((fracs[0] + fracs[1]) * n))
    parts = [list(order[:c1]), list(order[c1:c2]), list(order[c2:])]

    covered: set[int] = set()
    for i in parts[0]:
        h, _, t = graph._index_array[i]
        covered.add(int(h))
        covered.add(int(t))
    for part in (1, 2):
        kept = []
        for i in parts[part]:
            h, _, t = graph._index_array[i]
            if int(h) in covered and int(t) in covered:
                kept.append(i)
            else:
                parts[0].append(i)
                covered.add(int(h))
                covered.add(int(t))
        parts[part] = kept

    for frac, part, name in zip(fracs, parts, ("train", "valid", "test")):
        if frac > 0 and not part:
            raise SplitError(
                f"graph too small to honor fractions {fracs}: the {name} part "
                "is empty after entity-coverage reassignment"
            )

    out = []
    for part in parts:
        triples = [graph.triples[i] for i in sorted(part)]
        out.append(graph.with_triples(triples))
    return out[0], out[1], out[2]
