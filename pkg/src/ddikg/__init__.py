"""Knowledge-graph embeddings and KG-fused relation classification for DDI.

The package trains four knowledge-graph embedding families (TransE,
TransR, RESCAL, DistMult) over a typed drug/target/disease graph, and a
relation-classification head over precomputed contextual hidden states
that can fuse the two drugs' KG vectors into its final layer.  See the
``ddikg`` command-line tool for the file-based pipeline.
"""

from .errors import (
    CliUsageError,
    DdiKgError,
    GraphValidationError,
    NumericError,
    ParseError,
    ResolutionError,
    SchemaError,
    SplitError,
    UnknownEntityError,
)
from .estimators import KgEmbedder, RelationClassifier
from .graph import (
    BIO_KG_SCHEMA,
    ENTITY_KINDS,
    KgStats,
    KnowledgeGraph,
    Triple,
    format_stats,
    load_graph,
    load_schema,
    save_graph,
    split,
    stats,
)
from .linking import (
    FallbackTable,
    Lexicon,
    build_lexicon,
    fallback_vector,
    link,
    link_instances,
    load_word_vectors,
)
from . import kge, rc

__version__ = "0.1.0"

__all__ = [
    "BIO_KG_SCHEMA",
    "CliUsageError",
    "DdiKgError",
    "ENTITY_KINDS",
    "FallbackTable",
    "GraphValidationError",
    "KgEmbedder",
    "KgStats",
    "KnowledgeGraph",
    "Lexicon",
    "NumericError",
    "ParseError",
    "RelationClassifier",
    "ResolutionError",
    "SchemaError",
    "SplitError",
    "Triple",
    "UnknownEntityError",
    "build_lexicon",
    "fallback_vector",
    "format_stats",
    "kge",
    "link",
    "link_instances",
    "load_graph",
    "load_schema",
    "load_word_vectors",
    "rc",
    "save_graph",
    "split",
    "stats",
]
