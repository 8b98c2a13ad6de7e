"""Drug-mention normalization: lexicon linking with a word-vector fallback.

Mentions are matched to knowledge-base identifiers by exact normalized
lookup first, otherwise by the lexicon key sharing the longest contiguous
token-level overlap with the mention.  Mentions that cannot be linked get
a deterministic vector: the average of per-token word vectors, with
hash-seeded vectors for out-of-vocabulary tokens.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DdiKgError, ParseError
from .formats import TextSource, iter_tsv, open_text, source_name

logger = logging.getLogger(__name__)


def normalize_surface(text: str) -> str:
    """Case-fold and collapse internal whitespace."""
    return " ".join(text.casefold().split())


def _longest_contiguous_overlap(a: list[str], b: list[str]) -> int:
    """Length of the longest common contiguous token run of two sequences."""
    if not a or not b:
        return 0
    best = 0
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


@dataclass
class Lexicon:
    """Normalized surface form -> entity id, with precomputed token lists."""

    entries: dict[str, str] = field(default_factory=dict)
    n_collisions: int = 0

    def __post_init__(self):
        self._tokens = {key: key.split() for key in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, surface: str, entity_id: str) -> None:
        key = normalize_surface(surface)
        if not key:
            raise DdiKgError("empty surface form")
        existing = self.entries.get(key)
        if existing is not None:
            if existing != entity_id:
                self.n_collisions += 1
                logger.warning(
                    "surface %r already maps to %s; ignoring %s", key, existing, entity_id
                )
            return
        self.entries[key] = entity_id
        self._tokens[key] = key.split()

    def link(self, mention: str) -> str | None:
        """Resolve a mention; None when nothing overlaps by at least one token."""
        key = normalize_surface(mention)
        if not key:
            return None
        exact = self.entries.get(key)
        if exact is not None:
            return exact
        mention_tokens = key.split()
        best: tuple[int, int, str] | None = None  # (overlap, key length, key)
        for cand, cand_tokens in self._tokens.items():
            overlap = _longest_contiguous_overlap(mention_tokens, cand_tokens)
            if overlap < 1:
                continue
            # ties: longer key first, then lexicographically smaller key
            rank = (overlap, len(cand))
            if best is None or rank > (best[0], best[1]) or (
                rank == (best[0], best[1]) and cand < best[2]
            ):
                best = (overlap, len(cand), cand)
        return None if best is None else self.entries[best[2]]


def build_lexicon(names_source: TextSource) -> Lexicon:
    """Read ``drug_names.tsv`` lines ``surface<TAB>entity_id``.

    Surfaces normalize by case-folding and whitespace collapsing; when the
    same surface maps to different ids the first wins and a warning is
    counted.
    """
    lexicon = Lexicon()
    for lineno, (surface, entity_id) in iter_tsv(names_source, 2):
        if not normalize_surface(surface):
            raise ParseError(
                "empty surface form", source=source_name(names_source), line=lineno
            )
        lexicon.add(surface, entity_id.strip())
    return lexicon


def link(mention: str, lexicon: Lexicon) -> str | None:
    return lexicon.link(mention)


@dataclass
class FallbackTable:
    """Pretrained word vectors plus a deterministic out-of-vocabulary rule."""

    vectors: dict[str, np.ndarray]
    dim: int

    def vector(self, mention: str) -> np.ndarray:
        """Average of per-token vectors; OOV tokens get hash-seeded vectors."""
        tokens = normalize_surface(mention).split()
        if not tokens:
            raise DdiKgError("cannot build a fallback vector for an empty mention")
        rows = []
        for token in tokens:
            known = self.vectors.get(token)
            rows.append(known if known is not None else self._oov_vector(token))
        return np.mean(rows, axis=0)

    def _oov_vector(self, token: str) -> np.ndarray:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        rng = np.random.default_rng(int.from_bytes(digest, "big"))
        half = 0.5 / self.dim
        return rng.uniform(-half, half, size=self.dim)

    def __call__(self, mention: str) -> np.ndarray:
        return self.vector(mention)


def load_word_vectors(source: TextSource) -> FallbackTable:
    """Read the standard text format: ``count dim`` header, then one
    ``token v1 ... v_dim`` line per word."""
    name = source_name(source)
    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open_text(source) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            fields = line.split()
            if dim is None:
                if len(fields) != 2:
                    raise ParseError(
                        "expected header 'count dim'", source=name, line=lineno
                    )
                dim = int(fields[1])
                continue
            if len(fields) != dim + 1:
                raise ParseError(
                    f"expected token + {dim} values, got {len(fields) - 1}",
                    source=name,
                    line=lineno,
                )
            try:
                vectors[fields[0]] = np.array([float(v) for v in fields[1:]])
            except ValueError as exc:
                raise ParseError(f"bad float: {exc}", source=name, line=lineno) from None
    if dim is None:
        raise ParseError("empty word-vector file", source=name)
    return FallbackTable(vectors=vectors, dim=dim)


def fallback_vector(mention: str, table: FallbackTable) -> np.ndarray:
    return table.vector(mention)


def link_instances(instances: Sequence, lexicon: Lexicon) -> list:
    """Fill missing drug ids on instances by linking their mentions."""
    out = []
    for inst in instances:
        drug1 = inst.drug1 if inst.drug1 is not None else lexicon.link(inst.mention1)
        drug2 = inst.drug2 if inst.drug2 is not None else lexicon.link(inst.mention2)
        if drug1 is not inst.drug1 or drug2 is not inst.drug2:
            inst = inst.with_drugs(drug1, drug2)
        out.append(inst)
    return out
