"""The relation-classification head: forward pass and analytic gradients.

Text pathway: each entity span is mean-pooled over its hidden rows, passed
through tanh and one affine layer whose weights are shared between the two
entities; the sequence-start row gets its own tanh + affine transform.  The
three transformed vectors are concatenated and mapped to class
probabilities by a final affine layer and a softmax.

Fused pathway: the two drugs' KG vectors are concatenated and passed
through one affine layer; the result is appended to the three text vectors
before the (wider) final affine layer.  The hidden states and KG vectors
are fixed inputs; only the head parameters train, by minimizing mean
cross-entropy.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DdiKgError, ResolutionError
from ..validation import as_rng, check_span
from .data import DEFAULT_CLASSES, RcInstance

#: Fallback KG-vector width when no lookup is supplied (text-only training).
DEFAULT_KG_DIM = 200

KgeLookup = Mapping[str, np.ndarray]
FallbackFn = Callable[[str], np.ndarray]


@dataclass
class RcParams:
    """All trainable blocks of the head (both pathways).

    ``W``/``b`` are shared by the two entity-pooling transforms; ``W0``/``b0``
    transform the sequence-start vector; ``W_f``/``b_f`` fuse the two KG
    vectors; ``W3_text``/``W3_fused`` are the final layers of the two
    pathways (they differ in input width, so they are distinct blocks).
    """

    W: np.ndarray
    b: np.ndarray
    W0: np.ndarray
    b0: np.ndarray
    W_f: np.ndarray
    b_f: np.ndarray
    W3_text: np.ndarray
    b3_text: np.ndarray
    W3_fused: np.ndarray
    b3_fused: np.ndarray
    classes: tuple[str, ...] = DEFAULT_CLASSES

    @property
    def dim(self) -> int:
        return self.W.shape[0]

    @property
    def n_classes(self) -> int:
        return self.W3_text.shape[0]

    @property
    def kg_dim(self) -> int:
        return self.W_f.shape[1] // 2

    @property
    def fused_dim(self) -> int:
        return self.W_f.shape[0]

    def copy(self) -> "RcParams":
        return RcParams(
            **{name: getattr(self, name).copy() for name in _ARRAY_FIELDS},
            classes=self.classes,
        )

    def zeros_like(self) -> "RcParams":
        return RcParams(
            **{name: np.zeros_like(getattr(self, name)) for name in _ARRAY_FIELDS},
            classes=self.classes,
        )


_ARRAY_FIELDS = (
    "W",
    "b",
    "W0",
    "b0",
    "W_f",
    "b_f",
    "W3_text",
    "b3_text",
    "W3_fused",
    "b3_fused",
)


def init_rc_params(
    dim: int,
    classes: Sequence[str] = DEFAULT_CLASSES,
    kg_dim: int = DEFAULT_KG_DIM,
    fused_dim: int | None = None,
    seed=0,
) -> RcParams:
    """Seeded uniform init, bound 1/sqrt(fan_in) per matrix; zero biases."""
    rng = as_rng(seed)
    n = len(classes)
    d_f = fused_dim if fused_dim is not None else kg_dim

    def mat(rows: int, cols: int) -> np.ndarray:
        bound = 1.0 / np.sqrt(cols)
        return rng.uniform(-bound, bound, size=(rows, cols))

    return RcParams(
        W=mat(dim, dim),
        b=np.zeros(dim),
        W0=mat(dim, dim),
        b0=np.zeros(dim),
        W_f=mat(d_f, 2 * kg_dim),
        b_f=np.zeros(d_f),
        W3_text=mat(n, 3 * dim),
        b3_text=np.zeros(n),
        W3_fused=mat(n, 3 * dim + d_f),
        b3_fused=np.zeros(n),
        classes=tuple(classes),
    )


# -- elementary operations -----------------------------------------------


def pool_entity(
    hidden: np.ndarray, span: tuple[int, int], W: np.ndarray, b: np.ndarray
) -> np.ndarray:
    """Average the span's rows, apply tanh, then the affine map W.z + b."""
    hidden = np.asarray(hidden, dtype=np.float64)
    a, bb = check_span(span, hidden.shape[0])
    pooled = hidden[a : bb + 1].mean(axis=0)
    return W @ np.tanh(pooled) + b


def cls_transform(h0: np.ndarray, W0: np.ndarray, b0: np.ndarray) -> np.ndarray:
    """tanh then affine transform of the sequence-start vector."""
    return W0 @ np.tanh(np.asarray(h0, dtype=np.float64)) + b0


def fuse_kge(
    kge1: np.ndarray, kge2: np.ndarray, W_f: np.ndarray, b_f: np.ndarray
) -> np.ndarray:
    """Affine map of the ordered concatenation of the two drug vectors."""
    kge1 = np.asarray(kge1, dtype=np.float64).ravel()
    kge2 = np.asarray(kge2, dtype=np.float64).ravel()
    joint = np.concatenate([kge1, kge2])
    if joint.shape[0] != W_f.shape[1]:
        raise DdiKgError(
            f"fusion input width {joint.shape[0]} does not match W_f columns {W_f.shape[1]}"
        )
    return W_f @ joint + b_f


def softmax(logits: np.ndarray) -> np.ndarray:
    """Max-subtraction stable softmax along the last axis."""
    z = np.asarray(logits, dtype=np.float64)
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def resolve_drug_vector(
    drug_id: str | None,
    mention: str,
    kge_lookup: KgeLookup | None,
    fallback: FallbackFn | None = None,
) -> np.ndarray:
    """KG vector for one drug slot: lookup by id, else fallback on the mention."""
    if drug_id is not None and kge_lookup is not None and drug_id in kge_lookup:
        return np.asarray(kge_lookup[drug_id], dtype=np.float64)
    if fallback is not None and mention:
        return np.asarray(fallback(mention), dtype=np.float64)
    name = drug_id if drug_id is not None else (mention or "<unknown>")
    raise ResolutionError(f"no KG vector for drug {name!r} and no fallback available")


# -- batched forward / backward ------------------------------------------


def _text_features(instances: Sequence[RcInstance]) -> tuple[np.ndarray, ...]:
    """Parameter-independent per-instance inputs (z0, z1, z2), stacked."""
    z0 = np.stack([np.tanh(inst.hidden[0]) for inst in instances])
    z1 = np.stack(
        [np.tanh(inst.hidden[inst.span1[0] : inst.span1[1] + 1].mean(axis=0)) for inst in instances]
    )
    z2 = np.stack(
        [np.tanh(inst.hidden[inst.span2[0] : inst.span2[1] + 1].mean(axis=0)) for inst in instances]
    )
    return z0, z1, z2


def _kg_features(
    instances: Sequence[RcInstance],
    kge_lookup: KgeLookup | None,
    fallback: FallbackFn | None,
) -> np.ndarray:
    rows = []
    for inst in instances:
        v1 = resolve_drug_vector(inst.drug1, inst.mention1, kge_lookup, fallback)
        v2 = resolve_drug_vector(inst.drug2, inst.mention2, kge_lookup, fallback)
        rows.append(np.concatenate([v1.ravel(), v2.ravel()]))
    joint = np.stack(rows)
    return joint


class BatchFeatures:
    """Precomputed fixed inputs for a set of instances."""

    def __init__(
        self,
        instances: Sequence[RcInstance],
        mode: str,
        kge_lookup: KgeLookup | None = None,
        fallback: FallbackFn | None = None,
    ):
        if mode not in ("text", "fused"):
            raise DdiKgError(f"mode must be 'text' or 'fused', got {mode!r}")
        dims = {inst.dim for inst in instances}
        if len(dims) > 1:
            raise DdiKgError(f"instances disagree on hidden dimension: {sorted(dims)}")
        self.mode = mode
        self.z0, self.z1, self.z2 = _text_features(instances)
        self.kg = _kg_features(instances, kge_lookup, fallback) if mode == "fused" else None

    def __len__(self) -> int:
        return self.z0.shape[0]

    def subset(self, indices: np.ndarray) -> "BatchFeatures":
        out = object.__new__(BatchFeatures)
        out.mode = self.mode
        out.z0 = self.z0[indices]
        out.z1 = self.z1[indices]
        out.z2 = self.z2[indices]
        out.kg = None if self.kg is None else self.kg[indices]
        return out


def _forward_batch(params: RcParams, feats: BatchFeatures) -> tuple[np.ndarray, np.ndarray]:
    """Return (probabilities, concatenated feature matrix) for the batch."""
    h0 = feats.z0 @ params.W0.T + params.b0
    h1 = feats.z1 @ params.W.T + params.b
    h2 = feats.z2 @ params.W.T + params.b
    if feats.mode == "text":
        features = np.concatenate([h0, h1, h2], axis=1)
        logits = features @ params.W3_text.T + params.b3_text
    else:
        fused = feats.kg @ params.W_f.T + params.b_f
        features = np.concatenate([h0, h1, h2, fused], axis=1)
        logits = features @ params.W3_fused.T + params.b3_fused
    return softmax(logits), features


def forward(
    instance: RcInstance,
    params: RcParams,
    mode: str = "text",
    kge_lookup: KgeLookup | None = None,
    fallback: FallbackFn | None = None,
) -> np.ndarray:
    """Class-probability vector for one instance (sums to 1)."""
    feats = BatchFeatures([instance], mode, kge_lookup, fallback)
    probs, _ = _forward_batch(params, feats)
    return probs[0]


def predict_batch(
    instances: Sequence[RcInstance],
    params: RcParams,
    mode: str = "text",
    kge_lookup: KgeLookup | None = None,
    fallback: FallbackFn | None = None,
) -> tuple[list[str], np.ndarray]:
    """Argmax labels and the full probability matrix for many instances."""
    if not instances:
        return [], np.zeros((0, params.n_classes))
    feats = BatchFeatures(instances, mode, kge_lookup, fallback)
    probs, _ = _forward_batch(params, feats)
    labels = [params.classes[i] for i in probs.argmax(axis=1)]
    return labels, probs


def rc_loss_and_grad(
    params: RcParams,
    feats: BatchFeatures,
    label_indices: np.ndarray,
) -> tuple[float, RcParams]:
    """Mean cross-entropy over the batch and gradients for every block.

    Blocks not used by the batch's pathway keep zero gradients.
    """
    n = len(feats)
    probs, features = _forward_batch(params, feats)
    picked = probs[np.arange(n), label_indices]
    loss = float(-np.log(np.maximum(picked, 1e-300)).mean())

    grads = params.zeros_like()
    dlogits = probs.copy()
    dlogits[np.arange(n), label_indices] -= 1.0
    dlogits /= n

    d = params.dim
    if feats.mode == "text":
        grads.W3_text += dlogits.T @ features
        grads.b3_text += dlogits.sum(axis=0)
        dfeat = dlogits @ params.W3_text
    else:
        grads.W3_fused += dlogits.T @ features
        grads.b3_fused += dlogits.sum(axis=0)
        dfeat = dlogits @ params.W3_fused
        dk = dfeat[:, 3 * d :]
        grads.W_f += dk.T @ feats.kg
        grads.b_f += dk.sum(axis=0)
    d0, d1, d2 = dfeat[:, :d], dfeat[:, d : 2 * d], dfeat[:, 2 * d : 3 * d]
    grads.W0 += d0.T @ feats.z0
    grads.b0 += d0.sum(axis=0)
    grads.W += d1.T @ feats.z1 + d2.T @ feats.z2
    grads.b += (d1 + d2).sum(axis=0)
    return loss, grads
