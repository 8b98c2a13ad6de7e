"""Mini-batch gradient-descent training for the classification head."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from ..errors import DdiKgError
from ..validation import as_rng
from .data import DEFAULT_CLASSES, RcInstance
from .head import (
    DEFAULT_KG_DIM,
    BatchFeatures,
    FallbackFn,
    KgeLookup,
    RcParams,
    init_rc_params,
    rc_loss_and_grad,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RcTrainConfig:
    """Head-training hyperparameters (default 5 epochs, plain gradient descent)."""

    mode: str = "text"
    epochs: int = 5
    learning_rate: float = 0.1
    batch_size: int = 32
    seed: int = 0
    fused_dim: int | None = None

    def __post_init__(self):
        if self.mode not in ("text", "fused"):
            raise DdiKgError(f"mode must be 'text' or 'fused', got {self.mode!r}")
        if self.epochs < 0:
            raise DdiKgError(f"epochs must be non-negative, got {self.epochs!r}")
        for name in ("learning_rate", "batch_size"):
            if not getattr(self, name) > 0:
                raise DdiKgError(f"{name} must be positive, got {getattr(self, name)!r}")


def train_rc(
    dataset: Sequence[RcInstance],
    config: RcTrainConfig,
    classes: Sequence[str] = DEFAULT_CLASSES,
    kge_lookup: KgeLookup | None = None,
    fallback: FallbackFn | None = None,
    log: IO[str] | None = None,
    loss_history: list[float] | None = None,
) -> RcParams:
    """Minimize mean cross-entropy over labeled instances.

    Hidden states (and KG vectors in fused mode) are fixed inputs; only the
    head parameters move.  Deterministic given ``config.seed`` and the
    dataset order.
    """
    if not dataset:
        raise DdiKgError("cannot train on an empty dataset")
    for inst in dataset:
        if inst.label is None:
            raise DdiKgError(f"instance {inst.id!r} is unlabeled")
    class_index = {c: i for i, c in enumerate(classes)}
    try:
        labels = np.array([class_index[inst.label] for inst in dataset], dtype=np.int64)
    except KeyError as exc:
        raise DdiKgError(f"label {exc} is not in the class list {list(classes)}") from None

    feats = BatchFeatures(dataset, config.mode, kge_lookup, fallback)
    dim = feats.z0.shape[1]
    kg_dim = feats.kg.shape[1] // 2 if feats.kg is not None else DEFAULT_KG_DIM

    rng = as_rng(config.seed)
    params = init_rc_params(
        dim, classes=classes, kg_dim=kg_dim, fused_dim=config.fused_dim, seed=rng
    )
    n = len(dataset)
    for epoch in range(config.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        n_batches = 0
        for start in range(0, n, config.batch_size):
            idx = order[start : start + config.batch_size]
            loss, grads = rc_loss_and_grad(params, feats.subset(idx), labels[idx])
            for name in ("W", "b", "W0", "b0", "W_f", "b_f",
                         "W3_text", "b3_text", "W3_fused", "b3_fused"):
                getattr(params, name)[...] -= config.learning_rate * getattr(grads, name)
            epoch_loss += loss
            n_batches += 1
        mean_loss = epoch_loss / n_batches
        if log is not None:
            log.write(f"{epoch}\t{mean_loss:.8g}\n")
        if loss_history is not None:
            loss_history.append(mean_loss)
        logger.debug("epoch %d mean loss %.8g", epoch, mean_loss)
    return params


def save_rc_params(path, params: RcParams, mode: str) -> None:
    meta = {
        "format": "ddikg-rc-model",
        "version": 1,
        "mode": mode,
        "classes": list(params.classes),
    }
    arrays = {name: getattr(params, name) for name in (
        "W", "b", "W0", "b0", "W_f", "b_f",
        "W3_text", "b3_text", "W3_fused", "b3_fused",
    )}
    with open(path, "wb") as fh:
        np.savez(fh, meta=np.array(json.dumps(meta, sort_keys=True)), **arrays)


def load_rc_params(path) -> tuple[RcParams, str]:
    """Load a saved head; returns (params, mode)."""
    with np.load(path, allow_pickle=False) as data:
        try:
            meta = json.loads(str(data["meta"]))
        except KeyError:
            raise DdiKgError(f"{path}: not a ddikg classifier file") from None
        if meta.get("format") != "ddikg-rc-model":
            raise DdiKgError(f"{path}: not a ddikg classifier file")
        params = RcParams(
            **{name: data[name] for name in (
                "W", "b", "W0", "b0", "W_f", "b_f",
                "W3_text", "b3_text", "W3_fused", "b3_fused",
            )},
            classes=tuple(meta["classes"]),
        )
    return params, meta["mode"]
