"""Training configuration for the knowledge-graph embedding models."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DdiKgError

MODEL_KINDS = ("transe", "transr", "rescal", "distmult")

#: Models scored by a translational distance (lower score = more plausible).
TRANSLATIONAL = ("transe", "transr")
#: Models scored by a bilinear form (higher score = more plausible).
BILINEAR = ("rescal", "distmult")


def higher_is_better(model: str) -> bool:
    """Score orientation: distances rank ascending, bilinear scores descending."""
    if model not in MODEL_KINDS:
        raise DdiKgError(f"unknown model kind {model!r} (expected one of {MODEL_KINDS})")
    return model in BILINEAR


@dataclass(frozen=True)
class KgeConfig:
    """Hyperparameters for embedding training.

    Defaults follow the reference recipe: 200-dimensional embeddings
    optimized with plain SGD at learning rate 1e-4 for 300 epochs.
    """

    model: str = "transe"
    dim: int = 200
    relation_dim: int | None = None  # TransR relation-space width; defaults to dim
    learning_rate: float = 0.0001
    epochs: int = 300
    margin: float = 1.0
    negatives: int = 1
    norm: str = "l2"
    seed: int = 0
    batch_size: int = 256

    def __post_init__(self):
        if self.model not in MODEL_KINDS:
            raise DdiKgError(f"unknown model kind {self.model!r} (expected one of {MODEL_KINDS})")
        if self.norm not in ("l1", "l2"):
            raise DdiKgError(f"norm must be 'l1' or 'l2', got {self.norm!r}")
        for name in ("dim", "learning_rate", "margin", "negatives", "batch_size"):
            if not getattr(self, name) > 0:
                raise DdiKgError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.epochs < 0:
            raise DdiKgError(f"epochs must be non-negative, got {self.epochs!r}")
        if self.relation_dim is not None and self.relation_dim <= 0:
            raise DdiKgError(f"relation_dim must be positive, got {self.relation_dim!r}")

    @property
    def k(self) -> int:
        """Relation-space width (differs from ``dim`` only for TransR)."""
        return self.relation_dim if self.relation_dim is not None else self.dim
