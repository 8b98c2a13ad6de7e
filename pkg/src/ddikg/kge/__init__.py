"""Knowledge-graph embedding models, training and evaluation."""

from .config import BILINEAR, MODEL_KINDS, TRANSLATIONAL, KgeConfig, higher_is_better
from .io import (
    SavedKgeModel,
    export_embeddings,
    load_embeddings,
    load_kge_model,
    save_kge_model,
)
from .models import (
    ScoredTriple,
    loss_and_grad,
    loss_and_grad_indices,
    score,
    score_indices,
    score_triples,
)
from .params import KgeParams, init_params, normalize_rows
from .ranking import LinkPredictionReport, format_report, rank_triples, write_report_kv
from .sampling import corrupt, corrupt_indices
from .training import DrugEmbedding, drug_embeddings, train

__all__ = [
    "BILINEAR",
    "MODEL_KINDS",
    "TRANSLATIONAL",
    "DrugEmbedding",
    "KgeConfig",
    "KgeParams",
    "LinkPredictionReport",
    "SavedKgeModel",
    "ScoredTriple",
    "corrupt",
    "corrupt_indices",
    "drug_embeddings",
    "export_embeddings",
    "format_report",
    "higher_is_better",
    "init_params",
    "load_embeddings",
    "load_kge_model",
    "loss_and_grad",
    "loss_and_grad_indices",
    "normalize_rows",
    "rank_triples",
    "save_kge_model",
    "score",
    "score_indices",
    "score_triples",
    "train",
    "write_report_kv",
]
