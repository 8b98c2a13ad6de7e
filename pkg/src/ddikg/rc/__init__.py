"""Relation-classification head, data formats, training and metrics."""

from .data import (
    DEFAULT_CLASSES,
    DEFAULT_MAX_SEQUENCE_LENGTH,
    InstanceDataset,
    RcInstance,
    canonical_label,
    read_instances,
    write_instances,
    write_predictions,
)
from .head import (
    BatchFeatures,
    RcParams,
    cls_transform,
    forward,
    fuse_kge,
    init_rc_params,
    pool_entity,
    predict_batch,
    rc_loss_and_grad,
    resolve_drug_vector,
    softmax,
)
from .metrics import (
    ClassMetrics,
    MetricsReport,
    classification_report,
    evaluate,
    format_metrics,
    write_metrics,
)
from .training import RcTrainConfig, load_rc_params, save_rc_params, train_rc

__all__ = [
    "BatchFeatures",
    "ClassMetrics",
    "DEFAULT_CLASSES",
    "DEFAULT_MAX_SEQUENCE_LENGTH",
    "InstanceDataset",
    "MetricsReport",
    "RcInstance",
    "RcParams",
    "RcTrainConfig",
    "canonical_label",
    "classification_report",
    "cls_transform",
    "evaluate",
    "format_metrics",
    "forward",
    "fuse_kge",
    "init_rc_params",
    "load_rc_params",
    "pool_entity",
    "predict_batch",
    "rc_loss_and_grad",
    "read_instances",
    "resolve_drug_vector",
    "save_rc_params",
    "softmax",
    "train_rc",
    "write_instances",
    "write_metrics",
    "write_predictions",
]
