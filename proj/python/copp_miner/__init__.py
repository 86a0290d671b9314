"""Top-k contrast order-preserving pattern mining for two-class time series."""

from ._core import (
    ConfigError,
    ContractViolation,
    CoppError,
    Dataset,
    DatasetError,
    EvaluationError,
    ParseError,
    count_occurrences,
    extract_extremes,
    featurize,
    fuse,
    knn_cross_validate,
    mine,
    oracle_topk,
    relative_order,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "CoppError",
    "Dataset",
    "DatasetError",
    "EvaluationError",
    "ParseError",
    "count_occurrences",
    "extract_extremes",
    "featurize",
    "fuse",
    "knn_cross_validate",
    "mine",
    "oracle_topk",
    "relative_order",
]
