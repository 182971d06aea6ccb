"""Node-classification harness: splits, classifier, metrics, pipeline."""

from src.evalkit.classifier import collapse_duplicates, linear_svm, train_classifier
from src.evalkit.dataset import LabeledDataset, build_dataset, split
from src.evalkit.metrics import ConfusionCounts, MetricsReport, confusion, f1_score, metrics
from src.evalkit.pipeline import (
    EvaluationTable,
    alpha_sweep,
    compare_to_baseline,
    evaluate_embeddings,
    evaluate_pipeline,
)

__all__ = [
    "ConfusionCounts",
    "EvaluationTable",
    "LabeledDataset",
    "MetricsReport",
    "alpha_sweep",
    "build_dataset",
    "collapse_duplicates",
    "compare_to_baseline",
    "confusion",
    "evaluate_embeddings",
    "evaluate_pipeline",
    "f1_score",
    "linear_svm",
    "metrics",
    "split",
    "train_classifier",
]
