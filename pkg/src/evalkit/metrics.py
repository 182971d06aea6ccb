"""
Confusion counts and F-scores.

Standard definitions: TP true positive predicted positive, TN true
negative predicted negative, FP true negative predicted positive, FN true
positive predicted negative. Micro-F1 pools both classes' counts;
macro-F1 is the unweighted mean of the per-class F1.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field
from sklearn.metrics import confusion_matrix

from src.errors import MetricsValidationError

Score = float


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def swapped(self) -> "ConfusionCounts":
        """The same table seen with the negative class as positive."""
        return ConfusionCounts(tp=self.tn, tn=self.tp, fp=self.fn, fn=self.fp)


class MetricsReport(BaseModel):
    """Positive-class precision/recall/F1 plus both-class micro and macro F1."""
    precision: float = Field(ge=0.0, le=1.0)
    recall: float = Field(ge=0.0, le=1.0)
    f1: float = Field(ge=0.0, le=1.0)
    micro_f1: float = Field(ge=0.0, le=1.0)
    macro_f1: float = Field(ge=0.0, le=1.0)


def confusion(y_true: ArrayLike, y_pred: ArrayLike) -> ConfusionCounts:
    """
    Counts for binary labels (1 positive, 0 negative).

    Raises:
        MetricsValidationError: sequences differ in length
    """
    truth = np.asarray(y_true)
    predicted = np.asarray(y_pred)
    if truth.shape[0] != predicted.shape[0]:
        raise MetricsValidationError((truth.shape[0], predicted.shape[0]))
    if truth.size == 0:
        return ConfusionCounts(tp=0, tn=0, fp=0, fn=0)
    tn, fp, fn, tp = confusion_matrix(truth, predicted, labels=[0, 1]).ravel()
    return ConfusionCounts(tp=int(tp), tn=int(tn), fp=int(fp), fn=int(fn))


def precision(counts: ConfusionCounts) -> Score:
    denominator = counts.tp + counts.fp
    return counts.tp / denominator if denominator else 0.0


def recall(counts: ConfusionCounts) -> Score:
    denominator = counts.tp + counts.fn
    return counts.tp / denominator if denominator else 0.0


def f1_score(p: Score, r: Score) -> Score:
    return 2.0 * p * r / (p + r) if p + r > 0 else 0.0


def metrics(counts: ConfusionCounts | Sequence[ConfusionCounts]) -> MetricsReport:
    """
    Scores from a confusion table.

    A single table is read as the positive class's view and the negative
    class's view is derived from it. A sequence is taken as one table per
    class, positive class first.
    """
    per_class = [counts, counts.swapped()] if isinstance(counts, ConfusionCounts) else list(counts)
    if not per_class:
        raise ValueError("metrics needs at least one confusion table")

    f1_per_class = [f1_score(precision(c), recall(c)) for c in per_class]
    pooled = ConfusionCounts(
        tp=sum(c.tp for c in per_class),
        tn=sum(c.tn for c in per_class),
        fp=sum(c.fp for c in per_class),
        fn=sum(c.fn for c in per_class),
    )
    positive = per_class[0]
    return MetricsReport(
        precision=precision(positive),
        recall=recall(positive),
        f1=f1_per_class[0],
        micro_f1=f1_score(precision(pooled), recall(pooled)),
        macro_f1=float(np.mean(f1_per_class)),
    )
