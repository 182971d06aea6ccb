"""
Labeled objective nodes and train/test splitting.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np
from sklearn.model_selection import train_test_split

from src.errors import DatasetError, SplitError
from src.schemas.base import NodeClass
from src.schemas.config import SplitSpec
from src.sgns.model import NodeEmbeddings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledDataset:
    """Feature rows with binary labels (1 = phishing)."""
    ids: tuple[str, ...]
    features: np.ndarray
    labels: np.ndarray

    def __len__(self) -> int:
        return len(self.ids)

    def class_counts(self) -> dict[int, int]:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def subset(self, rows: np.ndarray) -> "LabeledDataset":
        return LabeledDataset(
            ids=tuple(self.ids[i] for i in rows),
            features=self.features[rows],
            labels=self.labels[rows],
        )


def build_dataset(
    embeddings: NodeEmbeddings, labels: Mapping[str, NodeClass | int]
) -> LabeledDataset:
    """
    One row per labeled node, ordered by external id.

    Raises:
        DatasetError: labeled nodes absent from the embeddings
    """
    ids = sorted(labels)
    missing = [node for node in ids if node not in embeddings]
    if missing:
        raise DatasetError(missing)
    y = np.array(
        [v.label if isinstance(v, NodeClass) else int(v) for v in (labels[i] for i in ids)],
        dtype=np.int64,
    )
    return LabeledDataset(ids=tuple(ids), features=embeddings.matrix_for(ids), labels=y)


def split(dataset: LabeledDataset, spec: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """
    Random partition with train fraction spec.train_ratio, reproducible per seed.

    Stratified splits keep each class's train share within one sample of
    the ratio.

    Raises:
        SplitError: a class has fewer than 2 samples, or the split would
            leave train or test empty
    """
    counts = dataset.class_counts()
    if spec.stratified and (len(counts) < 2 or min(counts.values()) < 2):
        raise SplitError("Stratified split needs at least 2 samples per class", counts)

    rows = np.arange(len(dataset))
    try:
        train_rows, test_rows = train_test_split(
            rows,
            train_size=spec.train_ratio,
            random_state=spec.seed % 2**32,
            shuffle=True,
            stratify=dataset.labels if spec.stratified else None,
        )
    except ValueError as e:
        raise SplitError(f"Cannot split {len(dataset)} samples at ratio {spec.train_ratio}: {e}", counts) from e

    return dataset.subset(np.sort(train_rows)), dataset.subset(np.sort(test_rows))
