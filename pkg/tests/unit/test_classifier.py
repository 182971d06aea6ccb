"""
Unit tests for datasets, splits and the hinge-loss classifier.

Tests verify:
1. Dataset assembly from embeddings and labels
2. Stratified, reproducible splits
3. Duplicate collapsing, classifier fitting, cross-validation and error paths
"""

import numpy as np
import pytest
from sklearn.base import clone

from src.errors import ClassifierFitError, DatasetError, SplitError
from src.evalkit import LabeledDataset, build_dataset, collapse_duplicates, linear_svm, split, train_classifier
from src.evalkit.classifier import REGULARIZATION_PARAM
from src.schemas.base import NodeClass
from src.schemas.config import SplitSpec
from src.sgns import NodeEmbeddings


def _blobs(n_per_class: int = 20, seed: int = 0, gap: float = 4.0) -> LabeledDataset:
    rng = np.random.default_rng(seed)
    features = np.vstack(
        [rng.normal(0.0, 1.0, size=(n_per_class, 3)), rng.normal(gap, 1.0, size=(n_per_class, 3))]
    )
    labels = np.array([0] * n_per_class + [1] * n_per_class)
    ids = tuple(f"n{i:03d}" for i in range(2 * n_per_class))
    return LabeledDataset(ids=ids, features=features, labels=labels)


class TestBuildDataset:
    """Tests for dataset assembly."""

    def test_rows_sorted_by_id(self) -> None:
        emb = NodeEmbeddings(ids=("b", "a", "c"), vectors=np.array([[2.0], [1.0], [3.0]]))
        dataset = build_dataset(emb, {"c": NodeClass.PHISHING, "a": NodeClass.NON_PHISHING})
        assert dataset.ids == ("a", "c")
        assert dataset.features.tolist() == [[1.0], [3.0]]
        assert dataset.labels.tolist() == [0, 1]

    def test_integer_labels(self) -> None:
        emb = NodeEmbeddings(ids=("a", "b"), vectors=np.zeros((2, 2)))
        assert build_dataset(emb, {"a": 1, "b": 0}).labels.tolist() == [1, 0]

    def test_missing_embedding(self) -> None:
        emb = NodeEmbeddings(ids=("a",), vectors=np.zeros((1, 2)))
        with pytest.raises(DatasetError) as exc:
            build_dataset(emb, {"a": 1, "zz": 0})
        assert exc.value.missing == ["zz"]


class TestSplit:
    """Tests for train/test partitioning."""

    def test_sizes_and_disjointness(self) -> None:
        dataset = _blobs()
        train, test = split(dataset, SplitSpec(train_ratio=0.7, seed=1))
        assert len(train) == 28
        assert len(test) == 12
        assert not set(train.ids) & set(test.ids)

    def test_stratified_class_shares(self) -> None:
        train, _ = split(_blobs(), SplitSpec(train_ratio=0.5, seed=3))
        assert train.class_counts() == {0: 10, 1: 10}

    def test_reproducible(self) -> None:
        a, _ = split(_blobs(), SplitSpec(train_ratio=0.6, seed=7))
        b, _ = split(_blobs(), SplitSpec(train_ratio=0.6, seed=7))
        assert a.ids == b.ids

    def test_seed_changes_partition(self) -> None:
        a, _ = split(_blobs(), SplitSpec(train_ratio=0.6, seed=1))
        b, _ = split(_blobs(), SplitSpec(train_ratio=0.6, seed=2))
        assert a.ids != b.ids

    def test_singleton_class(self) -> None:
        dataset = LabeledDataset(ids=("a", "b", "c"), features=np.zeros((3, 1)), labels=np.array([0, 0, 1]))
        with pytest.raises(SplitError) as exc:
            split(dataset, SplitSpec(train_ratio=0.5))
        assert exc.value.class_counts == {0: 2, 1: 1}

    def test_unstratified_split_allows_singleton_class(self) -> None:
        dataset = LabeledDataset(
            ids=tuple("abcd"), features=np.zeros((4, 1)), labels=np.array([0, 0, 0, 1])
        )
        train, test = split(dataset, SplitSpec(train_ratio=0.5, stratified=False))
        assert len(train) + len(test) == 4


def _margin_two(n_per_class: int = 20, seed: int = 0) -> LabeledDataset:
    """Separable by x0 = 0 with a gap of 2 between the classes."""
    rng = np.random.default_rng(seed)
    offsets = 1.0 + rng.uniform(0.0, 2.0, size=n_per_class)
    features = np.column_stack(
        [np.concatenate([-offsets, offsets]), rng.normal(0.0, 1.0, size=2 * n_per_class)]
    )
    labels = np.array([0] * n_per_class + [1] * n_per_class)
    return LabeledDataset(ids=tuple(f"m{i:03d}" for i in range(2 * n_per_class)), features=features, labels=labels)


def _repeated(data: LabeledDataset, times: int) -> LabeledDataset:
    return LabeledDataset(
        ids=tuple(f"{node}#{k}" for k in range(times) for node in data.ids),
        features=np.vstack([data.features] * times),
        labels=np.concatenate([data.labels] * times),
    )


class TestCollapseDuplicates:
    """Tests for the unique-row reduction."""

    def test_weights_are_relative_multiplicities(self) -> None:
        features = np.array([[1.0], [1.0], [2.0], [1.0], [2.0], [2.0]])
        labels = np.array([0, 0, 1, 0, 1, 1])
        rows, classes, weights = collapse_duplicates(features, labels)
        assert rows.tolist() == [[1.0], [2.0]]
        assert classes.tolist() == [0, 1]
        assert weights.tolist() == [1.0, 1.0]

    def test_same_features_different_labels_stay_apart(self) -> None:
        rows, classes, weights = collapse_duplicates(np.zeros((3, 2)), np.array([0, 1, 1]))
        assert rows.shape == (2, 2)
        assert classes.tolist() == [0, 1]
        assert weights.tolist() == [1.0, 2.0]

    def test_repeated_set_collapses_to_same_arrays(self) -> None:
        data = _blobs()
        once = collapse_duplicates(data.features, data.labels)
        thrice = collapse_duplicates(_repeated(data, 3).features, _repeated(data, 3).labels)
        for a, b in zip(once, thrice):
            assert np.array_equal(a, b)


class TestLinearSVM:
    """Tests for the scaler + hinge-loss pipeline."""

    def test_uses_hinge_loss(self) -> None:
        estimator = linear_svm(regularization=0.5).steps[-1][1]
        assert estimator.loss == "hinge"
        assert estimator.alpha == 0.5

    def test_clone_keeps_params(self) -> None:
        pipeline = linear_svm(regularization=0.5, seed=3)
        assert clone(pipeline).get_params()[REGULARIZATION_PARAM] == 0.5

    def test_deterministic(self) -> None:
        data = _blobs(gap=1.5)
        a = linear_svm(seed=2).fit(data.features, data.labels)
        b = linear_svm(seed=2).fit(data.features, data.labels)
        assert np.array_equal(a.decision_function(data.features), b.decision_function(data.features))


class TestTrainClassifier:
    """Tests for the standardize + cross-validate wrapper."""

    def test_margin_two_is_fit_exactly(self) -> None:
        data = _margin_two()
        pipeline = train_classifier(data)
        assert (pipeline.predict(data.features) == data.labels).mean() == 1.0

    def test_identical_features_give_chance_accuracy(self) -> None:
        train = LabeledDataset(
            ids=tuple(f"t{i}" for i in range(20)), features=np.ones((20, 4)), labels=np.array([0, 1] * 10)
        )
        held_out = np.array([0, 1] * 10)
        pipeline = train_classifier(train)
        assert (pipeline.predict(np.ones((20, 4))) == held_out).mean() == pytest.approx(0.5)

    def test_duplicated_training_set_same_decision_function(self) -> None:
        data = _blobs(gap=1.0)
        once = train_classifier(data, seed=0)
        twice = train_classifier(_repeated(data, 2), seed=0)
        assert once.get_params()[REGULARIZATION_PARAM] == twice.get_params()[REGULARIZATION_PARAM]
        points = np.random.default_rng(5).normal(0.5, 2.0, size=(200, 3))
        assert np.array_equal(once.decision_function(points), twice.decision_function(points))

    def test_cross_validation_picks_from_grid(self) -> None:
        data = _blobs()
        pipeline = train_classifier(data, regularization_grid=(1e-3, 1e-1), cv_folds=3, seed=0)
        assert pipeline.get_params()[REGULARIZATION_PARAM] in (1e-3, 1e-1)
        assert (pipeline.predict(data.features) == data.labels).mean() > 0.9

    def test_explicit_regularization_skips_search(self) -> None:
        pipeline = train_classifier(_blobs(), regularization=0.25)
        assert pipeline.get_params()[REGULARIZATION_PARAM] == 0.25

    def test_tiny_minority_falls_back_to_grid_median(self) -> None:
        data = LabeledDataset(
            ids=tuple("abcd"),
            features=np.array([[0.0], [0.1], [0.2], [5.0]]),
            labels=np.array([0, 0, 0, 1]),
        )
        pipeline = train_classifier(data, regularization_grid=(1e-3, 1e-2, 1e-1))
        assert pipeline.get_params()[REGULARIZATION_PARAM] == 1e-2

    def test_reproducible(self) -> None:
        data = _blobs(gap=1.0)
        a = train_classifier(data, seed=4)
        b = train_classifier(data, seed=4)
        assert np.array_equal(a.predict(data.features), b.predict(data.features))

    def test_single_class_raises(self) -> None:
        data = LabeledDataset(ids=("a", "b"), features=np.zeros((2, 1)), labels=np.array([1, 1]))
        with pytest.raises(ClassifierFitError):
            train_classifier(data)
