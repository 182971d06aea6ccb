"""
Acceptance: confusion tables and F-scores.

Tests verify:
1. Hand-computed tables
2. Agreement with scikit-learn on every labelling of five test nodes
3. Scores stay in [0, 1] under fuzzing
"""

import itertools

import numpy as np
import pytest
from sklearn import metrics as skm

from src.evalkit import ConfusionCounts, confusion, metrics


class TestHandComputed:
    """Enumerated tables with known scores."""

    @pytest.mark.parametrize(
        ("counts", "expected"),
        [
            (ConfusionCounts(tp=4, tn=0, fp=1, fn=1), {"precision": 0.8, "recall": 0.8, "f1": 0.8}),
            (ConfusionCounts(tp=0, tn=5, fp=0, fn=0), {"precision": 0.0, "recall": 0.0, "f1": 0.0}),
            (ConfusionCounts(tp=3, tn=3, fp=0, fn=0), {"precision": 1.0, "recall": 1.0, "f1": 1.0, "micro_f1": 1.0}),
            (ConfusionCounts(tp=2, tn=1, fp=2, fn=1), {"precision": 0.5, "recall": 2 / 3, "f1": 4 / 7}),
        ],
    )
    def test_tables(self, counts: ConfusionCounts, expected: dict[str, float]) -> None:
        report = metrics(counts).model_dump()
        for name, value in expected.items():
            assert report[name] == pytest.approx(value)

    def test_micro_f1_is_accuracy(self) -> None:
        counts = ConfusionCounts(tp=2, tn=1, fp=2, fn=1)
        assert metrics(counts).micro_f1 == pytest.approx(3 / 6)


class TestAgainstScikitLearn:
    """Every (truth, prediction) pair over five nodes."""

    def test_all_labellings(self) -> None:
        for truth in itertools.product((0, 1), repeat=5):
            for predicted in itertools.product((0, 1), repeat=5):
                report = metrics(confusion(truth, predicted))
                kwargs = {"labels": [0, 1], "zero_division": 0}
                assert report.precision == pytest.approx(
                    skm.precision_score(truth, predicted, pos_label=1, zero_division=0)
                )
                assert report.recall == pytest.approx(skm.recall_score(truth, predicted, pos_label=1, zero_division=0))
                assert report.micro_f1 == pytest.approx(skm.f1_score(truth, predicted, average="micro", **kwargs))
                assert report.macro_f1 == pytest.approx(skm.f1_score(truth, predicted, average="macro", **kwargs))


class TestFuzzing:
    """Random tables never leave the unit interval."""

    def test_bounds(self) -> None:
        rng = np.random.default_rng(0)
        for _ in range(2000):
            tp, tn, fp, fn = (int(x) for x in rng.integers(0, 50, size=4))
            report = metrics(ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn))
            for value in report.model_dump().values():
                assert 0.0 <= value <= 1.0
