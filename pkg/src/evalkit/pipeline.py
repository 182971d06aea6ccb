"""
Evaluation pipeline.

For every (strategy, seed): walk corpus, embeddings, dataset. For every
training ratio on top of that: split, classifier, test-set metrics. One
row per (strategy, ratio, seed); summaries give mean and std over seeds.
"""

import logging
import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from src.evalkit.classifier import train_classifier
from src.evalkit.dataset import LabeledDataset, build_dataset, split
from src.evalkit.metrics import confusion, metrics
from src.schemas.base import NodeClass, SamplingKind, TrainingMode
from src.schemas.config import EvalSpec, SamplingStrategy, SplitSpec, TrainConfig, WalkConfig
from src.sgns.trainer import train
from src.tgraph.graph import TemporalGraph
from src.walker.walks import generate_corpus

logger = logging.getLogger(__name__)

KEY_COLUMNS = ["strategy", "alpha", "ratio"]
METRIC_COLUMNS = ["precision", "recall", "f1", "micro_f1", "macro_f1"]
ROW_COLUMNS = [*KEY_COLUMNS, "seed", *METRIC_COLUMNS]


class EvaluationTable:
    """Per-seed metric rows with a mean/std summary."""

    def __init__(self, rows: pd.DataFrame) -> None:
        self.rows = rows[ROW_COLUMNS].reset_index(drop=True)

    @classmethod
    def from_records(cls, records: Sequence[Mapping[str, Any]]) -> "EvaluationTable":
        return cls(pd.DataFrame.from_records(list(records), columns=ROW_COLUMNS))

    @classmethod
    def concat(cls, tables: Sequence["EvaluationTable"]) -> "EvaluationTable":
        return cls(pd.concat([t.rows for t in tables], ignore_index=True))

    def __len__(self) -> int:
        return len(self.rows)

    def summary(self) -> pd.DataFrame:
        """Mean and sample std per (strategy, alpha, ratio); std is 0 for one seed."""
        grouped = self.rows.groupby(KEY_COLUMNS, dropna=False, sort=False)[METRIC_COLUMNS]
        summary = grouped.agg(["mean", "std"])
        summary.columns = [f"{metric}_{stat}" for metric, stat in summary.columns]
        summary = summary.fillna(0.0).reset_index()
        summary.insert(len(KEY_COLUMNS), "seeds", grouped.size().to_numpy())
        return summary

    def write(self, path_prefix: Path) -> tuple[Path, Path]:
        """Write <prefix>.tsv (rows) and <prefix>_summary.tsv."""
        path_prefix.parent.mkdir(parents=True, exist_ok=True)
        rows_path = path_prefix.with_name(f"{path_prefix.name}.tsv")
        summary_path = path_prefix.with_name(f"{path_prefix.name}_summary.tsv")
        self.rows.to_csv(rows_path, sep="\t", index=False)
        self.summary().to_csv(summary_path, sep="\t", index=False)
        return rows_path, summary_path

    @classmethod
    def read(cls, path: Path) -> "EvaluationTable":
        return cls(pd.read_csv(path, sep="\t"))


def evaluate_embeddings(
    dataset: LabeledDataset,
    strategy: SamplingStrategy,
    ratios: Sequence[float],
    seed: int,
    spec: EvalSpec,
) -> list[dict[str, Any]]:
    """Metric rows for one embedding across training ratios."""
    rows = []
    for ratio in ratios:
        train_set, test_set = split(dataset, SplitSpec(train_ratio=ratio, seed=seed))
        model = train_classifier(
            train_set,
            regularization_grid=spec.regularization_grid,
            cv_folds=spec.cv_folds,
            seed=seed,
        )
        report = metrics(confusion(test_set.labels, model.predict(test_set.features)))
        rows.append(
            {
                "strategy": strategy.name,
                "alpha": strategy.alpha if strategy.kind is SamplingKind.TBS_WBS else math.nan,
                "ratio": ratio,
                "seed": seed,
                **report.model_dump(),
            }
        )
    return rows


def evaluate_pipeline(
    graph: TemporalGraph,
    labels: Mapping[str, NodeClass | int],
    strategies: Sequence[SamplingStrategy],
    walk_config: WalkConfig,
    train_config: TrainConfig,
    ratios: Sequence[float],
    seeds: Sequence[int],
    spec: EvalSpec | None = None,
    workers: int = 1,
    mode: TrainingMode = TrainingMode.DETERMINISTIC,
) -> EvaluationTable:
    """
    Walk, embed, split, classify and score every (strategy, ratio, seed).

    One corpus and one embedding serve all ratios of a (strategy, seed).
    The seed drives walks, training, splitting and cross-validation alike,
    so strategies that reduce to each other give identical rows.
    """
    spec = spec or EvalSpec()
    records: list[dict[str, Any]] = []
    for strategy in strategies:
        for seed in seeds:
            logger.info("Evaluating %s with seed %d", strategy.name, seed)
            corpus = generate_corpus(
                graph, walk_config.model_copy(update={"seed": seed}), strategy, workers=workers
            )
            model = train(
                corpus, None, train_config.model_copy(update={"seed": seed}), mode=mode, workers=workers
            )
            dataset = build_dataset(model.embeddings(), labels)
            records.extend(evaluate_embeddings(dataset, strategy, ratios, seed, spec))
    return EvaluationTable.from_records(records)


def alpha_sweep(
    graph: TemporalGraph,
    labels: Mapping[str, NodeClass | int],
    alphas: Sequence[float],
    ratios: Sequence[float],
    seeds: Sequence[int],
    walk_config: WalkConfig,
    train_config: TrainConfig,
    spec: EvalSpec | None = None,
    flip_rankings: bool = False,
    workers: int = 1,
    mode: TrainingMode = TrainingMode.DETERMINISTIC,
) -> EvaluationTable:
    """TBS_WBS at every alpha; len(alphas) * len(ratios) summary rows."""
    strategies = [
        SamplingStrategy(kind=SamplingKind.TBS_WBS, alpha=alpha, flip_rankings=flip_rankings)
        for alpha in alphas
    ]
    return evaluate_pipeline(
        graph, labels, strategies, walk_config, train_config, ratios, seeds, spec, workers, mode
    )


def compare_to_baseline(
    summary: pd.DataFrame,
    baseline: str = SamplingKind.STATIC_UNIFORM.value,
    metric: str = "micro_f1",
) -> pd.DataFrame:
    """
    Mean difference against the baseline per (strategy, ratio).

    beats_baseline is set when the difference exceeds the pooled standard
    deviation sqrt((std_a^2 + std_b^2) / 2).
    """
    mean, std = f"{metric}_mean", f"{metric}_std"
    base = summary[summary["strategy"] == baseline].set_index("ratio")[[mean, std]]
    if base.empty:
        raise ValueError(f"Summary has no rows for baseline {baseline!r}")
    others = summary[summary["strategy"] != baseline]
    joined = others.join(base, on="ratio", rsuffix="_baseline")
    pooled = np.sqrt((joined[std] ** 2 + joined[f"{std}_baseline"] ** 2) / 2.0)
    result = pd.DataFrame(
        {
            "strategy": joined["strategy"],
            "alpha": joined["alpha"],
            "ratio": joined["ratio"],
            "metric": metric,
            "mean": joined[mean],
            "baseline_mean": joined[f"{mean}_baseline"],
            "difference": joined[mean] - joined[f"{mean}_baseline"],
            "pooled_std": pooled,
        }
    )
    result["beats_baseline"] = result["difference"] > result["pooled_std"]
    return result.reset_index(drop=True)
