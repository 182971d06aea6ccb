"""
Linear max-margin classifier.

Features are standardized on the training set, then a linear SVM
(L2-regularized mean hinge loss) is fit with scikit-learn's SGDClassifier.
The regularization strength comes from stratified k-fold cross-validation
on the training set; the winner is refit on all training rows.

Training rows are collapsed to unique (features, label) rows weighted by
multiplicity, so a training set repeated k times fits the same model.
"""

import logging
from collections.abc import Sequence

import numpy as np
from sklearn.linear_model import SGDClassifier
from sklearn.model_selection import GridSearchCV, StratifiedKFold
from sklearn.pipeline import Pipeline, make_pipeline
from sklearn.preprocessing import StandardScaler

from src.errors import ClassifierFitError
from src.evalkit.dataset import LabeledDataset
from src.schemas.config import DEFAULT_REGULARIZATION_GRID
from src.utils.telemetry import stage_timer

logger = logging.getLogger(__name__)

REGULARIZATION_PARAM = "sgdclassifier__alpha"
MAX_EPOCHS = 1000


def linear_svm(regularization: float = 1e-2, seed: int = 0) -> Pipeline:
    """StandardScaler followed by a hinge-loss SGDClassifier."""
    return make_pipeline(
        StandardScaler(),
        SGDClassifier(
            loss="hinge",
            penalty="l2",
            alpha=regularization,
            max_iter=MAX_EPOCHS,
            tol=1e-4,
            random_state=seed % 2**32,
        ),
    )


def collapse_duplicates(features: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Unique (features, label) rows and their multiplicities divided by the
    gcd of all multiplicities.

    Returns:
        (features, labels, sample_weight), rows in lexicographic order
    """
    stacked = np.column_stack([np.asarray(features, dtype=np.float64), np.asarray(labels, dtype=np.float64)])
    rows, counts = np.unique(stacked, axis=0, return_counts=True)
    weights = (counts // np.gcd.reduce(counts)).astype(np.float64)
    return rows[:, :-1], rows[:, -1].astype(np.asarray(labels).dtype), weights


def _fit_params(weights: np.ndarray) -> dict[str, np.ndarray]:
    return {"standardscaler__sample_weight": weights, "sgdclassifier__sample_weight": weights}


def train_classifier(
    train: LabeledDataset,
    regularization_grid: Sequence[float] = DEFAULT_REGULARIZATION_GRID,
    cv_folds: int = 5,
    seed: int = 0,
    regularization: float | None = None,
) -> Pipeline:
    """
    Standardize then fit the linear SVM.

    With regularization=None the strength is chosen by cross-validation
    over regularization_grid on the unique training rows; the fold count
    shrinks to the minority class size when that is smaller than cv_folds.

    Raises:
        ClassifierFitError: the training set holds a single class
    """
    counts = train.class_counts()
    if len(counts) < 2:
        raise ClassifierFitError(sorted(counts))

    features, labels, weights = collapse_duplicates(train.features, train.labels)
    pipeline = linear_svm(seed=seed)
    with stage_timer("classify", samples=len(train), unique=len(labels)) as record:
        folds = min(cv_folds, int(np.unique(labels, return_counts=True)[1].min()))
        if regularization is not None or folds < 2:
            chosen = regularization if regularization is not None else float(np.median(regularization_grid))
            pipeline.set_params(**{REGULARIZATION_PARAM: chosen})
            pipeline.fit(features, labels, **_fit_params(weights))
        else:
            search = GridSearchCV(
                pipeline,
                {REGULARIZATION_PARAM: list(regularization_grid)},
                cv=StratifiedKFold(n_splits=folds, shuffle=True, random_state=seed % 2**32),
                scoring="accuracy",
                refit=True,
            )
            search.fit(features, labels, **_fit_params(weights))
            pipeline = search.best_estimator_
            chosen = search.best_params_[REGULARIZATION_PARAM]
        record.details["regularization"] = chosen
    logger.debug("Classifier fit on %d samples with regularization %g", len(train), chosen)
    return pipeline
