"""
Rank maps over a temporal edge neighborhood.

eta-minus ranks timestamps descending: the soonest valid edge gets the
largest rank. eta-plus ranks weights ascending: the largest amount gets
the largest rank. Ties share the mean of the ranks they span, so the
resulting sampling law does not depend on neighborhood order.
"""

import numpy as np
from numpy.typing import ArrayLike
from scipy.stats import rankdata

from src.errors import EmptyNeighborhoodError


def rank_descending_time(timestamps: ArrayLike, flip: bool = False) -> np.ndarray:
    """
    eta-minus over edge timestamps.

    [3, 5, 8] -> [3, 2, 1]; [4, 4, 9] -> [2.5, 2.5, 1].
    flip=True favours the latest edge instead.
    """
    values = _non_empty(timestamps)
    return rankdata(values if flip else -values, method="average")


def rank_ascending_weight(weights: ArrayLike, flip: bool = False) -> np.ndarray:
    """
    eta-plus over edge weights.

    [1.0, 2.0, 4.0] -> [1, 2, 3]; [2.0, 2.0] -> [1.5, 1.5].
    flip=True favours the smallest amount instead.
    """
    values = _non_empty(weights)
    return rankdata(-values if flip else values, method="average")


def _non_empty(values: ArrayLike) -> np.ndarray:
    array = np.asarray(values)
    if array.size == 0:
        raise EmptyNeighborhoodError()
    # unsigned values would wrap on negation
    return array.astype(np.float64) if array.dtype.kind in "ub" else array
