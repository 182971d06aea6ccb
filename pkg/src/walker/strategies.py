"""
Edge-selection laws.

    Uniform / StaticUniform  P(e) = 1 / |N|
    TBS                      P(e) proportional to the descending-time rank of e
    WBS                      P(e) proportional to the ascending-value rank of e
    TBS_WBS                  P(e) proportional to P_TBS(e)^alpha * P_WBS(e)^(1 - alpha)

The blend is evaluated in log space. alpha = 1 and alpha = 0 return the
TBS and WBS vectors themselves, so those reductions hold bit for bit.
"""

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import softmax

from src.errors import EmptyNeighborhoodError
from src.schemas.base import SamplingKind
from src.schemas.config import SamplingStrategy
from src.walker.ranking import rank_ascending_weight, rank_descending_time


def edge_probabilities(
    timestamps: ArrayLike,
    weights: ArrayLike,
    strategy: SamplingStrategy,
) -> np.ndarray:
    """
    Probability of each edge of a neighborhood under strategy.

    Args:
        timestamps: timestamp of every edge in the neighborhood, any order
        weights: edge values aligned with timestamps
        strategy: sampling law and alpha

    Returns:
        Strictly positive vector summing to 1, aligned with the inputs

    Raises:
        EmptyNeighborhoodError: the neighborhood has no edges
    """
    times = np.asarray(timestamps)
    amounts = np.asarray(weights)
    n = times.size
    if n == 0:
        raise EmptyNeighborhoodError()
    if amounts.size != n:
        raise ValueError(f"timestamps and weights differ in length: {n} != {amounts.size}")

    kind = strategy.kind
    if kind in (SamplingKind.UNIFORM, SamplingKind.STATIC_UNIFORM):
        return np.full(n, 1.0 / n)
    if kind is SamplingKind.TBS:
        return _tbs(times, strategy.flip_rankings)
    if kind is SamplingKind.WBS:
        return _wbs(amounts, strategy.flip_rankings)

    alpha = strategy.alpha
    if alpha == 1.0:
        return _tbs(times, strategy.flip_rankings)
    if alpha == 0.0:
        return _wbs(amounts, strategy.flip_rankings)
    logits = alpha * np.log(_tbs(times, strategy.flip_rankings)) + (1.0 - alpha) * np.log(
        _wbs(amounts, strategy.flip_rankings)
    )
    return softmax(logits)


def sample_edge_index(probabilities: np.ndarray, rng: np.random.Generator) -> int:
    """Draw one position from a probability vector by cumulative-sum inversion."""
    cumulative = np.cumsum(probabilities)
    u = rng.random() * cumulative[-1]
    index = int(np.searchsorted(cumulative, u, side="right"))
    return min(index, cumulative.size - 1)


def _tbs(timestamps: np.ndarray, flip: bool) -> np.ndarray:
    ranks = rank_descending_time(timestamps, flip=flip)
    return ranks / ranks.sum()


def _wbs(weights: np.ndarray, flip: bool) -> np.ndarray:
    ranks = rank_ascending_weight(weights, flip=flip)
    return ranks / ranks.sum()
