"""Time-respecting biased random walks."""

from src.walker.ranking import rank_ascending_weight, rank_descending_time
from src.walker.strategies import edge_probabilities, sample_edge_index
from src.walker.walks import Walk, WalkCorpus, generate_corpus, temporal_walk, walk_rng

__all__ = [
    "Walk",
    "WalkCorpus",
    "edge_probabilities",
    "generate_corpus",
    "rank_ascending_weight",
    "rank_descending_time",
    "sample_edge_index",
    "temporal_walk",
    "walk_rng",
]
