"""Skip-gram with hierarchical softmax over a Huffman tree."""

from src.sgns.huffman import HuffmanTree, build_huffman
from src.sgns.model import (
    EmbeddingModel,
    NodeEmbeddings,
    gradient_check,
    pair_loss_gradients,
    path_log_probability,
    path_probability,
)
from src.sgns.trainer import average_negative_log_likelihood, context_pairs, train

__all__ = [
    "EmbeddingModel",
    "HuffmanTree",
    "NodeEmbeddings",
    "average_negative_log_likelihood",
    "build_huffman",
    "context_pairs",
    "gradient_check",
    "pair_loss_gradients",
    "path_log_probability",
    "path_probability",
    "train",
]
