"""
Huffman tree over node frequencies.

Greedy two-minimum merge with a heap. Ties break on (frequency, smallest
contained node id); the first node popped becomes the left child (code 0).
Internal node i is the i-th merge, so the root is internal node |V| - 2.
"""

import heapq
import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from src.errors import DegenerateVocabularyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HuffmanTree:
    """
    Per-leaf prefix codes and root-to-leaf internal-node paths.

    codes[v][t] is the branch taken below points[v][t]; both have length
    equal to the depth of leaf v.
    """
    codes: tuple[np.ndarray, ...]
    points: tuple[np.ndarray, ...]

    @property
    def num_leaves(self) -> int:
        return len(self.codes)

    @property
    def num_internal(self) -> int:
        return self.num_leaves - 1

    def code_lengths(self) -> np.ndarray:
        return np.array([len(code) for code in self.codes], dtype=np.int64)

    def weighted_length(self, frequencies: ArrayLike) -> float:
        """Sum of frequency times code length."""
        return float(np.dot(np.asarray(frequencies, dtype=np.float64), self.code_lengths()))

    @property
    def max_depth(self) -> int:
        return int(self.code_lengths().max())


def build_huffman(node_frequencies: ArrayLike) -> HuffmanTree:
    """
    Build the tree for frequencies indexed by node id.

    Raises:
        DegenerateVocabularyError: fewer than 2 nodes, a negative count,
            or no positive count
    """
    frequencies = np.asarray(node_frequencies, dtype=np.float64)
    n = frequencies.size
    if n < 2:
        raise DegenerateVocabularyError(n)
    if np.any(frequencies < 0) or not np.all(np.isfinite(frequencies)):
        raise DegenerateVocabularyError(n, "frequencies must be finite and non-negative")
    if not np.any(frequencies > 0):
        raise DegenerateVocabularyError(n, "at least one positive frequency required")

    # (frequency, smallest contained leaf id, node id); node ids >= n are internal
    heap = [(float(f), leaf, leaf) for leaf, f in enumerate(frequencies)]
    heapq.heapify(heap)
    children: list[tuple[int, int]] = []
    for i in range(n - 1):
        left = heapq.heappop(heap)
        right = heapq.heappop(heap)
        children.append((left[2], right[2]))
        heapq.heappush(heap, (left[0] + right[0], min(left[1], right[1]), n + i))

    codes: list[np.ndarray] = [np.empty(0, dtype=np.uint8)] * n
    points: list[np.ndarray] = [np.empty(0, dtype=np.int64)] * n
    stack: list[tuple[int, list[int], list[int]]] = [(heap[0][2], [], [])]
    while stack:
        node, code, path = stack.pop()
        if node < n:
            codes[node] = np.array(code, dtype=np.uint8)
            points[node] = np.array(path, dtype=np.int64)
            continue
        internal = node - n
        left, right = children[internal]
        stack.append((left, code + [0], path + [internal]))
        stack.append((right, code + [1], path + [internal]))

    tree = HuffmanTree(codes=tuple(codes), points=tuple(points))
    logger.debug("Built Huffman tree over %d leaves, max depth %d", n, tree.max_depth)
    return tree
