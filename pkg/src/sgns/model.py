"""
Skip-gram model with hierarchical softmax.

The probability of target v_j given center v_i is a product of sigmoid
branch decisions along v_j's Huffman path:

    Pr(v_j | v_i) = prod_t sigmoid(s_t * phi(v_i) . psi(b_t)),  s_t = 1 - 2 * code_t

so code 0 means "go left with probability sigmoid(+x)".
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from src.errors import ModelStateError, NodeNotFoundError
from src.sgns.huffman import HuffmanTree

logger = logging.getLogger(__name__)

NodeKey = int | str


@dataclass(frozen=True)
class NodeEmbeddings:
    """External ids and their vectors; row i belongs to ids[i]."""
    ids: tuple[str, ...]
    vectors: np.ndarray
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.ids):
            raise ValueError(
                f"Embedding matrix shape {self.vectors.shape} does not match {len(self.ids)} ids"
            )
        object.__setattr__(self, "_index", {node: i for i, node in enumerate(self.ids)})

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, node: object) -> bool:
        return node in self._index

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def vector(self, node: str) -> np.ndarray:
        try:
            return self.vectors[self._index[node]]
        except KeyError:
            raise NodeNotFoundError(node) from None

    def matrix_for(self, nodes: list[str]) -> np.ndarray:
        """Rows for nodes, in the given order."""
        return self.vectors[[self._index[node] for node in nodes]]


class EmbeddingModel:
    """
    Input vectors phi (|V| x d) and internal vectors psi (|V|-1 x d).

    internal_vectors is None for models trained by the throughput backend.
    """

    def __init__(
        self,
        vocabulary: list[str],
        input_vectors: np.ndarray,
        internal_vectors: np.ndarray | None,
    ) -> None:
        self.vocabulary = list(vocabulary)
        self.input_vectors = input_vectors
        self.internal_vectors = internal_vectors
        self._index = {node: i for i, node in enumerate(self.vocabulary)}

    @classmethod
    def initialize(cls, vocabulary: list[str], dimension: int, seed: int) -> "EmbeddingModel":
        """phi uniform in [-0.5/d, 0.5/d]; psi zero."""
        rng = np.random.default_rng(seed)
        n = len(vocabulary)
        phi = (rng.random((n, dimension)) - 0.5) / dimension
        psi = np.zeros((max(n - 1, 0), dimension))
        return cls(vocabulary, phi, psi)

    @property
    def dimension(self) -> int:
        return int(self.input_vectors.shape[1])

    def index_of(self, node: NodeKey) -> int:
        if isinstance(node, str):
            try:
                return self._index[node]
            except KeyError:
                raise NodeNotFoundError(node) from None
        index = int(node)
        if not 0 <= index < len(self.vocabulary):
            raise NodeNotFoundError(node)
        return index

    def require_internal(self) -> np.ndarray:
        if self.internal_vectors is None:
            raise ModelStateError("Model has no internal vectors (trained in throughput mode)")
        return self.internal_vectors

    def embeddings(self) -> NodeEmbeddings:
        return NodeEmbeddings(ids=tuple(self.vocabulary), vectors=self.input_vectors.copy())

    def copy(self) -> "EmbeddingModel":
        psi = None if self.internal_vectors is None else self.internal_vectors.copy()
        return EmbeddingModel(self.vocabulary, self.input_vectors.copy(), psi)


def _path(model: EmbeddingModel, tree: HuffmanTree, center: NodeKey, target: NodeKey):
    psi = model.require_internal()
    i = model.index_of(center)
    j = model.index_of(target)
    return model.input_vectors[i], psi[tree.points[j]], tree.codes[j]


def path_log_probability(
    model: EmbeddingModel, tree: HuffmanTree, center: NodeKey, target: NodeKey
) -> float:
    """log Pr(target | center)."""
    phi, psi_path, code = _path(model, tree, center, target)
    signs = 1.0 - 2.0 * code
    return -float(np.sum(np.logaddexp(0.0, -signs * (psi_path @ phi))))


def path_probability(
    model: EmbeddingModel, tree: HuffmanTree, center: NodeKey, target: NodeKey
) -> float:
    """Pr(target | center), in (0, 1)."""
    return float(np.exp(path_log_probability(model, tree, center, target)))


def pair_loss_gradients(
    model: EmbeddingModel, tree: HuffmanTree, center: NodeKey, target: NodeKey
) -> tuple[float, np.ndarray, np.ndarray]:
    """
    Loss -log Pr(target | center) with its analytic gradients.

    Returns:
        (loss, d loss / d phi(center), d loss / d psi rows along target's path)
    """
    phi, psi_path, code = _path(model, tree, center, target)
    scores = psi_path @ phi
    signs = 1.0 - 2.0 * code
    loss = float(np.sum(np.logaddexp(0.0, -signs * scores)))
    g = 1.0 - code - expit(scores)
    return loss, -(g @ psi_path), -np.outer(g, phi)


def gradient_check(
    model: EmbeddingModel, tree: HuffmanTree, center: NodeKey, target: NodeKey, h: float = 1e-5
) -> float:
    """
    Largest relative error between analytic and central-difference gradients.

    Error per coordinate is |a - n| / max(|a|, |n|, 1), i.e. absolute for
    small gradients.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    _, grad_phi, grad_psi = pair_loss_gradients(model, tree, center, target)
    shifted = model.copy()
    i = shifted.index_of(center)
    path = tree.points[shifted.index_of(target)]
    psi = shifted.require_internal()

    def loss() -> float:
        return -path_log_probability(shifted, tree, center, target)

    def central(array: np.ndarray, position: tuple[int, ...]) -> float:
        original = array[position]
        array[position] = original + h
        plus = loss()
        array[position] = original - h
        minus = loss()
        array[position] = original
        return (plus - minus) / (2.0 * h)

    worst = 0.0
    for k in range(shifted.dimension):
        worst = max(worst, _relative_error(grad_phi[k], central(shifted.input_vectors, (i, k))))
    for row, node in enumerate(path):
        for k in range(shifted.dimension):
            worst = max(worst, _relative_error(grad_psi[row, k], central(psi, (int(node), k))))
    return worst


def _relative_error(analytic: float, numeric: float) -> float:
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1.0)
