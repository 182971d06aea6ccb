"""
Skip-gram training.

Deterministic mode runs plain SGD, one step per (center, context) pair in
corpus order, with a learning rate that decays linearly over all steps.
Throughput mode hands the corpus to gensim's multi-worker skip-gram with
hierarchical softmax; its updates are unsynchronized, so only phi comes
back and runs are not reproducible.
"""

import logging
from collections.abc import Iterator

import numpy as np
from scipy.special import expit

from src.errors import TrainingError
from src.schemas.base import TrainingMode
from src.schemas.config import TrainConfig
from src.sgns.huffman import HuffmanTree, build_huffman
from src.sgns.model import EmbeddingModel
from src.utils.telemetry import stage_timer
from src.walker.walks import WalkCorpus

logger = logging.getLogger(__name__)


def context_pairs(tokens: np.ndarray, window: int) -> Iterator[tuple[int, int]]:
    """(center, context) pairs with |i - j| <= window, truncated at the walk ends."""
    n = len(tokens)
    for i in range(n):
        for j in range(max(0, i - window), min(n, i + window + 1)):
            if j != i:
                yield int(tokens[i]), int(tokens[j])


def count_pairs(corpus: WalkCorpus, window: int) -> int:
    total = 0
    for tokens in corpus.token_walks():
        n = len(tokens)
        for i in range(n):
            total += min(n, i + window + 1) - max(0, i - window) - 1
    return total


def train(
    corpus: WalkCorpus,
    tree: HuffmanTree | None,
    config: TrainConfig,
    mode: TrainingMode = TrainingMode.DETERMINISTIC,
    workers: int = 1,
) -> EmbeddingModel:
    """
    Learn node embeddings from a walk corpus.

    Args:
        corpus: Walks; the vocabulary is corpus.vocabulary()
        tree: Huffman tree over corpus.node_frequencies(); built when None
        config: Dimension, window, epochs, learning-rate schedule, seed
        mode: DETERMINISTIC (single worker) or THROUGHPUT (gensim)
        workers: Worker threads for THROUGHPUT

    Raises:
        TrainingError: empty corpus, tree/vocabulary mismatch, gensim missing
    """
    if len(corpus) == 0:
        raise TrainingError("Cannot train on an empty corpus")
    if mode is TrainingMode.THROUGHPUT:
        return _train_gensim(corpus, config, workers)

    vocabulary = corpus.vocabulary()
    if tree is None:
        tree = build_huffman(corpus.node_frequencies())
    if tree.num_leaves != len(vocabulary):
        raise TrainingError(
            f"Huffman tree has {tree.num_leaves} leaves but the corpus has {len(vocabulary)} nodes"
        )

    model = EmbeddingModel.initialize(vocabulary, config.dimension, config.seed)
    pairs_per_epoch = count_pairs(corpus, config.window)
    total_steps = pairs_per_epoch * config.epochs

    with stage_timer(
        "train",
        mode=mode.value,
        nodes=len(vocabulary),
        pairs=total_steps,
        dimension=config.dimension,
    ):
        if total_steps == 0:
            logger.warning("Corpus has no context pairs; embeddings keep their initialization")
            return model
        _sgd(model, tree, corpus, config, total_steps)
    return model


def _sgd(
    model: EmbeddingModel,
    tree: HuffmanTree,
    corpus: WalkCorpus,
    config: TrainConfig,
    total_steps: int,
) -> None:
    phi = model.input_vectors
    psi = model.require_internal()
    codes = tree.codes
    points = tree.points
    start = config.initial_learning_rate
    decay = (config.final_learning_rate - start) / max(total_steps - 1, 1)
    token_walks = corpus.token_walks()

    step = 0
    for epoch in range(config.epochs):
        for tokens in token_walks:
            for center, target in context_pairs(tokens, config.window):
                lr = start + decay * step
                path = points[target]
                psi_path = psi[path]
                g = (1.0 - codes[target] - expit(psi_path @ phi[center])) * lr
                psi[path] += np.outer(g, phi[center])
                phi[center] += g @ psi_path
                step += 1
        logger.debug("Epoch %d done, learning rate %.6f", epoch + 1, start + decay * (step - 1))


def _train_gensim(corpus: WalkCorpus, config: TrainConfig, workers: int) -> EmbeddingModel:
    try:
        from gensim.models import Word2Vec
    except ImportError as e:
        raise TrainingError(
            "Throughput mode needs gensim; install the 'throughput' extra"
        ) from e

    vocabulary = corpus.vocabulary()
    with stage_timer("train", mode=TrainingMode.THROUGHPUT.value, nodes=len(vocabulary), workers=workers):
        w2v = Word2Vec(
            sentences=corpus.sequences(),
            vector_size=config.dimension,
            window=config.window,
            min_count=1,
            sg=1,
            hs=1,
            negative=0,
            sample=0,
            alpha=config.initial_learning_rate,
            min_alpha=config.final_learning_rate,
            epochs=config.epochs,
            seed=config.seed % 2**32,
            workers=workers,
            shrink_windows=False,
        )
    phi = np.asarray(w2v.wv[vocabulary], dtype=np.float64)
    return EmbeddingModel(vocabulary, phi, None)


def average_negative_log_likelihood(
    model: EmbeddingModel, tree: HuffmanTree, corpus: WalkCorpus, window: int
) -> float:
    """Mean -log Pr(context | center) over every pair of the corpus."""
    psi = model.require_internal()
    translate = np.array([model.index_of(node) for node in corpus.vocabulary()], dtype=np.int64)
    total = 0.0
    pairs = 0
    for tokens in corpus.token_walks():
        for center, target in context_pairs(translate[tokens], window):
            signs = 1.0 - 2.0 * tree.codes[target]
            scores = psi[tree.points[target]] @ model.input_vectors[center]
            total += float(np.sum(np.logaddexp(0.0, -signs * scores)))
            pairs += 1
    if pairs == 0:
        return 0.0
    return total / pairs
