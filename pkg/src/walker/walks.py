"""
Time-respecting random walks and the walk corpus.

A walk starts with time floor minus infinity. Each step draws the next
out-edge at or after the floor under the sampling law, then moves the floor to the
chosen edge's timestamp. It stops after walk_length nodes or at a node
whose neighborhood is empty. StaticUniform never moves the floor.

Every (round, start node) pair owns its own random stream derived from
the corpus seed, so the corpus does not depend on the worker count.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from src.schemas.base import SamplingKind
from src.schemas.config import SamplingStrategy, WalkConfig
from src.tgraph.graph import NodeRef, TemporalGraph
from src.utils.telemetry import stage_timer
from src.walker.strategies import edge_probabilities, sample_edge_index

logger = logging.getLogger(__name__)

# (round, start node index)
WalkJob = tuple[int, int]


@dataclass(frozen=True, slots=True)
class Walk:
    """
    Node indices v1..vm and the edges e1..e(m-1) between them.

    edge_ids is None for walks read back from a corpus file.
    """
    nodes: tuple[int, ...]
    edge_ids: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.nodes)


class WalkCorpus:
    """
    Walks plus the node table they index into.

    The training vocabulary orders nodes by first appearance in the
    corpus, which makes a generated corpus and the same corpus read back
    from disk train identically.
    """

    def __init__(self, walks: list[Walk], external_ids: Sequence[str]) -> None:
        self.walks = walks
        self.external_ids = list(external_ids)
        self._vocabulary: list[str] | None = None
        self._token_walks: list[np.ndarray] | None = None

    def __len__(self) -> int:
        return len(self.walks)

    def __iter__(self) -> Iterator[Walk]:
        return iter(self.walks)

    @property
    def total_tokens(self) -> int:
        return sum(len(walk) for walk in self.walks)

    def sequences(self) -> list[list[str]]:
        """Walks as lists of external ids."""
        ext = self.external_ids
        return [[ext[i] for i in walk.nodes] for walk in self.walks]

    @classmethod
    def from_sequences(cls, sequences: Iterable[Sequence[str]]) -> "WalkCorpus":
        """Rebuild a corpus from external-id sequences (no edge ids)."""
        index: dict[str, int] = {}
        walks = []
        for sequence in sequences:
            nodes = tuple(index.setdefault(node, len(index)) for node in sequence)
            walks.append(Walk(nodes=nodes))
        return cls(walks, list(index))

    def vocabulary(self) -> list[str]:
        """External ids in order of first appearance."""
        self._encode()
        assert self._vocabulary is not None
        return self._vocabulary

    def token_walks(self) -> list[np.ndarray]:
        """Walks re-indexed into vocabulary positions."""
        self._encode()
        assert self._token_walks is not None
        return self._token_walks

    def node_frequencies(self) -> np.ndarray:
        """Occurrence count per vocabulary entry; sums to total_tokens."""
        tokens = self.token_walks()
        if not tokens:
            return np.zeros(0, dtype=np.int64)
        return np.bincount(np.concatenate(tokens), minlength=len(self.vocabulary())).astype(np.int64)

    def _encode(self) -> None:
        if self._vocabulary is not None:
            return
        position: dict[int, int] = {}
        token_walks = []
        for walk in self.walks:
            token_walks.append(
                np.fromiter(
                    (position.setdefault(node, len(position)) for node in walk.nodes),
                    dtype=np.int64,
                    count=len(walk.nodes),
                )
            )
        ext = self.external_ids
        self._vocabulary = [ext[node] for node in position]
        self._token_walks = token_walks


def walk_rng(seed: int, round_index: int, node: int) -> np.random.Generator:
    """Independent stream for one (round, start node) pair."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(round_index, node)))


def temporal_walk(
    graph: TemporalGraph,
    start_node: NodeRef,
    config: WalkConfig,
    strategy: SamplingStrategy,
    rng: np.random.Generator,
) -> Walk:
    """
    One walk from start_node.

    Raises:
        NodeNotFoundError: start_node is not in the graph
        GraphStateError: graph is not finalized
    """
    current = graph.resolve(start_node)
    respect_time = strategy.kind.is_temporal
    nodes = [current]
    edges: list[int] = []
    floor: int | None = None

    while len(nodes) < config.walk_length:
        candidates = graph.neighborhood_array(current, floor)
        if candidates.size == 0:
            break
        probabilities = edge_probabilities(
            graph.edge_time[candidates], graph.edge_weight[candidates], strategy
        )
        chosen = int(candidates[sample_edge_index(probabilities, rng)])
        edges.append(chosen)
        current = int(graph.edge_dst[chosen])
        nodes.append(current)
        if respect_time:
            floor = int(graph.edge_time[chosen])

    return Walk(nodes=tuple(nodes), edge_ids=tuple(edges))


def walk_jobs(num_nodes: int, config: WalkConfig) -> list[WalkJob]:
    """Start-node order for every round; each round is a fresh shuffle of V."""
    jobs: list[WalkJob] = []
    for round_index in range(config.walks_per_node):
        shuffle_rng = np.random.default_rng(
            np.random.SeedSequence(config.seed, spawn_key=(round_index,))
        )
        jobs.extend((round_index, int(node)) for node in shuffle_rng.permutation(num_nodes))
    return jobs


def run_walk_jobs(
    graph: TemporalGraph,
    jobs: Sequence[WalkJob],
    config: WalkConfig,
    strategy: SamplingStrategy,
) -> list[Walk]:
    return [
        temporal_walk(graph, node, config, strategy, walk_rng(config.seed, round_index, node))
        for round_index, node in jobs
    ]


def generate_corpus(
    graph: TemporalGraph,
    config: WalkConfig,
    strategy: SamplingStrategy,
    workers: int = 1,
) -> WalkCorpus:
    """
    r rounds, every node once per round as a start, r * |V| walks.

    The graph is finalized if it is not already.
    """
    graph.finalize()
    jobs = walk_jobs(graph.num_nodes, config)
    with stage_timer("walk", strategy=strategy.name, workers=workers) as record:
        if workers <= 1 or len(jobs) < 2:
            walks = run_walk_jobs(graph, jobs, config, strategy)
        else:
            walks = _run_parallel(graph, jobs, config, strategy, workers)
        record.details.update(
            walks=len(walks),
            tokens=sum(len(w) for w in walks),
            nodes=graph.num_nodes,
            edges=graph.num_edges,
        )
    return WalkCorpus(walks, graph.external_ids)


# -----------------------------------------------------------------------------
# Process pool
# -----------------------------------------------------------------------------

_worker_state: tuple[TemporalGraph, WalkConfig, SamplingStrategy] | None = None


def _init_worker(graph: TemporalGraph, config: WalkConfig, strategy: SamplingStrategy) -> None:
    global _worker_state
    _worker_state = (graph, config, strategy)


def _run_chunk(jobs: list[WalkJob]) -> list[Walk]:
    assert _worker_state is not None
    graph, config, strategy = _worker_state
    return run_walk_jobs(graph, jobs, config, strategy)


def _run_parallel(
    graph: TemporalGraph,
    jobs: list[WalkJob],
    config: WalkConfig,
    strategy: SamplingStrategy,
    workers: int,
) -> list[Walk]:
    chunk_size = max(1, len(jobs) // (workers * 4))
    chunks = [jobs[i : i + chunk_size] for i in range(0, len(jobs), chunk_size)]
    logger.debug("Walking %d jobs in %d chunks on %d workers", len(jobs), len(chunks), workers)
    walks: list[Walk] = []
    with ProcessPoolExecutor(
        max_workers=workers,
        initializer=_init_worker,
        initargs=(graph, config, strategy),
    ) as executor:
        # map preserves chunk order
        for chunk_walks in executor.map(_run_chunk, chunks):
            walks.extend(chunk_walks)
    return walks
