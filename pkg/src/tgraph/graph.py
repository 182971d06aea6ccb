"""
Temporal Weighted Multidigraph

Each account is a node, each transaction an edge (u, v, w, t). Parallel
edges are kept; out-adjacency is kept sorted by (timestamp, edge id) so a
temporal edge neighborhood (out-edges of u at or after t) is a lower
bound search followed by a slice.

Lifecycle: build with add_node/add_edge (single writer), then finalize().
A finalized graph is immutable and safe for concurrent readers; it also
exposes numpy edge arrays and a CSR out-index used by the walker.
"""

import logging
import math
from bisect import bisect_left, bisect_right
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from numbers import Integral, Real

import networkx as nx
import numpy as np
from pydantic import BaseModel

from src.errors import EdgeValidationError, GraphStateError, NodeNotFoundError

logger = logging.getLogger(__name__)

NodeRef = int | str


@dataclass(frozen=True, slots=True)
class NodeId:
    """A node: dense index plus the account address it stands for."""
    index: int
    external_id: str


@dataclass(frozen=True, slots=True)
class TemporalEdge:
    """One transaction. src/dst are node indices of the owning graph."""
    id: int
    src: int
    dst: int
    weight: float
    timestamp: int
    key: str | None = None


class GraphSummary(BaseModel):
    """Network-construction statistics."""
    nodes: int
    edges: int
    self_loops: int
    multi_edge_pairs: int
    max_out_degree: int
    max_in_degree: int
    first_timestamp: int | None
    last_timestamp: int | None
    total_value: float


class TemporalGraph:
    """
    Node-interned temporal multidigraph.

    Usage:
        graph = TemporalGraph()
        graph.add_edge("0xa...", "0xb...", 1.5, 1_500_000_000)
        graph.finalize()
        graph.temporal_edge_neighborhood("0xa...", 1_400_000_000)
    """

    def __init__(self) -> None:
        self._index: dict[str, int] = {}
        self._external: list[str] = []
        self._src: list[int] = []
        self._dst: list[int] = []
        self._weight: list[float] = []
        self._time: list[int] = []
        self._key: list[str | None] = []
        self._adjacency: list[list[int]] = []
        self._adj_times: list[list[int]] = []
        self._frozen = False
        self._nx: nx.MultiDiGraph | None = None

        self.edge_src: np.ndarray = np.empty(0, dtype=np.int64)
        self.edge_dst: np.ndarray = np.empty(0, dtype=np.int64)
        self.edge_weight: np.ndarray = np.empty(0, dtype=np.float64)
        self.edge_time: np.ndarray = np.empty(0, dtype=np.int64)
        self._out_ptr: np.ndarray = np.zeros(1, dtype=np.int64)
        self._out_edges: np.ndarray = np.empty(0, dtype=np.int64)
        self._out_times: np.ndarray = np.empty(0, dtype=np.int64)

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    def add_node(self, external_id: str) -> int:
        """Intern an account; returns its index (existing index if known)."""
        index = self._index.get(external_id)
        if index is not None:
            return index
        self._check_mutable()
        index = len(self._external)
        self._index[external_id] = index
        self._external.append(external_id)
        self._adjacency.append([])
        self._adj_times.append([])
        return index

    def add_edge(
        self,
        src_external_id: str,
        dst_external_id: str,
        weight: float,
        timestamp: int,
        key: str | None = None,
    ) -> int:
        """
        Insert one transaction and return its edge id.

        New accounts are interned on first sight. The edge lands after every
        existing out-edge of src with timestamp <= t, so ties stay in
        insertion (edge id) order.

        Raises:
            EdgeValidationError: negative or non-finite weight, non-integer timestamp
            GraphStateError: graph already finalized
        """
        self._check_mutable()
        weight = _validate_weight(weight)
        timestamp = _validate_timestamp(timestamp)

        src = self.add_node(src_external_id)
        dst = self.add_node(dst_external_id)
        edge_id = len(self._src)
        self._src.append(src)
        self._dst.append(dst)
        self._weight.append(weight)
        self._time.append(timestamp)
        self._key.append(key)

        times = self._adj_times[src]
        position = bisect_right(times, timestamp)
        times.insert(position, timestamp)
        self._adjacency[src].insert(position, edge_id)
        return edge_id

    def finalize(self) -> "TemporalGraph":
        """Freeze the graph and build the numpy edge arrays. Idempotent."""
        if self._frozen:
            return self
        self.edge_src = np.asarray(self._src, dtype=np.int64)
        self.edge_dst = np.asarray(self._dst, dtype=np.int64)
        self.edge_weight = np.asarray(self._weight, dtype=np.float64)
        self.edge_time = np.asarray(self._time, dtype=np.int64)

        degrees = np.fromiter((len(a) for a in self._adjacency), dtype=np.int64, count=self.num_nodes)
        self._out_ptr = np.concatenate(([0], np.cumsum(degrees))).astype(np.int64)
        if self.num_edges:
            self._out_edges = np.fromiter(
                (e for adjacency in self._adjacency for e in adjacency),
                dtype=np.int64,
                count=self.num_edges,
            )
        self._out_times = self.edge_time[self._out_edges]
        self._frozen = True
        logger.debug("Finalized graph with %d nodes and %d edges", self.num_nodes, self.num_edges)
        return self

    def _check_mutable(self) -> None:
        if self._frozen:
            raise GraphStateError("Graph is finalized; no further nodes or edges can be added")

    # -------------------------------------------------------------------------
    # Lookup
    # -------------------------------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self._external)

    @property
    def num_edges(self) -> int:
        return len(self._src)

    @property
    def is_finalized(self) -> bool:
        return self._frozen

    @property
    def external_ids(self) -> list[str]:
        return list(self._external)

    def index_of(self, external_id: str) -> int:
        try:
            return self._index[external_id]
        except KeyError:
            raise NodeNotFoundError(external_id) from None

    def external_id(self, index: int) -> str:
        return self._external[self.resolve(index)]

    def has_node(self, node: NodeRef) -> bool:
        if isinstance(node, str):
            return node in self._index
        return 0 <= int(node) < self.num_nodes

    def resolve(self, node: NodeRef) -> int:
        """Map an external id or an index to a validated index."""
        if isinstance(node, str):
            return self.index_of(node)
        if isinstance(node, bool) or not isinstance(node, Integral):
            raise NodeNotFoundError(node)
        index = int(node)
        if not 0 <= index < self.num_nodes:
            raise NodeNotFoundError(node)
        return index

    def node(self, node: NodeRef) -> NodeId:
        index = self.resolve(node)
        return NodeId(index=index, external_id=self._external[index])

    def nodes(self) -> Iterator[NodeId]:
        for index, external_id in enumerate(self._external):
            yield NodeId(index=index, external_id=external_id)

    def edge(self, edge_id: int) -> TemporalEdge:
        return TemporalEdge(
            id=edge_id,
            src=self._src[edge_id],
            dst=self._dst[edge_id],
            weight=self._weight[edge_id],
            timestamp=self._time[edge_id],
            key=self._key[edge_id],
        )

    def edges(self) -> Iterator[TemporalEdge]:
        for edge_id in range(self.num_edges):
            yield self.edge(edge_id)

    def out_adjacency(self, node: NodeRef) -> list[int]:
        """All out-edge ids of node in ascending (timestamp, id) order."""
        return list(self._adjacency[self.resolve(node)])

    def out_degree(self, node: NodeRef) -> int:
        return len(self._adjacency[self.resolve(node)])

    # -------------------------------------------------------------------------
    # Temporal queries
    # -------------------------------------------------------------------------

    def temporal_edge_neighborhood(self, node: NodeRef, t: int | None = None) -> list[int]:
        """
        Out-edges of node with timestamp >= t, ascending (timestamp, id).

        t=None means minus infinity (the full out-adjacency).

        Raises:
            NodeNotFoundError: node is not in the graph
        """
        index = self.resolve(node)
        adjacency = self._adjacency[index]
        if t is None:
            return list(adjacency)
        start = bisect_left(self._adj_times[index], t)
        return adjacency[start:]

    def neighborhood_array(self, index: int, t: int | None = None) -> np.ndarray:
        """Array form of temporal_edge_neighborhood for the walker; index must already be valid."""
        if not self._frozen:
            raise GraphStateError("Graph must be finalized before walking")
        lo = self._out_ptr[index]
        hi = self._out_ptr[index + 1]
        if t is not None:
            lo = lo + np.searchsorted(self._out_times[lo:hi], t, side="left")
        return self._out_edges[lo:hi]

    # -------------------------------------------------------------------------
    # Views and statistics
    # -------------------------------------------------------------------------

    def to_networkx(self) -> nx.MultiDiGraph:
        """MultiDiGraph over node indices; edge keys are edge ids. Cached once finalized."""
        if self._nx is not None:
            return self._nx
        g = nx.MultiDiGraph()
        g.add_nodes_from((i, {"external_id": ext}) for i, ext in enumerate(self._external))
        g.add_edges_from(
            (s, d, e, {"weight": w, "timestamp": t})
            for e, (s, d, w, t) in enumerate(zip(self._src, self._dst, self._weight, self._time))
        )
        if self._frozen:
            self._nx = g
        return g

    def edge_multiset(self) -> Counter[tuple[str, str, float, int]]:
        """Edges keyed by external ids; equality of two graphs up to re-indexing."""
        ext = self._external
        return Counter(
            (ext[s], ext[d], w, t) for s, d, w, t in zip(self._src, self._dst, self._weight, self._time)
        )

    def describe(self) -> GraphSummary:
        pairs = Counter(zip(self._src, self._dst))
        in_degree = Counter(self._dst)
        return GraphSummary(
            nodes=self.num_nodes,
            edges=self.num_edges,
            self_loops=sum(1 for s, d in zip(self._src, self._dst) if s == d),
            multi_edge_pairs=sum(1 for count in pairs.values() if count > 1),
            max_out_degree=max((len(a) for a in self._adjacency), default=0),
            max_in_degree=max(in_degree.values(), default=0),
            first_timestamp=min(self._time) if self._time else None,
            last_timestamp=max(self._time) if self._time else None,
            total_value=math.fsum(self._weight),
        )

    def __repr__(self) -> str:
        state = "finalized" if self._frozen else "building"
        return f"TemporalGraph(nodes={self.num_nodes}, edges={self.num_edges}, {state})"


def _validate_weight(weight: float) -> float:
    if isinstance(weight, bool) or not isinstance(weight, Real):
        raise EdgeValidationError("weight", weight)
    value = float(weight)
    if not math.isfinite(value) or value < 0:
        raise EdgeValidationError("weight", weight)
    return value


def _validate_timestamp(timestamp: int) -> int:
    if isinstance(timestamp, bool):
        raise EdgeValidationError("timestamp", timestamp)
    if isinstance(timestamp, Integral):
        return int(timestamp)
    if isinstance(timestamp, Real) and math.isfinite(timestamp) and float(timestamp).is_integer():
        return int(timestamp)
    raise EdgeValidationError("timestamp", timestamp)
