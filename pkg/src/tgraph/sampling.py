"""
K-order subgraph sampling and splicing.

Data acquisition works per objective account: take the accounts reachable
within k_out hops along edge direction and those reaching the center
within k_in hops, keep every transaction among them, then splice all
per-center subgraphs into one network.
"""

import logging
from collections import Counter
from collections.abc import Iterable

import networkx as nx

from src.schemas.config import SubgraphSpec
from src.tgraph.graph import TemporalGraph

logger = logging.getLogger(__name__)

PARENT_EDGE_PREFIX = "edge:"


def parent_edge_key(edge_id: int) -> str:
    """Identity key for an unkeyed parent edge."""
    return f"{PARENT_EDGE_PREFIX}{edge_id}"


def k_order_subgraph(graph: TemporalGraph, spec: SubgraphSpec) -> TemporalGraph:
    """
    Induced subgraph on the K-order neighborhood of spec.centers.

    In- and out-expansion are independent BFS frontiers rooted at the
    centers. Retained nodes are re-interned in parent index order and
    edges copied in parent edge-id order, so the result is deterministic.
    Unkeyed edges are stamped with parent_edge_key(edge_id) so splice can
    tell parallel copies apart across subgraphs of the same parent.

    Raises:
        NodeNotFoundError: a center is not in the graph
    """
    centers = [graph.index_of(c) for c in sorted(spec.centers)]
    view = graph.to_networkx()
    reverse = view.reverse(copy=False)

    kept: set[int] = set()
    for center in centers:
        kept.update(nx.single_source_shortest_path_length(view, center, cutoff=spec.k_out))
        kept.update(nx.single_source_shortest_path_length(reverse, center, cutoff=spec.k_in))

    edge_ids = sorted(key for _, _, key in view.subgraph(kept).edges(keys=True))

    sub = TemporalGraph()
    for index in sorted(kept):
        sub.add_node(graph.external_id(index))
    for edge_id in edge_ids:
        edge = graph.edge(edge_id)
        sub.add_edge(
            graph.external_id(edge.src),
            graph.external_id(edge.dst),
            edge.weight,
            edge.timestamp,
            key=edge.key if edge.key is not None else parent_edge_key(edge_id),
        )
    logger.debug(
        "K-order subgraph (k_in=%d, k_out=%d, %d centers): %d nodes, %d edges",
        spec.k_in, spec.k_out, len(centers), sub.num_nodes, sub.num_edges,
    )
    return sub.finalize()


def splice(subgraphs: Iterable[TemporalGraph]) -> TemporalGraph:
    """
    Node- and edge-wise union keyed by external id.

    An edge is identified by (src, dst, weight, timestamp, key).
    k_order_subgraph keys every edge it copies. Edges still without a key
    are told apart by their occurrence rank among identical tuples inside
    their own subgraph, so parallel identical transactions survive while
    copies shared by overlapping subgraphs appear once.
    """
    merged = TemporalGraph()
    seen: set[tuple[object, ...]] = set()
    for sub in subgraphs:
        external = sub.external_ids
        for external_id in external:
            merged.add_node(external_id)
        occurrences: Counter[tuple[str, str, float, int]] = Counter()
        for edge in sub.edges():
            base = (external[edge.src], external[edge.dst], edge.weight, edge.timestamp)
            if edge.key is None:
                identity: tuple[object, ...] = (*base, None, occurrences[base])
                occurrences[base] += 1
            else:
                identity = (*base, edge.key)
            if identity in seen:
                continue
            seen.add(identity)
            merged.add_edge(*base, key=edge.key)
    return merged.finalize()


def extract_objective_network(
    graph: TemporalGraph,
    centers: Iterable[str],
    k_in: int = 1,
    k_out: int = 3,
) -> TemporalGraph:
    """Sample one K-order subgraph per objective account and splice them."""
    ordered = sorted(set(centers))
    subgraphs = (
        k_order_subgraph(graph, SubgraphSpec(centers=frozenset({center}), k_in=k_in, k_out=k_out))
        for center in ordered
    )
    network = splice(subgraphs)
    logger.info(
        "Objective network from %d centers: %d nodes, %d edges",
        len(ordered), network.num_nodes, network.num_edges,
    )
    return network
