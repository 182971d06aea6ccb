"""Temporal weighted multidigraph and K-order subgraph sampling."""

from src.tgraph.graph import GraphSummary, NodeId, TemporalEdge, TemporalGraph
from src.tgraph.sampling import extract_objective_network, k_order_subgraph, parent_edge_key, splice

__all__ = [
    "GraphSummary",
    "NodeId",
    "TemporalEdge",
    "TemporalGraph",
    "extract_objective_network",
    "k_order_subgraph",
    "parent_edge_key",
    "splice",
]
