"""
Planted synthetic transaction networks.

Generates labeled networks whose classes differ only in transaction
timing, for checking that temporal walks recover what static walks miss.
"""

from src.synthetic.generator import PlantedNetworkGenerator, network_graph, write_network
from src.synthetic.schemas import AccountRole, SyntheticNetwork, SyntheticNetworkConfig

__all__ = [
    "AccountRole",
    "PlantedNetworkGenerator",
    "SyntheticNetwork",
    "SyntheticNetworkConfig",
    "network_graph",
    "write_network",
]
