"""
Planted Transaction-Network Generator

Three consecutive time windows (early, middle, late):
- victims pay objective accounts at any time
- positive objective accounts pay bridges in the early window
- negative objective accounts pay bridges in the late window
- bridges pay hubs in the middle window
- hubs pay each other in the late window

Both classes touch the same kind of bridges with the same degree, so a
walk that ignores time sees them alike. A time-respecting walk from a
positive account continues through a bridge into the hub region; one
from a negative account stops at the bridge.
"""

import logging
from pathlib import Path

import numpy as np

from src.ingestion.parser import build_graph, write_transactions
from src.ingestion.schemas import TransactionRecord
from src.schemas.base import NodeClass
from src.synthetic.schemas import AccountRole, SyntheticNetwork, SyntheticNetworkConfig
from src.tgraph.graph import TemporalGraph

logger = logging.getLogger(__name__)


class PlantedNetworkGenerator:
    """
    Deterministic generator; the same config always yields the same network.

    Usage:
        network = PlantedNetworkGenerator(SyntheticNetworkConfig(seed=7)).generate()
        graph = network_graph(network)
    """

    def __init__(self, config: SyntheticNetworkConfig | None = None) -> None:
        self.config = config or SyntheticNetworkConfig()
        self._rng = np.random.default_rng(self.config.seed)
        self._addresses: set[str] = set()

    def generate(self) -> SyntheticNetwork:
        cfg = self.config
        roles: dict[str, AccountRole] = {}
        accounts: dict[AccountRole, list[str]] = {}
        for role, count in (
            (AccountRole.POSITIVE, cfg.positives),
            (AccountRole.NEGATIVE, cfg.negatives),
            (AccountRole.BRIDGE, cfg.bridges),
            (AccountRole.HUB, cfg.hubs),
            (AccountRole.VICTIM, cfg.victims),
        ):
            accounts[role] = [self._address() for _ in range(count)]
            roles.update({a: role for a in accounts[role]})

        early = cfg.start_time
        middle = early + cfg.window_s
        late = middle + cfg.window_s
        end = late + cfg.window_s
        objective = accounts[AccountRole.POSITIVE] + accounts[AccountRole.NEGATIVE]

        records: list[TransactionRecord] = []
        records += self._transfers(accounts[AccountRole.VICTIM], objective, early, end)
        records += self._transfers(accounts[AccountRole.POSITIVE], accounts[AccountRole.BRIDGE], early, middle)
        records += self._transfers(accounts[AccountRole.NEGATIVE], accounts[AccountRole.BRIDGE], late, end)
        records += self._transfers(accounts[AccountRole.BRIDGE], accounts[AccountRole.HUB], middle, late)
        records += self._transfers(accounts[AccountRole.HUB], accounts[AccountRole.HUB], late, end)
        records.sort(key=lambda r: (r.timestamp, r.tx_hash or ""))

        labels = {a: NodeClass.PHISHING for a in accounts[AccountRole.POSITIVE]}
        labels.update({a: NodeClass.NON_PHISHING for a in accounts[AccountRole.NEGATIVE]})
        if cfg.label_noise > 0:
            flips = self._rng.choice(len(objective), size=int(round(cfg.label_noise * len(objective))), replace=False)
            for i in sorted(flips):
                account = objective[i]
                labels[account] = (
                    NodeClass.NON_PHISHING if labels[account] is NodeClass.PHISHING else NodeClass.PHISHING
                )

        logger.info(
            "Generated planted network: %d accounts, %d transactions", cfg.total_accounts, len(records)
        )
        return SyntheticNetwork(config=cfg, records=records, labels=labels, roles=roles)

    def _address(self) -> str:
        while True:
            address = "0x" + self._rng.bytes(20).hex()
            if address not in self._addresses:
                self._addresses.add(address)
                return address

    def _transfers(
        self, senders: list[str], receivers: list[str], t_start: int, t_end: int
    ) -> list[TransactionRecord]:
        records = []
        for sender in senders:
            for _ in range(self.config.out_degree):
                receiver = receivers[int(self._rng.integers(len(receivers)))]
                if receiver == sender and len(receivers) > 1:
                    receiver = receivers[(receivers.index(sender) + 1) % len(receivers)]
                records.append(
                    TransactionRecord(
                        tx_hash="0x" + self._rng.bytes(32).hex(),
                        from_addr=sender,
                        to_addr=receiver,
                        value=round(float(self._rng.lognormal(0.0, 1.0)), 6),
                        timestamp=int(self._rng.integers(t_start, t_end)),
                    )
                )
        return records


def network_graph(network: SyntheticNetwork) -> TemporalGraph:
    return build_graph(network.records)


def write_network(network: SyntheticNetwork, directory: Path) -> tuple[Path, Path]:
    """Write transactions.csv and labels.csv for the command line."""
    directory.mkdir(parents=True, exist_ok=True)
    transactions = write_transactions(network.records, directory / "transactions.csv")
    labels = directory / "labels.csv"
    with labels.open("w", encoding="utf-8") as f:
        f.write("address,label\n")
        for address in sorted(network.labels):
            f.write(f"{address},{network.labels[address].value}\n")
    return transactions, labels
