"""
Synthetic Network Schemas

Configuration and output of the planted transaction-network generator.
Class labels are encoded only in transaction timing, so the network is a
controlled fixture for comparing temporal and static walks.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.ingestion.schemas import TransactionRecord
from src.schemas.base import NodeClass, Seed


class AccountRole(str, Enum):
    """Role of an account in the planted network."""
    POSITIVE = "positive"  # phishing: dispatches before the middle window
    NEGATIVE = "negative"  # dispatches after the middle window
    BRIDGE = "bridge"      # forwards to hubs inside the middle window
    HUB = "hub"            # trades with other hubs late
    VICTIM = "victim"      # pays objective accounts at random times


class SyntheticNetworkConfig(BaseModel):
    """Account counts, degrees and timing of the planted network."""
    model_config = ConfigDict(frozen=True)

    positives: int = Field(default=300, ge=2)
    negatives: int = Field(default=300, ge=2)
    bridges: int = Field(default=200, ge=1)
    hubs: int = Field(default=600, ge=2)
    victims: int = Field(default=600, ge=0)
    out_degree: int = Field(default=3, ge=1, description="Transactions sent per account")
    label_noise: float = Field(default=0.0, ge=0.0, le=0.5, description="Fraction of flipped labels")
    start_time: int = Field(default=1_500_000_000, ge=0)
    window_s: int = Field(default=30 * 24 * 3600, gt=0, description="Length of each time window")
    seed: Seed = 0

    @property
    def total_accounts(self) -> int:
        return self.positives + self.negatives + self.bridges + self.hubs + self.victims


class SyntheticNetwork(BaseModel):
    """Generated records with ground-truth labels and roles."""
    config: SyntheticNetworkConfig
    records: list[TransactionRecord]
    labels: dict[str, NodeClass]
    roles: dict[str, AccountRole]
