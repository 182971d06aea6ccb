"""
Base types and constants used across all schemas.

This module defines shared enums and annotated types that keep the
graph, walk, training and evaluation layers consistent.
"""

from enum import Enum
from typing import Annotated

from pydantic import Field


# =============================================================================
# CONSTANTS
# =============================================================================

WEI_PER_ETHER = 10**18

# Integer values at or above this magnitude are taken to be wei.
WEI_DETECTION_THRESHOLD = 10**12


# =============================================================================
# ENUMS
# =============================================================================

class SamplingKind(str, Enum):
    """Edge-selection law used by the walk generator."""
    UNIFORM = "uniform"              # every time-valid edge equally likely
    TBS = "tbs"                      # Temporal biased sampling
    WBS = "wbs"                      # Weighted (amount) biased sampling
    TBS_WBS = "tbs_wbs"              # Geometric blend of TBS and WBS
    STATIC_UNIFORM = "static_uniform"  # uniform, ignores time

    @property
    def is_temporal(self) -> bool:
        return self is not SamplingKind.STATIC_UNIFORM


class NodeClass(str, Enum):
    """Class of a labeled account."""
    PHISHING = "phishing"
    NON_PHISHING = "non-phishing"

    @property
    def label(self) -> int:
        """Binary label, phishing is the positive class."""
        return 1 if self is NodeClass.PHISHING else 0


class ValueUnit(str, Enum):
    """Unit of the value column in a transaction export."""
    AUTO = "auto"
    WEI = "wei"
    ETHER = "ether"


class TrainingMode(str, Enum):
    """Skip-gram execution mode."""
    DETERMINISTIC = "deterministic"  # single worker, bitwise reproducible
    THROUGHPUT = "throughput"        # multi-worker, unsynchronized updates


# =============================================================================
# ANNOTATED TYPES
# =============================================================================

# 0x followed by 40 hex characters
Address = Annotated[str, Field(pattern=r"^0x[0-9a-fA-F]{40}$")]

# 0x followed by 64 hex characters
TxHash = Annotated[str, Field(pattern=r"^0x[0-9a-fA-F]{64}$")]

# Blend exponent between TBS and WBS
Alpha = Annotated[float, Field(ge=0.0, le=1.0)]

# Fraction of objective nodes used for training
TrainRatio = Annotated[float, Field(gt=0.0, lt=1.0)]

# Seeds feed numpy SeedSequence, which needs non-negative entropy
Seed = Annotated[int, Field(ge=0, lt=2**64)]
