"""
Ingestion data contracts.

Transaction rows and label entries are validated here before they reach
the graph. Addresses are normalised to lowercase.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.schemas.base import Address, NodeClass, TxHash, ValueUnit


class TransactionRecord(BaseModel):
    """One transaction: (From, To, Value in Ether, Timestamp)."""
    model_config = ConfigDict(frozen=True)

    tx_hash: TxHash | None = None
    from_addr: Address
    to_addr: Address
    value: float = Field(ge=0.0, allow_inf_nan=False)
    timestamp: int = Field(ge=0, description="Unix seconds")

    @field_validator("from_addr", "to_addr", "tx_hash", mode="before")
    @classmethod
    def _lowercase(cls, v: Any) -> Any:
        if isinstance(v, str):
            v = v.strip().lower()
            return v or None
        return v


class LabelEntry(BaseModel):
    """One row of a label file."""
    model_config = ConfigDict(frozen=True)

    address: Address
    node_class: NodeClass

    @field_validator("address", mode="before")
    @classmethod
    def _lowercase(cls, v: Any) -> Any:
        return v.strip().lower() if isinstance(v, str) else v


class AccountQuery(BaseModel):
    """An account requested from the explorer."""
    model_config = ConfigDict(frozen=True)

    address: Address

    @field_validator("address", mode="before")
    @classmethod
    def _lowercase(cls, v: Any) -> Any:
        return v.strip().lower() if isinstance(v, str) else v


class RowError(BaseModel):
    """A rejected input row; line numbers count the header as line 1."""
    line: int
    reason: str


class ParseReport(BaseModel):
    """Accepted records plus everything that was rejected or filtered."""
    records: list[TransactionRecord] = Field(default_factory=list)
    errors: list[RowError] = Field(default_factory=list)
    value_unit: ValueUnit = ValueUnit.ETHER
    contract_creations: int = 0
    dropped_zero_value: int = 0
    dropped_failed: int = 0

    @property
    def accepted(self) -> int:
        return len(self.records)
