"""
Unit tests for validation helpers.

Tests verify:
1. validate_schema returns models for valid data
2. Failures raise SchemaValidationError with pydantic's error list
3. describe_errors renders one compact line
"""

import pytest
from pydantic import ValidationError

from src.errors import TEdgeError
from src.ingestion.schemas import TransactionRecord
from src.schemas.config import WalkConfig
from src.utils.validation import SchemaValidationError, describe_errors, validate_schema

ADDRESS_A = "0x" + "a" * 40
ADDRESS_B = "0x" + "b" * 40


class TestValidateSchema:
    """Tests for validate_schema."""

    def test_valid_data_returns_model(self) -> None:
        result = validate_schema(WalkConfig, {"walk_length": 5})
        assert isinstance(result, WalkConfig)
        assert result.walk_length == 5

    def test_invalid_data_raises(self) -> None:
        with pytest.raises(SchemaValidationError) as exc:
            validate_schema(WalkConfig, {"walk_length": 0, "walks_per_node": "many"})
        error = exc.value
        assert error.schema_name == "WalkConfig"
        assert {e["loc"][0] for e in error.errors} == {"walk_length", "walks_per_node"}
        assert "walk_length" in str(error)

    def test_is_an_engine_error(self) -> None:
        with pytest.raises(TEdgeError):
            validate_schema(WalkConfig, {"seed": -5})


class TestTransactionRecord:
    """Tests for the record schema used by the parser and the explorer."""

    def test_addresses_lowercased(self) -> None:
        record = TransactionRecord(from_addr=ADDRESS_A.upper().replace("0X", "0x"), to_addr=ADDRESS_B,
                                   value=1.0, timestamp=5)
        assert record.from_addr == ADDRESS_A

    def test_blank_hash_becomes_none(self) -> None:
        record = TransactionRecord(tx_hash="  ", from_addr=ADDRESS_A, to_addr=ADDRESS_B, value=0.0, timestamp=0)
        assert record.tx_hash is None

    @pytest.mark.parametrize(
        "changes",
        [{"value": -1.0}, {"value": float("nan")}, {"timestamp": -1}, {"to_addr": "0x12"}],
    )
    def test_rejects(self, changes: dict[str, object]) -> None:
        data = {"from_addr": ADDRESS_A, "to_addr": ADDRESS_B, "value": 1.0, "timestamp": 1, **changes}
        with pytest.raises(ValidationError):
            TransactionRecord(**data)


class TestDescribeErrors:
    """Tests for the compact error rendering."""

    def test_one_part_per_error(self) -> None:
        try:
            WalkConfig(walk_length=0, walks_per_node=0)
        except ValidationError as e:
            rendered = describe_errors(e)
        assert rendered.count(";") == 1
        assert rendered.startswith("walk_length: ")
