"""
Validation helpers.

Configuration files, transaction rows and explorer payloads all pass
through pydantic schemas. If data does not match, fail fast with an error
that names the schema and carries pydantic's error list.
"""

import logging
from typing import Any, TypeVar

from pydantic import BaseModel, ValidationError

from src.errors import TEdgeError

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=BaseModel)


class SchemaValidationError(TEdgeError, ValueError):
    """Raised when schema validation fails."""

    def __init__(self, message: str, schema_name: str, errors: list[dict[str, Any]]) -> None:
        super().__init__(message)
        self.schema_name = schema_name
        self.errors = errors


def validate_schema(schema_class: type[T], data: Any) -> T:
    """
    Validate data against a pydantic schema.

    Args:
        schema_class: The model class to validate against
        data: A mapping (or model instance) to validate

    Returns:
        Validated model instance

    Raises:
        SchemaValidationError: If validation fails
    """
    try:
        return schema_class.model_validate(data)
    except ValidationError as e:
        logger.error("Schema validation failed for %s: %s", schema_class.__name__, e.errors())
        raise SchemaValidationError(
            message=f"Schema validation failed for {schema_class.__name__}: {describe_errors(e)}",
            schema_name=schema_class.__name__,
            errors=e.errors(),
        ) from e


def describe_errors(error: ValidationError) -> str:
    """Compact one-line rendering of a pydantic ValidationError."""
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item.get("loc", ())) or "<root>"
        parts.append(f"{location}: {item.get('msg', 'invalid')}")
    return "; ".join(parts)
