"""
Errors

Custom exceptions for every stage of the engine. Each error also derives
from the closest builtin so callers can catch either the domain type or
the generic one, and keeps its context as attributes.
"""

from typing import Any


class TEdgeError(Exception):
    """Base class for all engine errors."""


# =============================================================================
# GRAPH
# =============================================================================

class NodeNotFoundError(TEdgeError, LookupError):
    """Raised when a node (account, center, vocabulary entry) is unknown."""
    def __init__(self, node: Any):
        super().__init__(f"Unknown node: {node!r}")
        self.node = node


class EdgeValidationError(TEdgeError, ValueError):
    """Raised when an edge carries an illegal weight or timestamp."""
    def __init__(self, field: str, value: Any):
        super().__init__(f"Invalid edge {field}: {value!r}")
        self.field = field
        self.value = value


class GraphStateError(TEdgeError, RuntimeError):
    """Raised when a graph is used in the wrong lifecycle state."""
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# =============================================================================
# WALKS AND TRAINING
# =============================================================================

class EmptyNeighborhoodError(TEdgeError, ValueError):
    """Raised when ranking or sampling is asked for an empty neighborhood."""
    def __init__(self) -> None:
        super().__init__("Temporal edge neighborhood is empty")


class DegenerateVocabularyError(TEdgeError, ValueError):
    """Raised when a Huffman tree cannot be built from the frequencies."""
    def __init__(self, size: int, reason: str = "at least 2 nodes required"):
        super().__init__(f"Degenerate vocabulary of {size} nodes: {reason}")
        self.size = size


class TrainingError(TEdgeError, RuntimeError):
    """Raised when skip-gram training cannot run."""
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class ModelStateError(TEdgeError, RuntimeError):
    """Raised when a model lacks the parameters an operation needs."""
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# =============================================================================
# EVALUATION
# =============================================================================

class SplitError(TEdgeError, ValueError):
    """Raised when a dataset cannot be partitioned as requested."""
    def __init__(self, message: str, class_counts: dict[int, int]):
        super().__init__(message)
        self.class_counts = class_counts


class ClassifierFitError(TEdgeError, ValueError):
    """Raised when the training set does not contain both classes."""
    def __init__(self, classes: list[int]):
        super().__init__(f"Classifier needs two classes, got {classes}")
        self.classes = classes


class MetricsValidationError(TEdgeError, ValueError):
    """Raised when label sequences cannot be compared."""
    def __init__(self, lengths: tuple[int, int]):
        super().__init__(f"Label sequences differ in length: {lengths[0]} != {lengths[1]}")
        self.lengths = lengths


class DatasetError(TEdgeError, LookupError):
    """Raised when labeled nodes have no embedding."""
    def __init__(self, missing: list[str]):
        preview = ", ".join(missing[:3])
        super().__init__(f"{len(missing)} labeled nodes have no embedding (e.g. {preview})")
        self.missing = missing


# =============================================================================
# INGESTION AND PERSISTENCE
# =============================================================================

class TransactionFormatError(TEdgeError, ValueError):
    """Raised when a transaction export cannot be read at all."""
    def __init__(self, source: str, reason: str, missing_columns: list[str] | None = None):
        super().__init__(f"{source}: {reason}")
        self.source = source
        self.missing_columns = missing_columns or []


class LabelFormatError(TEdgeError, ValueError):
    """Raised when a label file is malformed."""
    def __init__(self, line: int, reason: str):
        super().__init__(f"Label file line {line}: {reason}")
        self.line = line
        self.reason = reason


class GraphFormatError(TEdgeError, ValueError):
    """Raised when a persisted artifact is corrupt."""
    def __init__(self, path: str, line: int, reason: str):
        super().__init__(f"{path}, line {line}: {reason}")
        self.path = path
        self.line = line
        self.reason = reason


class NetworkDisabledError(TEdgeError, PermissionError):
    """Raised when a fetch is attempted without enabling network access."""
    def __init__(self) -> None:
        super().__init__("Network access is disabled; pass --network to enable explorer fetches")


class FetchError(TEdgeError, ConnectionError):
    """Raised when the explorer stays unreachable after all retries."""
    def __init__(self, address: str, attempts: int, reason: str):
        super().__init__(f"Fetch for {address} failed after {attempts} attempts: {reason}")
        self.address = address
        self.attempts = attempts


class PayloadFormatError(TEdgeError, ValueError):
    """Raised when the explorer answers with an unexpected payload."""
    def __init__(self, address: str, payload_excerpt: str):
        super().__init__(f"Malformed explorer payload for {address}: {payload_excerpt}")
        self.address = address
        self.payload_excerpt = payload_excerpt


# =============================================================================
# COMMAND LINE
# =============================================================================

class MissingArtifactError(TEdgeError, FileNotFoundError):
    """Raised when a stage runs before the stage that produces its input."""
    def __init__(self, artifact: str, producer: str):
        super().__init__(f"Missing {artifact}; run `tedge {producer}` first")
        self.artifact = artifact
        self.producer = producer


class UsageError(TEdgeError, ValueError):
    """Raised on invalid command-line flag combinations."""
