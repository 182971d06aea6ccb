"""Transaction ingestion, explorer acquisition and artifact persistence."""

from src.ingestion.explorer import EtherscanClient, TokenBucket, fetch_account_transactions
from src.ingestion.parser import (
    build_graph,
    load_labels,
    parse_transactions,
    sample_objective_nodes,
    write_transactions,
)
from src.ingestion.schemas import LabelEntry, ParseReport, RowError, TransactionRecord
from src.ingestion.storage import (
    load_corpus,
    load_embeddings,
    load_graph,
    save_corpus,
    save_embeddings,
    save_graph,
)

__all__ = [
    "EtherscanClient",
    "LabelEntry",
    "ParseReport",
    "RowError",
    "TokenBucket",
    "TransactionRecord",
    "build_graph",
    "fetch_account_transactions",
    "load_corpus",
    "load_embeddings",
    "load_graph",
    "load_labels",
    "parse_transactions",
    "sample_objective_nodes",
    "save_corpus",
    "save_embeddings",
    "save_graph",
    "write_transactions",
]
