"""
Transaction and label file parsing.

Transaction exports are delimiter-separated text with a header naming at
least From, To, Value and Timestamp (TxHash and isError optional, any
case). Valid rows become TransactionRecords; bad rows are reported, not
fatal.
"""

import io
import logging
import re
from collections.abc import Iterable, Sequence
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import ValidationError

from src.errors import LabelFormatError, TransactionFormatError
from src.ingestion.schemas import LabelEntry, ParseReport, RowError, TransactionRecord
from src.schemas.base import WEI_DETECTION_THRESHOLD, WEI_PER_ETHER, NodeClass, ValueUnit
from src.schemas.config import IngestSettings
from src.tgraph.graph import TemporalGraph
from src.utils.validation import describe_errors

logger = logging.getLogger(__name__)

# canonical name -> accepted header spellings (lowercase)
COLUMN_ALIASES: dict[str, tuple[str, ...]] = {
    "tx_hash": ("txhash", "hash", "tx_hash", "transaction_hash"),
    "from": ("from", "from_address", "from_addr"),
    "to": ("to", "to_address", "to_addr"),
    "value": ("value", "amount"),
    "timestamp": ("timestamp", "time_stamp", "block_timestamp", "unixtimestamp"),
    "is_error": ("iserror", "is_error"),
}
REQUIRED_COLUMNS = ("from", "to", "value", "timestamp")
OUTPUT_HEADER = ["TxHash", "From", "To", "Value", "Timestamp"]
LINE_COLUMN = "__line__"

LABEL_CLASSES: dict[str, NodeClass] = {
    "phishing": NodeClass.PHISHING,
    "1": NodeClass.PHISHING,
    "non-phishing": NodeClass.NON_PHISHING,
    "non_phishing": NodeClass.NON_PHISHING,
    "0": NodeClass.NON_PHISHING,
}

_INTEGER = re.compile(r"^\d+$")
_ADDRESS = re.compile(r"^0x[0-9a-fA-F]{40}$")


def detect_delimiter(header_line: str) -> str:
    """Tab when the header contains one, else comma."""
    return "\t" if "\t" in header_line else ","


def _read_table(
    text: str, source: str, delimiter: str | None, header: bool = True
) -> tuple[pd.DataFrame, list[RowError]]:
    """
    Read delimited text as strings, each row tagged with its file line in
    LINE_COLUMN. Rows with more fields than the first row come back as
    RowErrors; the rest of the file is still read.
    """
    rows = [(n, line) for n, line in enumerate(text.lstrip("\ufeff").splitlines(), start=1) if line.strip()]
    sep = delimiter or detect_delimiter(rows[0][1])
    ragged: list[RowError] = []

    def reject(fields: list[str]) -> None:
        ragged.append(RowError(line=int(fields[0]), reason=f"wrong field count ({len(fields) - 1} fields)"))
        return None

    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(f"{n}{sep}{line}" for n, line in rows)),
            sep=sep,
            dtype=str,
            keep_default_na=False,
            header=None,
            skipinitialspace=True,
            engine="python",
            on_bad_lines=reject,
        ).fillna("")
    except pd.errors.ParserError as e:
        raise TransactionFormatError(source, f"unreadable table: {e}") from e
    if header:
        names = [LINE_COLUMN, *(str(c) for c in frame.iloc[0, 1:])]
        frame = frame.iloc[1:].reset_index(drop=True)
        frame.columns = names
    else:
        frame = frame.rename(columns={0: LINE_COLUMN})
    return frame, ragged


def _column_map(columns: Sequence[str]) -> dict[str, str]:
    lookup = {str(c).strip().lower(): c for c in columns}
    mapping = {}
    for canonical, aliases in COLUMN_ALIASES.items():
        for alias in aliases:
            if alias in lookup:
                mapping[canonical] = lookup[alias]
                break
    return mapping


def detect_value_unit(values: Iterable[str]) -> ValueUnit:
    """
    Wei when every value is a plain integer and at least one reaches the
    detection threshold; Ether otherwise.
    """
    present = [v.strip() for v in values if v.strip()]
    if present and all(_INTEGER.match(v) for v in present):
        if any(int(v) >= WEI_DETECTION_THRESHOLD for v in present):
            return ValueUnit.WEI
    return ValueUnit.ETHER


def _to_ether(raw: str, unit: ValueUnit) -> float:
    amount = Decimal(raw.strip())
    if unit is ValueUnit.WEI:
        amount = amount / WEI_PER_ETHER
    return float(amount)


def parse_transactions(
    source: Path | str,
    settings: IngestSettings | None = None,
) -> ParseReport:
    """
    Parse a transaction export.

    Args:
        source: Path to the file, or the file's text
        settings: Delimiter, value unit and row filters

    Returns:
        ParseReport with valid records in file order and per-row errors

    Raises:
        TransactionFormatError: empty input or missing required columns
    """
    settings = settings or IngestSettings()
    if isinstance(source, Path):
        name, text = str(source), source.read_text(encoding="utf-8")
    else:
        name, text = "<text>", source
    if not text.strip():
        raise TransactionFormatError(name, "empty transaction file")

    frame, ragged = _read_table(text, name, settings.delimiter)
    columns = _column_map(frame.columns)
    missing = [c for c in REQUIRED_COLUMNS if c not in columns]
    if missing:
        raise TransactionFormatError(name, f"missing required columns {missing}", missing)

    unit = settings.value_unit
    if unit is ValueUnit.AUTO:
        unit = detect_value_unit(frame[columns["value"]])
    report = ParseReport(value_unit=unit, errors=ragged)
    seen_hashes: set[str] = set()

    for row in frame.to_dict(orient="records"):
        line = int(row[LINE_COLUMN])
        to_addr = row[columns["to"]].strip()
        if not to_addr:
            report.contract_creations += 1
            report.errors.append(RowError(line=line, reason="contract creation (empty To address)"))
            continue
        if settings.drop_failed and "is_error" in columns and row[columns["is_error"]].strip() == "1":
            report.dropped_failed += 1
            continue
        try:
            value = _to_ether(row[columns["value"]], unit)
        except InvalidOperation:
            report.errors.append(RowError(line=line, reason=f"invalid value {row[columns['value']]!r}"))
            continue
        try:
            record = TransactionRecord(
                tx_hash=row[columns["tx_hash"]] if "tx_hash" in columns else None,
                from_addr=row[columns["from"]],
                to_addr=to_addr,
                value=value,
                timestamp=row[columns["timestamp"]].strip(),
            )
        except ValidationError as e:
            report.errors.append(RowError(line=line, reason=describe_errors(e)))
            continue
        if record.tx_hash is not None:
            if record.tx_hash in seen_hashes:
                report.errors.append(RowError(line=line, reason=f"duplicate transaction hash {record.tx_hash}"))
                continue
            seen_hashes.add(record.tx_hash)
        if settings.drop_zero_value and record.value == 0.0:
            report.dropped_zero_value += 1
            continue
        report.records.append(record)

    report.errors.sort(key=lambda e: e.line)
    logger.info(
        "Parsed %s: %d records, %d rejected rows (values in %s)",
        name, report.accepted, len(report.errors), unit.value,
    )
    return report


def write_transactions(records: Sequence[TransactionRecord], path: Path) -> Path:
    """Serialise records with Ether values; parse_transactions reads them back unchanged."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        {
            "TxHash": [r.tx_hash or "" for r in records],
            "From": [r.from_addr for r in records],
            "To": [r.to_addr for r in records],
            "Value": [repr(float(r.value)) for r in records],
            "Timestamp": [r.timestamp for r in records],
        },
        columns=OUTPUT_HEADER,
    )
    frame.to_csv(path, index=False)
    return path


def load_labels(path: Path) -> dict[str, NodeClass]:
    """
    Read (address, class) pairs; a header row is optional.

    Raises:
        LabelFormatError: unknown class, bad address or duplicate address
    """
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        return {}
    frame, ragged = _read_table(text, str(path), None, header=False)
    if ragged:
        raise LabelFormatError(ragged[0].line, ragged[0].reason)
    if frame.shape[1] < 3:
        raise LabelFormatError(1, "expected two columns (address, class)")

    labels: dict[str, NodeClass] = {}
    for offset, (raw_line, raw_address, raw_class) in enumerate(frame.iloc[:, :3].itertuples(index=False)):
        line = int(raw_line)
        address, name = str(raw_address).strip(), str(raw_class).strip().lower()
        if offset == 0 and not _ADDRESS.match(address) and name not in LABEL_CLASSES:
            continue  # header
        if name not in LABEL_CLASSES:
            raise LabelFormatError(line, f"unknown class {raw_class!r}")
        try:
            entry = LabelEntry(address=address, node_class=LABEL_CLASSES[name])
        except ValidationError as e:
            raise LabelFormatError(line, describe_errors(e)) from e
        if entry.address in labels:
            raise LabelFormatError(line, f"duplicate address {entry.address}")
        labels[entry.address] = entry.node_class
    return labels


def build_graph(records: Iterable[TransactionRecord]) -> TemporalGraph:
    """One edge per record, keyed by transaction hash; returns a finalized graph."""
    graph = TemporalGraph()
    for record in records:
        graph.add_edge(record.from_addr, record.to_addr, record.value, record.timestamp, key=record.tx_hash)
    return graph.finalize()


def sample_objective_nodes(
    graph: TemporalGraph,
    phishing: Iterable[str],
    seed: int = 0,
) -> dict[str, NodeClass]:
    """
    Pair labeled phishing accounts with as many random unlabeled accounts,
    labeled non-phishing.
    """
    positives = sorted({a for a in phishing if graph.has_node(a)})
    pool = sorted(set(graph.external_ids) - set(positives))
    count = min(len(positives), len(pool))
    if count < len(positives):
        logger.warning("Only %d unlabeled accounts for %d phishing accounts", len(pool), len(positives))
    rng = np.random.default_rng(seed)
    negatives = [pool[i] for i in sorted(rng.choice(len(pool), size=count, replace=False))]
    objective = {a: NodeClass.PHISHING for a in positives}
    objective.update({a: NodeClass.NON_PHISHING for a in negatives})
    return objective
