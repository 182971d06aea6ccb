"""
Artifact persistence.

Graph: a directory holding nodes.tsv (index, external_id) and edges.tsv
(src, dst, weight, timestamp, key), rows in index / edge-id order.
Corpus: one walk per line, space-separated external ids.
Embeddings: first line "<count> <dimension>", then one line per node with
the external id and its components; floats are written with repr so a
load returns the identical matrix. An .npy sidecar is optional.
"""

import logging
import re
from pathlib import Path

import numpy as np
import pandas as pd

from src.errors import EdgeValidationError, GraphFormatError
from src.sgns.model import NodeEmbeddings
from src.tgraph.graph import TemporalGraph
from src.walker.walks import WalkCorpus

logger = logging.getLogger(__name__)

NODE_COLUMNS = ["index", "external_id"]
EDGE_COLUMNS = ["src", "dst", "weight", "timestamp", "key"]


# =============================================================================
# GRAPH
# =============================================================================

def save_graph(graph: TemporalGraph, path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    nodes = pd.DataFrame({"index": range(graph.num_nodes), "external_id": graph.external_ids})
    edges = pd.DataFrame.from_records(
        [(e.src, e.dst, repr(e.weight), e.timestamp, e.key or "") for e in graph.edges()],
        columns=EDGE_COLUMNS,
    )
    nodes.to_csv(path / "nodes.tsv", sep="\t", index=False)
    edges.to_csv(path / "edges.tsv", sep="\t", index=False)
    return path


def load_graph(path: Path) -> TemporalGraph:
    """
    Rebuild a finalized graph with the saved indices and edge ids.

    Raises:
        GraphFormatError: missing columns, unparsable, non-finite or
            out-of-range fields, duplicate external ids; line numbers count
            the header as line 1
    """
    nodes = _read_tsv(path / "nodes.tsv", NODE_COLUMNS)
    edges = _read_tsv(path / "edges.tsv", EDGE_COLUMNS)

    node_index = pd.to_numeric(nodes["index"], errors="coerce")
    expected = np.arange(len(nodes))
    bad = (
        node_index.isna().to_numpy()
        | (node_index.to_numpy() != expected)
        | (nodes["external_id"] == "").to_numpy()
    )
    _fail_first(path / "nodes.tsv", bad, "expected contiguous index and a non-empty external id")
    _fail_first(path / "nodes.tsv", nodes["external_id"].duplicated().to_numpy(), "duplicate external id")

    src = pd.to_numeric(edges["src"], errors="coerce")
    dst = pd.to_numeric(edges["dst"], errors="coerce")
    weight = pd.to_numeric(edges["weight"], errors="coerce")
    timestamp = pd.to_numeric(edges["timestamp"], errors="coerce")
    n = len(nodes)
    bad = (
        src.isna() | dst.isna() | weight.isna() | timestamp.isna()
        | (src < 0) | (src >= n) | (dst < 0) | (dst >= n)
        | ~np.isfinite(weight) | (weight < 0)
        | ~np.isfinite(timestamp) | (timestamp.round() != timestamp)
    ).to_numpy()
    _fail_first(path / "edges.tsv", bad, "expected src, dst, finite weight >= 0 and integer timestamp")

    graph = TemporalGraph()
    external = nodes["external_id"].tolist()
    for external_id in external:
        graph.add_node(external_id)
    # weights and timestamps from the raw text so repr-written floats load bit for bit
    rows = zip(src.astype(np.int64), dst.astype(np.int64), edges["weight"], edges["timestamp"], edges["key"])
    for line, (s, d, w, t, key) in enumerate(rows, start=2):
        stamp = int(t) if t.strip().isdigit() else int(float(t))
        try:
            graph.add_edge(external[s], external[d], float(w), stamp, key=key or None)
        except EdgeValidationError as e:
            raise GraphFormatError(str(path / "edges.tsv"), line, str(e)) from e
    logger.debug("Loaded graph from %s: %d nodes, %d edges", path, graph.num_nodes, graph.num_edges)
    return graph.finalize()


def _read_tsv(path: Path, columns: list[str]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, sep="\t", dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise GraphFormatError(str(path), 1, "empty file") from None
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        raise GraphFormatError(str(path), int(match.group(1)) if match else 0, str(e)) from e
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise GraphFormatError(str(path), 1, f"missing columns {missing}")
    return frame


def _fail_first(path: Path, bad: np.ndarray, reason: str) -> None:
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise GraphFormatError(str(path), row + 2, reason)


# =============================================================================
# CORPUS
# =============================================================================

def save_corpus(corpus: WalkCorpus, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for sequence in corpus.sequences():
            f.write(" ".join(sequence))
            f.write("\n")
    return path


def load_corpus(path: Path) -> WalkCorpus:
    """Read walks back; blank lines are invalid since every walk has a node."""
    sequences = []
    with path.open("r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            tokens = line.split()
            if not tokens:
                raise GraphFormatError(str(path), line_number, "empty walk")
            sequences.append(tokens)
    return WalkCorpus.from_sequences(sequences)


# =============================================================================
# EMBEDDINGS
# =============================================================================

def save_embeddings(embeddings: NodeEmbeddings, path: Path, binary_sidecar: bool = False) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        f.write(f"{len(embeddings)} {embeddings.dimension}\n")
        for node, row in zip(embeddings.ids, embeddings.vectors.tolist()):
            f.write(node)
            f.write(" ")
            f.write(" ".join(repr(float(x)) for x in row))
            f.write("\n")
    if binary_sidecar:
        np.save(path.with_suffix(".npy"), embeddings.vectors)
    return path


def load_embeddings(path: Path, use_sidecar: bool = False) -> NodeEmbeddings:
    """
    Read the text format; with use_sidecar the matrix comes from the .npy
    file and only ids are taken from the text.

    Raises:
        GraphFormatError: bad header, wrong component count, non-numeric
            component, or fewer rows than announced
    """
    with path.open("r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2 or not all(h.isdigit() for h in header):
            raise GraphFormatError(str(path), 1, "expected header '<count> <dimension>'")
        count, dimension = int(header[0]), int(header[1])
        ids: list[str] = []
        rows: list[list[float]] = []
        for line_number, line in enumerate(f, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != dimension + 1:
                raise GraphFormatError(
                    str(path), line_number, f"expected id and {dimension} components, got {len(parts) - 1}"
                )
            ids.append(parts[0])
            if not use_sidecar:
                try:
                    rows.append([float(x) for x in parts[1:]])
                except ValueError:
                    raise GraphFormatError(str(path), line_number, "non-numeric component") from None
    if len(ids) != count:
        raise GraphFormatError(str(path), len(ids) + 2, f"expected {count} rows, found {len(ids)}")

    if use_sidecar:
        vectors = np.load(path.with_suffix(".npy"))
    else:
        vectors = np.array(rows, dtype=np.float64).reshape(count, dimension)
    return NodeEmbeddings(ids=tuple(ids), vectors=vectors)
