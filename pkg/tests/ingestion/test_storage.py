"""
Tests for artifact persistence.

Tests verify:
1. Graphs reload with identical indices, edge ids and values
2. Corpora and embeddings reload exactly
3. Corrupt files (bad fields, non-finite values, duplicate ids) raise
   GraphFormatError with the offending line
"""

from pathlib import Path

import numpy as np
import pytest

from src.errors import GraphFormatError
from src.ingestion import load_corpus, load_embeddings, load_graph, save_corpus, save_embeddings, save_graph
from src.sgns import NodeEmbeddings
from src.tgraph import TemporalGraph
from src.walker.walks import Walk, WalkCorpus


def sample_graph() -> TemporalGraph:
    graph = TemporalGraph()
    graph.add_edge("a", "b", 0.1, 5, key="h1")
    graph.add_edge("b", "c", 1 / 3, 2)
    graph.add_edge("a", "c", 2.5, 5, key="h3")
    graph.add_node("lonely")
    return graph.finalize()


class TestGraphStorage:
    """Tests for graph directories."""

    def test_round_trip(self, tmp_path: Path) -> None:
        graph = sample_graph()
        loaded = load_graph(save_graph(graph, tmp_path / "graph"))
        assert loaded.is_finalized
        assert loaded.external_ids == graph.external_ids
        assert list(loaded.edges()) == list(graph.edges())

    def test_missing_column(self, tmp_path: Path) -> None:
        path = save_graph(sample_graph(), tmp_path / "graph")
        (path / "edges.tsv").write_text("src\tdst\tweight\ttimestamp\n0\t1\t1.0\t3\n", encoding="utf-8")
        with pytest.raises(GraphFormatError) as exc:
            load_graph(path)
        assert exc.value.line == 1

    @pytest.mark.parametrize(
        "bad_row",
        [
            "0\t9\t1.0\t3\t",
            "0\t1\t-1.0\t3\t",
            "0\t1\tx\t3\t",
            "0\t1\t1.0\t3.5\t",
            "0\t1\tinf\t3\t",
            "0\t1\tnan\t3\t",
            "0\t1\t1.0\tinf\t",
        ],
    )
    def test_bad_edge_row(self, tmp_path: Path, bad_row: str) -> None:
        path = save_graph(sample_graph(), tmp_path / "graph")
        lines = (path / "edges.tsv").read_text(encoding="utf-8").splitlines()
        lines.insert(2, bad_row)
        (path / "edges.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(GraphFormatError) as exc:
            load_graph(path)
        assert exc.value.line == 3

    def test_non_contiguous_node_index(self, tmp_path: Path) -> None:
        path = save_graph(sample_graph(), tmp_path / "graph")
        (path / "nodes.tsv").write_text("index\texternal_id\n0\ta\n2\tb\n", encoding="utf-8")
        with pytest.raises(GraphFormatError) as exc:
            load_graph(path)
        assert exc.value.line == 3

    def test_duplicate_external_id(self, tmp_path: Path) -> None:
        path = save_graph(sample_graph(), tmp_path / "graph")
        (path / "nodes.tsv").write_text("index\texternal_id\n0\ta\n1\tb\n2\ta\n3\tc\n", encoding="utf-8")
        with pytest.raises(GraphFormatError) as exc:
            load_graph(path)
        assert exc.value.line == 4
        assert "duplicate" in str(exc.value)

    def test_empty_file(self, tmp_path: Path) -> None:
        path = save_graph(sample_graph(), tmp_path / "graph")
        (path / "nodes.tsv").write_text("", encoding="utf-8")
        with pytest.raises(GraphFormatError):
            load_graph(path)


class TestCorpusStorage:
    """Tests for walk corpora."""

    def test_round_trip_keeps_sequences_and_vocabulary(self, tmp_path: Path) -> None:
        corpus = WalkCorpus([Walk(nodes=(2, 0, 1)), Walk(nodes=(1,))], ["x", "y", "z"])
        loaded = load_corpus(save_corpus(corpus, tmp_path / "corpus.txt"))
        assert loaded.sequences() == [["z", "x", "y"], ["y"]]
        assert loaded.vocabulary() == corpus.vocabulary()

    def test_blank_line(self, tmp_path: Path) -> None:
        path = tmp_path / "corpus.txt"
        path.write_text("a b\n\nc\n", encoding="utf-8")
        with pytest.raises(GraphFormatError) as exc:
            load_corpus(path)
        assert exc.value.line == 2


class TestEmbeddingStorage:
    """Tests for embedding matrices."""

    def _embeddings(self) -> NodeEmbeddings:
        rng = np.random.default_rng(0)
        return NodeEmbeddings(ids=("a", "b", "c"), vectors=rng.normal(size=(3, 4)))

    def test_text_round_trip_is_exact(self, tmp_path: Path) -> None:
        embeddings = self._embeddings()
        loaded = load_embeddings(save_embeddings(embeddings, tmp_path / "emb.txt"))
        assert loaded.ids == embeddings.ids
        assert np.array_equal(loaded.vectors, embeddings.vectors)

    def test_header(self, tmp_path: Path) -> None:
        path = save_embeddings(self._embeddings(), tmp_path / "emb.txt")
        assert path.read_text(encoding="utf-8").splitlines()[0] == "3 4"

    def test_sidecar(self, tmp_path: Path) -> None:
        embeddings = self._embeddings()
        path = save_embeddings(embeddings, tmp_path / "emb.txt", binary_sidecar=True)
        assert path.with_suffix(".npy").exists()
        assert np.array_equal(load_embeddings(path, use_sidecar=True).vectors, embeddings.vectors)

    def test_wrong_component_count(self, tmp_path: Path) -> None:
        path = tmp_path / "emb.txt"
        path.write_text("2 2\na 1.0 2.0\nb 1.0\n", encoding="utf-8")
        with pytest.raises(GraphFormatError) as exc:
            load_embeddings(path)
        assert exc.value.line == 3

    def test_truncated_file(self, tmp_path: Path) -> None:
        path = tmp_path / "emb.txt"
        path.write_text("3 1\na 1.0\n", encoding="utf-8")
        with pytest.raises(GraphFormatError):
            load_embeddings(path)

    def test_bad_header(self, tmp_path: Path) -> None:
        path = tmp_path / "emb.txt"
        path.write_text("a 1.0\n", encoding="utf-8")
        with pytest.raises(GraphFormatError) as exc:
            load_embeddings(path)
        assert exc.value.line == 1
