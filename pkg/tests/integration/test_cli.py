"""
End-to-end tests of the tedge command line on the bundled fixture.

Tests verify:
1. The pipeline writes every artifact and exits 0
2. Identical invocations write identical bytes
3. Subcommands run one by one match the pipeline command
4. Missing artifacts exit 1, usage errors exit 2
5. Explorer acquisition through a mocked transport
"""

import json
from pathlib import Path

import httpx
import pytest

from src.cli import main
from src.cli.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from src.cli.stages import run_ingest
from src.ingestion import load_graph
from src.schemas.config import NetworkConfig, PathsConfig, PipelineConfig

SMALL = ["--dimension", "16", "--epochs", "1", "--ratios", "0.5", "--walks-per-node", "2", "--window", "2"]
STAGES = ["ingest", "subgraph", "walk", "embed", "classify"]


def inputs(transactions: Path, labels: Path, workdir: Path) -> list[str]:
    return ["--transactions", str(transactions), "--labels", str(labels), "--workdir", str(workdir)]


def snapshot(workdir: Path) -> dict[str, bytes]:
    return {
        p.relative_to(workdir).as_posix(): p.read_bytes()
        for p in sorted(workdir.rglob("*"))
        if p.is_file()
    }


class TestPipelineCommand:
    """Tests for the full pipeline run."""

    def test_writes_all_artifacts(self, fixture_transactions: Path, fixture_labels: Path, tmp_path: Path) -> None:
        workdir = tmp_path / "work"
        code = main(["pipeline", *inputs(fixture_transactions, fixture_labels, workdir), *SMALL])
        assert code == EXIT_OK
        for name in ("graph/edges.tsv", "labels.csv", "subgraph/nodes.tsv", "corpus.txt", "embeddings.txt",
                     "metrics.tsv", "metrics_summary.tsv"):
            assert (workdir / name).exists(), name
        for stage in STAGES:
            manifest = json.loads((workdir / "manifests" / f"{stage}.json").read_text(encoding="utf-8"))
            assert manifest["stage"] == stage
            assert manifest["seeds"] == {"walk": 0, "train": 0}

    def test_embedding_header(self, fixture_transactions: Path, fixture_labels: Path, tmp_path: Path) -> None:
        workdir = tmp_path / "work"
        main(["pipeline", *inputs(fixture_transactions, fixture_labels, workdir), *SMALL])
        count, dimension = (workdir / "embeddings.txt").read_text(encoding="utf-8").split("\n", 1)[0].split()
        assert dimension == "16"
        assert int(count) == load_graph(workdir / "subgraph").num_nodes

    def test_rerun_is_byte_identical(self, fixture_transactions: Path, fixture_labels: Path, tmp_path: Path) -> None:
        workdir = tmp_path / "work"
        argv = ["pipeline", *inputs(fixture_transactions, fixture_labels, workdir), *SMALL, "--seed", "3"]
        assert main(argv) == EXIT_OK
        first = snapshot(workdir)
        assert main(argv) == EXIT_OK
        assert snapshot(workdir) == first

    def test_subcommands_match_pipeline(self, fixture_transactions: Path, fixture_labels: Path, tmp_path: Path) -> None:
        piped, stepped = tmp_path / "piped", tmp_path / "stepped"
        assert main(["pipeline", *inputs(fixture_transactions, fixture_labels, piped), *SMALL]) == EXIT_OK
        for stage in STAGES:
            assert main([stage, *inputs(fixture_transactions, fixture_labels, stepped), *SMALL]) == EXIT_OK
        for name in ("corpus.txt", "embeddings.txt", "metrics.tsv"):
            assert (piped / name).read_bytes() == (stepped / name).read_bytes(), name


class TestAnalysisCommands:
    """Tests for sweep and compare on a prepared workdir."""

    @pytest.fixture
    def prepared(self, fixture_transactions: Path, fixture_labels: Path, tmp_path: Path) -> Path:
        workdir = tmp_path / "work"
        for stage in ("ingest", "subgraph"):
            assert main([stage, *inputs(fixture_transactions, fixture_labels, workdir)]) == EXIT_OK
        return workdir

    def test_sweep(self, prepared: Path) -> None:
        code = main(["sweep", "--workdir", str(prepared), *SMALL, "--alphas", "0,1", "--seeds", "0"])
        assert code == EXIT_OK
        assert (prepared / "sweep_summary.tsv").exists()
        assert (prepared / "manifests" / "sweep.json").exists()

    def test_compare_writes_baseline_table(self, prepared: Path) -> None:
        assert main(["compare", "--workdir", str(prepared), *SMALL, "--seeds", "0"]) == EXIT_OK
        assert (prepared / "compare.tsv").exists()
        assert (prepared / "compare_baseline.tsv").exists()


class TestFailures:
    """Tests for exit codes and messages."""

    def test_embed_without_corpus(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["embed", "--workdir", str(tmp_path)]) == EXIT_FAILURE
        assert "tedge walk" in capsys.readouterr().err

    def test_classify_without_embeddings(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["classify", "--workdir", str(tmp_path)]) == EXIT_FAILURE
        assert "tedge embed" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "argv",
        [
            ["frobnicate"],
            ["walk", "--strategy", "tbs", "--alpha", "0.3"],
            ["embed", "--throughput"],
            ["ingest", "--fetch", "0x" + "1" * 40],
            ["walk", "--walk-length", "0"],
            ["classify", "--ratios", "half"],
            ["pipeline"],
            ["walk", "--log-level", "LOUD"],
        ],
    )
    def test_usage_errors(self, argv: list[str], tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        assert main([*argv, "--workdir", str(tmp_path)]) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("tedge: usage error")

    def test_log_level_is_case_insensitive(self, tmp_path: Path) -> None:
        assert main(["classify", "--workdir", str(tmp_path), "--log-level", "debug"]) == EXIT_FAILURE

    def test_malformed_labels(self, fixture_transactions: Path, tmp_path: Path) -> None:
        labels = tmp_path / "labels.csv"
        labels.write_text(f"{'0x' + 'a' * 40},scam\n", encoding="utf-8")
        code = main(["ingest", "--transactions", str(fixture_transactions), "--labels", str(labels),
                     "--workdir", str(tmp_path / "work")])
        assert code == EXIT_FAILURE


class TestFetchedIngest:
    """Tests for explorer-backed ingestion."""

    def test_crawl_writes_transactions_and_graph(self, tmp_path: Path) -> None:
        center, peer = "0x" + "1" * 40, "0x" + "2" * 40
        rows = [
            {"hash": "0x" + "a" * 64, "from": center, "to": peer, "value": str(10**18), "timeStamp": "10"},
            {"hash": "0x" + "b" * 64, "from": peer, "to": center, "value": str(2 * 10**18), "timeStamp": "20"},
        ]

        def explorer(request: httpx.Request) -> httpx.Response:
            return httpx.Response(200, json={"status": "1", "result": rows})

        config = PipelineConfig(
            paths=PathsConfig(workdir=tmp_path),
            network=NetworkConfig(enabled=True, requests_per_second=100.0),
        )
        graph_path = run_ingest(config, fetch=[center], transport=httpx.MockTransport(explorer))
        graph = load_graph(graph_path)
        assert graph.num_edges == 2
        assert (tmp_path / "transactions.csv").exists()
        assert (tmp_path / "manifests" / "ingest.json").exists()
