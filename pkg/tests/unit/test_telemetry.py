"""
Unit tests for stage telemetry and run manifests.

Tests verify:
1. stage_timer records status, timing and details
2. Manifests hash inputs and outputs and carry no wall-clock data
"""

import json
import logging
from pathlib import Path

import pytest

from src.cli.manifest import compute_checksum, read_manifest, write_manifest
from src.schemas.config import PipelineConfig
from src.utils.telemetry import stage_timer


class TestStageTimer:
    """Tests for the timing context manager."""

    def test_success_record(self, caplog: pytest.LogCaptureFixture) -> None:
        with caplog.at_level(logging.INFO), stage_timer("walk", strategy="tbs") as record:
            record.details["walks"] = 12
        assert record.status == "success"
        assert record.wall_time_s >= 0.0
        logged = json.loads(caplog.records[-1].getMessage())
        assert logged["stage"] == "walk"
        assert logged["details"] == {"strategy": "tbs", "walks": 12}

    def test_failure_is_logged_and_reraised(self, caplog: pytest.LogCaptureFixture) -> None:
        with pytest.raises(RuntimeError), stage_timer("train") as record:
            raise RuntimeError("boom")
        assert record.status == "failed"
        assert caplog.records[-1].levelno == logging.ERROR


class TestManifest:
    """Tests for manifest files."""

    def test_checksums_and_round_trip(self, tmp_path: Path) -> None:
        source = tmp_path / "corpus.txt"
        source.write_text("a b c\n", encoding="utf-8")
        out_dir = tmp_path / "graph"
        out_dir.mkdir()
        (out_dir / "nodes.tsv").write_text("index\texternal_id\n", encoding="utf-8")

        path = write_manifest(tmp_path, "embed", PipelineConfig(), {"walk": 1}, {"corpus": source}, {"graph": out_dir})
        assert path == tmp_path / "manifests" / "embed.json"
        manifest = read_manifest(tmp_path, "embed")
        assert manifest.inputs["corpus"] == compute_checksum(source)
        assert manifest.outputs["graph"] == compute_checksum(out_dir)
        assert manifest.seeds == {"walk": 1}

    def test_identical_runs_identical_bytes(self, tmp_path: Path) -> None:
        first = write_manifest(tmp_path, "ingest", PipelineConfig()).read_bytes()
        second = write_manifest(tmp_path, "ingest", PipelineConfig()).read_bytes()
        assert first == second

    def test_directory_checksum_sees_renames(self, tmp_path: Path) -> None:
        a, b = tmp_path / "a", tmp_path / "b"
        a.mkdir()
        b.mkdir()
        (a / "x.tsv").write_text("1", encoding="utf-8")
        (b / "y.tsv").write_text("1", encoding="utf-8")
        assert compute_checksum(a) != compute_checksum(b)
