"""
Run manifests.

Each stage writes <workdir>/manifests/<stage>.json with the validated
configuration, the seeds it used and SHA-256 digests of its inputs and
outputs. Manifests carry no wall-clock data, so identical runs write
identical manifests.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from src import __version__
from src.schemas.config import PipelineConfig

logger = logging.getLogger(__name__)


class StageManifest(BaseModel):
    """What a stage read, what it wrote, and with which settings."""
    stage: str
    version: str = __version__
    config: dict[str, Any]
    seeds: dict[str, int] = Field(default_factory=dict)
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: dict[str, str] = Field(default_factory=dict)


def compute_checksum(path: Path) -> str:
    """sha256 of a file, or of every file under a directory in name order."""
    sha256 = hashlib.sha256()
    if path.is_dir():
        for child in sorted(p for p in path.rglob("*") if p.is_file()):
            sha256.update(child.relative_to(path).as_posix().encode("utf-8"))
            sha256.update(b"\0")
            sha256.update(child.read_bytes())
    else:
        sha256.update(path.read_bytes())
    return sha256.hexdigest()


def manifest_path(workdir: Path, stage: str) -> Path:
    return workdir / "manifests" / f"{stage}.json"


def write_manifest(
    workdir: Path,
    stage: str,
    config: PipelineConfig,
    seeds: dict[str, int] | None = None,
    inputs: dict[str, Path] | None = None,
    outputs: dict[str, Path] | None = None,
) -> Path:
    manifest = StageManifest(
        stage=stage,
        config=config.model_dump(mode="json"),
        seeds=seeds or {},
        inputs={name: compute_checksum(p) for name, p in sorted((inputs or {}).items())},
        outputs={name: compute_checksum(p) for name, p in sorted((outputs or {}).items())},
    )
    path = manifest_path(workdir, stage)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.debug("Wrote manifest %s", path)
    return path


def read_manifest(workdir: Path, stage: str) -> StageManifest:
    return StageManifest.model_validate_json(manifest_path(workdir, stage).read_text(encoding="utf-8"))
