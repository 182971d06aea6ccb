"""
Configuration models.

Every tunable of the engine lives in a pydantic model here. Defaults are
K-in 1, K-out 3, walks of length 10, 4 walks per node, dimension 128,
window 4 and alpha 0.5. Every field can be overridden from a config file
or the command line.

Precedence: command-line flags > config file > defaults.
"""

import json
import logging

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.schemas.base import Alpha, SamplingKind, Seed, TrainingMode, TrainRatio, ValueUnit
from src.utils.validation import validate_schema

logger = logging.getLogger(__name__)


DEFAULT_RATIOS: tuple[float, ...] = (0.5, 0.6, 0.7, 0.8)
DEFAULT_ALPHAS: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(11))
DEFAULT_REGULARIZATION_GRID: tuple[float, ...] = (1e-4, 1e-3, 1e-2, 1e-1, 1.0)


# =============================================================================
# GRAPH SAMPLING
# =============================================================================

class SubgraphSettings(BaseModel):
    """Hop limits for K-order sampling around objective accounts."""
    model_config = ConfigDict(frozen=True)

    k_in: int = Field(default=1, ge=0, description="Hops against edge direction")
    k_out: int = Field(default=3, ge=0, description="Hops along edge direction")


class SubgraphSpec(SubgraphSettings):
    """A K-order sampling request: centers plus hop limits."""

    centers: frozenset[str] = Field(min_length=1, description="External ids of the centers")


# =============================================================================
# WALKS
# =============================================================================

class SamplingStrategy(BaseModel):
    """
    Edge-selection law for the walk generator.

    alpha only matters for TBS_WBS. flip_rankings inverts both rank
    orientations (latest edge / smallest amount favoured) for ablation.
    """
    model_config = ConfigDict(frozen=True)

    kind: SamplingKind = SamplingKind.TBS
    alpha: Alpha = 0.5
    flip_rankings: bool = False

    @property
    def name(self) -> str:
        if self.kind is SamplingKind.TBS_WBS:
            return f"{self.kind.value}@{self.alpha:g}"
        return self.kind.value


class WalkConfig(BaseModel):
    """Walk length, walks per node and the corpus seed."""
    model_config = ConfigDict(frozen=True)

    walk_length: int = Field(default=10, ge=1)
    walks_per_node: int = Field(default=4, ge=1)
    seed: Seed = 0


# =============================================================================
# TRAINING
# =============================================================================

class TrainConfig(BaseModel):
    """Skip-gram hyperparameters."""
    model_config = ConfigDict(frozen=True)

    dimension: int = Field(default=128, gt=0)
    window: int = Field(default=4, gt=0)
    epochs: int = Field(default=5, gt=0)
    initial_learning_rate: float = Field(default=0.025, gt=0.0)
    final_learning_rate: float = Field(default=1e-4, gt=0.0)
    seed: Seed = 0

    @model_validator(mode="after")
    def _decaying_rate(self) -> "TrainConfig":
        if self.final_learning_rate >= self.initial_learning_rate:
            raise ValueError("final_learning_rate must be below initial_learning_rate")
        return self


# =============================================================================
# EVALUATION
# =============================================================================

class SplitSpec(BaseModel):
    """Train/test partition request."""
    model_config = ConfigDict(frozen=True)

    train_ratio: TrainRatio
    seed: Seed = 0
    stratified: bool = True


class EvalSpec(BaseModel):
    """Strategies, ratios and seeds of an evaluation run."""
    model_config = ConfigDict(frozen=True)

    strategies: tuple[SamplingStrategy, ...] = (
        SamplingStrategy(kind=SamplingKind.STATIC_UNIFORM),
        SamplingStrategy(kind=SamplingKind.UNIFORM),
        SamplingStrategy(kind=SamplingKind.TBS),
        SamplingStrategy(kind=SamplingKind.WBS),
        SamplingStrategy(kind=SamplingKind.TBS_WBS),
    )
    ratios: tuple[TrainRatio, ...] = Field(default=DEFAULT_RATIOS, min_length=1)
    seeds: tuple[Seed, ...] = Field(default=(0, 1, 2, 3, 4), min_length=1)
    alphas: tuple[Alpha, ...] = Field(default=DEFAULT_ALPHAS, min_length=1)
    cv_folds: int = Field(default=5, ge=2)
    regularization_grid: tuple[float, ...] = Field(default=DEFAULT_REGULARIZATION_GRID, min_length=1)

    @field_validator("regularization_grid")
    @classmethod
    def _positive_grid(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if any(r <= 0 for r in v):
            raise ValueError("regularization strengths must be positive")
        return v


# =============================================================================
# INGESTION AND NETWORK
# =============================================================================

class IngestSettings(BaseModel):
    """Options for reading transaction exports."""
    model_config = ConfigDict(frozen=True)

    delimiter: str | None = Field(default=None, description="Auto-detected when omitted")
    value_unit: ValueUnit = ValueUnit.AUTO
    drop_zero_value: bool = False
    drop_failed: bool = False


class NetworkConfig(BaseModel):
    """Block-explorer client settings. Fetching is off unless enabled."""
    model_config = ConfigDict(frozen=True)

    enabled: bool = False
    endpoint: str = "https://api.etherscan.io/api"
    requests_per_second: float = Field(default=5.0, gt=0.0)
    page_size: int = Field(default=1000, ge=1, le=10000)
    max_retries: int = Field(default=4, ge=1)
    backoff_base_s: float = Field(default=1.0, ge=0.0)
    timeout_s: float = Field(default=30.0, gt=0.0)
    cache_dir: Path | None = None


class PathsConfig(BaseModel):
    """Input files and the artifact directory."""
    model_config = ConfigDict(frozen=True)

    transactions: Path | None = None
    labels: Path | None = None
    workdir: Path = Path("work")


class PipelineConfig(BaseModel):
    """Complete configuration of a pipeline run."""
    model_config = ConfigDict(frozen=True)

    paths: PathsConfig = PathsConfig()
    ingest: IngestSettings = IngestSettings()
    subgraph: SubgraphSettings = SubgraphSettings()
    walk: WalkConfig = WalkConfig()
    strategy: SamplingStrategy = SamplingStrategy()
    train: TrainConfig = TrainConfig()
    evaluation: EvalSpec = EvalSpec()
    network: NetworkConfig = NetworkConfig()
    workers: int = Field(default=1, ge=1)
    deterministic: bool = True

    @property
    def training_mode(self) -> TrainingMode:
        if self.deterministic or self.workers == 1:
            return TrainingMode.DETERMINISTIC
        return TrainingMode.THROUGHPUT


# =============================================================================
# LOADING
# =============================================================================

def read_config_file(path: Path) -> dict[str, Any]:
    """Read a JSON or TOML config file into a plain dict."""
    suffix = path.suffix.lower()
    if suffix == ".json":
        return json.loads(path.read_text(encoding="utf-8"))
    if suffix == ".toml":
        with path.open("rb") as f:
            return tomllib.load(f)
    raise ValueError(f"Unsupported config format: {path.suffix} (use .json or .toml)")


def deep_merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Merge overrides into base recursively; override values win."""
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_pipeline_config(
    path: Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> PipelineConfig:
    """
    Build the effective configuration.

    Args:
        path: Optional JSON/TOML config file
        overrides: Nested dict of command-line values (None entries ignored)

    Raises:
        SchemaValidationError: If the merged configuration is invalid
    """
    data: dict[str, Any] = {}
    if path is not None:
        data = read_config_file(path)
        logger.info("Loaded config file %s", path)
    if overrides:
        data = deep_merge(data, _drop_none(overrides))
    return validate_schema(PipelineConfig, data)


def _drop_none(values: dict[str, Any]) -> dict[str, Any]:
    cleaned: dict[str, Any] = {}
    for key, value in values.items():
        if isinstance(value, dict):
            nested = _drop_none(value)
            if nested:
                cleaned[key] = nested
        elif value is not None:
            cleaned[key] = value
    return cleaned
