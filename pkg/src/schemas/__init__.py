"""
Shared data contracts.

Enums, annotated field types and the pydantic configuration models used
by every stage. Schemas are law: data that does not match fails fast.
"""

from src.schemas.base import NodeClass, SamplingKind, TrainingMode, ValueUnit
from src.schemas.config import (
    EvalSpec,
    IngestSettings,
    NetworkConfig,
    PathsConfig,
    PipelineConfig,
    SamplingStrategy,
    SplitSpec,
    SubgraphSettings,
    SubgraphSpec,
    TrainConfig,
    WalkConfig,
    load_pipeline_config,
)

__all__ = [
    "NodeClass",
    "SamplingKind",
    "TrainingMode",
    "ValueUnit",
    "EvalSpec",
    "IngestSettings",
    "NetworkConfig",
    "PathsConfig",
    "PipelineConfig",
    "SamplingStrategy",
    "SplitSpec",
    "SubgraphSettings",
    "SubgraphSpec",
    "TrainConfig",
    "WalkConfig",
    "load_pipeline_config",
]
