"""
Stage Telemetry

Structured, single-line JSON records for every pipeline stage so run time
and work counts (walks, pairs, nodes, edges) can be aggregated from logs.
"""

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any, Literal

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class StageRecord(BaseModel):
    """Timing and counts for one stage execution."""
    stage: str
    status: Literal["running", "success", "failed"] = "running"
    wall_time_s: float = 0.0
    details: dict[str, Any] = Field(default_factory=dict)

    def to_log_line(self) -> str:
        """Format as single-line JSON for log aggregation."""
        return self.model_dump_json()


def configure_logging(level: str = "INFO") -> None:
    """Install one stream handler on the root logger."""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)


@contextmanager
def stage_timer(stage: str, **details: Any) -> Iterator[StageRecord]:
    """
    Time a stage and log its record on exit.

    Usage:
        with stage_timer("walk", strategy="tbs") as record:
            corpus = generate_corpus(...)
            record.details["walks"] = len(corpus)
    """
    record = StageRecord(stage=stage, details=dict(details))
    start = time.perf_counter()
    try:
        yield record
    except Exception:
        record.status = "failed"
        record.wall_time_s = time.perf_counter() - start
        logger.error(record.to_log_line())
        raise
    record.status = "success"
    record.wall_time_s = time.perf_counter() - start
    logger.info(record.to_log_line())
