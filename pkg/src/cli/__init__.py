"""
Command line and pipeline stages.

Every subcommand runs one stage over the working directory and records a
manifest; `tedge pipeline` chains ingest, subgraph, walk, embed and classify.
"""

from src.cli.main import main

__all__ = ["main"]
