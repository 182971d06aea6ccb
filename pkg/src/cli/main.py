"""
tedge command line.

    tedge ingest   --transactions tx.csv --labels labels.csv
    tedge subgraph
    tedge walk     --strategy tbs_wbs --alpha 0.5
    tedge embed
    tedge classify
    tedge sweep    --alphas 0,0.5,1
    tedge compare
    tedge pipeline --transactions tx.csv --labels labels.csv

Exit codes: 0 success, 1 stage failure, 2 usage error.
"""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn

from dotenv import load_dotenv

from src.cli import stages
from src.errors import TEdgeError, UsageError
from src.schemas.base import SamplingKind, ValueUnit
from src.schemas.config import PipelineConfig, load_pipeline_config
from src.utils.telemetry import LOG_LEVELS, configure_logging
from src.utils.validation import SchemaValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main() owns exit codes."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common_options() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON or TOML config file")
    common.add_argument("--workdir", type=Path, help="artifact directory")
    common.add_argument("--transactions", type=Path, help="transaction export (CSV/TSV)")
    common.add_argument("--labels", type=Path, help="objective account labels")
    common.add_argument("--log-level", default="INFO", type=str.upper, choices=LOG_LEVELS)
    common.add_argument("--workers", type=int)

    graph = common.add_argument_group("graph and walks")
    graph.add_argument("--k-in", type=int)
    graph.add_argument("--k-out", type=int)
    graph.add_argument("--walk-length", type=int)
    graph.add_argument("--walks-per-node", type=int)
    graph.add_argument("--seed", type=int, help="walk and training seed")

    strategy = common.add_argument_group("sampling strategy")
    strategy.add_argument("--strategy", choices=[k.value for k in SamplingKind])
    strategy.add_argument("--alpha", type=float, help="TBS/WBS blend, tbs_wbs only")
    strategy.add_argument("--flip-rankings", action="store_true", default=None)

    training = common.add_argument_group("training")
    training.add_argument("--dimension", type=int)
    training.add_argument("--window", type=int)
    training.add_argument("--epochs", type=int)
    training.add_argument(
        "--throughput", action="store_true", help="multi-worker skip-gram (not bitwise reproducible)"
    )

    evaluation = common.add_argument_group("evaluation")
    evaluation.add_argument("--ratios", type=_floats)
    evaluation.add_argument("--seeds", type=_ints)
    evaluation.add_argument("--alphas", type=_floats)

    ingest = common.add_argument_group("ingestion")
    ingest.add_argument("--network", action="store_true", default=None, help="allow explorer requests")
    ingest.add_argument("--value-unit", choices=[u.value for u in ValueUnit])
    ingest.add_argument("--drop-zero-value", action="store_true", default=None)
    ingest.add_argument("--drop-failed", action="store_true", default=None)
    ingest.add_argument("--delimiter")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _ArgumentParser(prog="tedge", description="Temporal transaction-graph embedding pipeline")
    subcommands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    subcommands.add_parser("ingest", parents=[common], help="build the transaction graph").add_argument(
        "--fetch", nargs="+", metavar="ADDRESS", default=(), help="crawl these accounts through the explorer"
    )
    subcommands.add_parser("subgraph", parents=[common], help="extract the K-order objective network")
    subcommands.add_parser("walk", parents=[common], help="generate the walk corpus")
    subcommands.add_parser("embed", parents=[common], help="train node embeddings")
    subcommands.add_parser("classify", parents=[common], help="phishing classification metrics")
    subcommands.add_parser("sweep", parents=[common], help="alpha sweep of the blended strategy")
    subcommands.add_parser("compare", parents=[common], help="compare sampling strategies")
    subcommands.add_parser("pipeline", parents=[common], help="ingest through classify").add_argument(
        "--fetch", nargs="+", metavar="ADDRESS", default=()
    )
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Nested config overrides from flags; unset flags stay None and are dropped."""
    seed = args.seed
    return {
        "paths": {"workdir": args.workdir, "transactions": args.transactions, "labels": args.labels},
        "ingest": {
            "delimiter": args.delimiter,
            "value_unit": args.value_unit,
            "drop_zero_value": args.drop_zero_value,
            "drop_failed": args.drop_failed,
        },
        "subgraph": {"k_in": args.k_in, "k_out": args.k_out},
        "walk": {"walk_length": args.walk_length, "walks_per_node": args.walks_per_node, "seed": seed},
        "strategy": {"kind": args.strategy, "alpha": args.alpha, "flip_rankings": args.flip_rankings},
        "train": {"dimension": args.dimension, "window": args.window, "epochs": args.epochs, "seed": seed},
        "evaluation": {"ratios": args.ratios, "seeds": args.seeds, "alphas": args.alphas},
        "network": {"enabled": args.network},
        "workers": args.workers,
        "deterministic": False if args.throughput else None,
    }


def _load_config(args: argparse.Namespace) -> PipelineConfig:
    try:
        return load_pipeline_config(args.config, _overrides(args))
    except SchemaValidationError:
        raise
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read config {args.config}: {e}") from e


def _check_flags(args: argparse.Namespace, config: PipelineConfig) -> None:
    if args.alpha is not None and config.strategy.kind is not SamplingKind.TBS_WBS:
        raise UsageError(f"--alpha only applies to --strategy tbs_wbs, not {config.strategy.kind.value}")
    if getattr(args, "fetch", ()) and not config.network.enabled:
        raise UsageError("--fetch requires --network")
    if args.throughput and config.workers < 2:
        raise UsageError("--throughput needs --workers of at least 2")


def _dispatch(args: argparse.Namespace, config: PipelineConfig) -> Path:
    commands: dict[str, Callable[[PipelineConfig], Path]] = {
        "subgraph": stages.run_subgraph,
        "walk": stages.run_walk,
        "embed": stages.run_embed,
        "classify": stages.run_classify,
        "sweep": stages.run_sweep,
        "compare": stages.run_compare,
    }
    if args.command == "ingest":
        return stages.run_ingest(config, fetch=tuple(args.fetch))
    if args.command == "pipeline":
        return stages.run_pipeline(config, fetch=tuple(args.fetch))
    return commands[args.command](config)


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        config = _load_config(args)
        _check_flags(args, config)
        artifact = _dispatch(args, config)
    except (UsageError, SchemaValidationError) as e:
        print(f"tedge: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except TEdgeError as e:
        print(f"tedge: {e}", file=sys.stderr)
        return EXIT_FAILURE
    logger.info("Wrote %s", artifact)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
