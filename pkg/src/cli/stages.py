"""
Pipeline stages.

Each stage reads its inputs from the working directory, writes one
artifact and a manifest. The pipeline command runs the same functions in
order, so running the subcommands one by one gives identical files.

Workdir layout:
    transactions.csv        records acquired through the explorer
    graph/                  full transaction graph
    labels.csv              objective accounts and their classes
    subgraph/               spliced K-order objective network
    corpus.txt              walks
    embeddings.txt          node vectors
    metrics.tsv             per-ratio classification rows (+ _summary)
    sweep.tsv               alpha sweep rows (+ _summary)
    compare.tsv             strategy comparison rows (+ _summary, _baseline)
    manifests/<stage>.json
"""

import logging
import os
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import httpx

from src.cli.manifest import write_manifest
from src.errors import MissingArtifactError, UsageError
from src.evalkit.dataset import build_dataset
from src.evalkit.pipeline import (
    EvaluationTable,
    alpha_sweep,
    compare_to_baseline,
    evaluate_embeddings,
    evaluate_pipeline,
)
from src.ingestion.explorer import API_KEY_ENV, EtherscanClient
from src.ingestion.parser import build_graph, load_labels, parse_transactions, sample_objective_nodes
from src.ingestion.parser import write_transactions
from src.ingestion.storage import (
    load_corpus,
    load_embeddings,
    load_graph,
    save_corpus,
    save_embeddings,
    save_graph,
)
from src.schemas.base import NodeClass
from src.schemas.config import PipelineConfig
from src.sgns.trainer import train
from src.tgraph.sampling import extract_objective_network
from src.utils.telemetry import stage_timer
from src.walker.walks import generate_corpus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Workspace:
    """Artifact locations under the working directory."""
    root: Path

    @property
    def fetched_transactions(self) -> Path:
        return self.root / "transactions.csv"

    @property
    def graph(self) -> Path:
        return self.root / "graph"

    @property
    def labels(self) -> Path:
        return self.root / "labels.csv"

    @property
    def subgraph(self) -> Path:
        return self.root / "subgraph"

    @property
    def corpus(self) -> Path:
        return self.root / "corpus.txt"

    @property
    def embeddings(self) -> Path:
        return self.root / "embeddings.txt"

    @property
    def metrics(self) -> Path:
        return self.root / "metrics"

    @property
    def sweep(self) -> Path:
        return self.root / "sweep"

    @property
    def compare(self) -> Path:
        return self.root / "compare"

    def require(self, path: Path, artifact: str, producer: str) -> Path:
        if not path.exists():
            raise MissingArtifactError(artifact, producer)
        return path


def _seeds(config: PipelineConfig) -> dict[str, int]:
    return {"walk": config.walk.seed, "train": config.train.seed}


def _write_labels(labels: dict[str, NodeClass], path: Path) -> None:
    with path.open("w", encoding="utf-8") as f:
        f.write("address,label\n")
        for address in sorted(labels):
            f.write(f"{address},{labels[address].value}\n")


# =============================================================================
# STAGES
# =============================================================================

def run_ingest(
    config: PipelineConfig,
    fetch: Sequence[str] = (),
    transport: httpx.BaseTransport | None = None,
) -> Path:
    """
    Build the transaction graph and the objective label table.

    Transactions come from paths.transactions, or from the explorer for
    the --fetch addresses (K-order crawl, network flag required). A label
    file with phishing accounts only is completed with as many sampled
    unlabeled accounts.
    """
    ws = Workspace(config.paths.workdir)
    ws.root.mkdir(parents=True, exist_ok=True)
    inputs: dict[str, Path] = {}

    with stage_timer("ingest") as record:
        if fetch:
            if not config.network.enabled:
                raise UsageError("--fetch requires --network")
            with EtherscanClient(config.network, api_key=os.getenv(API_KEY_ENV), transport=transport) as client:
                records = client.crawl_neighborhood(fetch, config.subgraph.k_in, config.subgraph.k_out)
            write_transactions(records, ws.fetched_transactions)
            transactions = ws.fetched_transactions
        elif config.paths.transactions is not None:
            transactions = config.paths.transactions
        else:
            raise UsageError("ingest needs --transactions or --fetch")

        report = parse_transactions(transactions, config.ingest)
        inputs["transactions"] = transactions
        graph = build_graph(report.records)
        save_graph(graph, ws.graph)
        record.details.update(records=report.accepted, rejected=len(report.errors), **graph.describe().model_dump())

        outputs = {"graph": ws.graph}
        if config.paths.labels is not None:
            inputs["labels"] = config.paths.labels
            labels = load_labels(config.paths.labels)
            classes = set(labels.values())
            if classes == {NodeClass.PHISHING}:
                labels = sample_objective_nodes(graph, labels, seed=config.walk.seed)
            _write_labels(labels, ws.labels)
            outputs["labels"] = ws.labels
            record.details["objective_nodes"] = len(labels)

    write_manifest(ws.root, "ingest", config, _seeds(config), inputs, outputs)
    return ws.graph


def run_subgraph(config: PipelineConfig) -> Path:
    """Splice the K-order neighborhoods of all objective accounts."""
    ws = Workspace(config.paths.workdir)
    graph = load_graph(ws.require(ws.graph, "graph", "ingest"))
    labels = load_labels(ws.require(ws.labels, "labels", "ingest"))
    with stage_timer("subgraph", centers=len(labels)) as record:
        centers = [a for a in labels if graph.has_node(a)]
        network = extract_objective_network(graph, centers, config.subgraph.k_in, config.subgraph.k_out)
        save_graph(network, ws.subgraph)
        record.details.update(nodes=network.num_nodes, edges=network.num_edges)
    write_manifest(
        ws.root, "subgraph", config, _seeds(config),
        {"graph": ws.graph, "labels": ws.labels}, {"subgraph": ws.subgraph},
    )
    return ws.subgraph


def run_walk(config: PipelineConfig) -> Path:
    ws = Workspace(config.paths.workdir)
    graph = load_graph(ws.require(ws.subgraph, "subgraph", "subgraph"))
    corpus = generate_corpus(graph, config.walk, config.strategy, workers=config.workers)
    save_corpus(corpus, ws.corpus)
    write_manifest(ws.root, "walk", config, _seeds(config), {"subgraph": ws.subgraph}, {"corpus": ws.corpus})
    return ws.corpus


def run_embed(config: PipelineConfig) -> Path:
    ws = Workspace(config.paths.workdir)
    corpus = load_corpus(ws.require(ws.corpus, "corpus", "walk"))
    model = train(corpus, None, config.train, mode=config.training_mode, workers=config.workers)
    save_embeddings(model.embeddings(), ws.embeddings)
    write_manifest(
        ws.root, "embed", config, _seeds(config), {"corpus": ws.corpus}, {"embeddings": ws.embeddings}
    )
    return ws.embeddings


def run_classify(config: PipelineConfig) -> Path:
    ws = Workspace(config.paths.workdir)
    embeddings = load_embeddings(ws.require(ws.embeddings, "embeddings", "embed"))
    labels = load_labels(ws.require(ws.labels, "labels", "ingest"))
    dataset = build_dataset(embeddings, labels)
    rows = evaluate_embeddings(
        dataset, config.strategy, config.evaluation.ratios, config.walk.seed, config.evaluation
    )
    rows_path, summary_path = EvaluationTable.from_records(rows).write(ws.metrics)
    write_manifest(
        ws.root, "classify", config, _seeds(config),
        {"embeddings": ws.embeddings, "labels": ws.labels},
        {"metrics": rows_path, "summary": summary_path},
    )
    return rows_path


def run_sweep(config: PipelineConfig) -> Path:
    ws = Workspace(config.paths.workdir)
    graph = load_graph(ws.require(ws.subgraph, "subgraph", "subgraph"))
    labels = load_labels(ws.require(ws.labels, "labels", "ingest"))
    table = alpha_sweep(
        graph,
        labels,
        config.evaluation.alphas,
        config.evaluation.ratios,
        config.evaluation.seeds,
        config.walk,
        config.train,
        config.evaluation,
        flip_rankings=config.strategy.flip_rankings,
        workers=config.workers,
        mode=config.training_mode,
    )
    rows_path, summary_path = table.write(ws.sweep)
    write_manifest(
        ws.root, "sweep", config, _seeds(config),
        {"subgraph": ws.subgraph, "labels": ws.labels},
        {"sweep": rows_path, "summary": summary_path},
    )
    return rows_path


def run_compare(config: PipelineConfig) -> Path:
    ws = Workspace(config.paths.workdir)
    graph = load_graph(ws.require(ws.subgraph, "subgraph", "subgraph"))
    labels = load_labels(ws.require(ws.labels, "labels", "ingest"))
    table = evaluate_pipeline(
        graph,
        labels,
        config.evaluation.strategies,
        config.walk,
        config.train,
        config.evaluation.ratios,
        config.evaluation.seeds,
        config.evaluation,
        workers=config.workers,
        mode=config.training_mode,
    )
    rows_path, summary_path = table.write(ws.compare)
    outputs = {"compare": rows_path, "summary": summary_path}
    summary = table.summary()
    if (summary["strategy"] == "static_uniform").any():
        baseline_path = ws.root / "compare_baseline.tsv"
        compare_to_baseline(summary).to_csv(baseline_path, sep="\t", index=False)
        outputs["baseline"] = baseline_path
    write_manifest(
        ws.root, "compare", config, _seeds(config), {"subgraph": ws.subgraph, "labels": ws.labels}, outputs
    )
    return rows_path


def run_pipeline(
    config: PipelineConfig,
    fetch: Sequence[str] = (),
    transport: httpx.BaseTransport | None = None,
) -> Path:
    """ingest, subgraph, walk, embed, classify."""
    if config.paths.labels is None:
        raise UsageError("pipeline needs --labels")
    run_ingest(config, fetch=fetch, transport=transport)
    run_subgraph(config)
    run_walk(config)
    run_embed(config)
    return run_classify(config)
