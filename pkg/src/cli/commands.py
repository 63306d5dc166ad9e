from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from src.analytics.centrality import run_centrality
from src.analytics.clustering import embed_and_cluster
from src.analytics.decomp import AdjacencyOperator, CPModel, LaplacianOperator, cp_fit_restarts
from src.analytics.ranking import compare_methods, persistence_sweep, ranking
from src.bench.health import HarnessHealth
from src.bench.runner import run_bench
from src.cli.output import write_csv, write_json
from src.hypergraph.io import read_hypergraph, write_hypergraph
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import drop_high_degree, hypergraph_stats, largest_component, leq_filter, with_weights
from src.hypergraph.synthetic import synthetic_hypergraph
from src.kernels.dispatch import ttsv1, ttsv2

logger = logging.getLogger(__name__)


def _load(args: argparse.Namespace) -> Hypergraph:
    H = read_hypergraph(args.input)
    weights = getattr(args, "weights", "banerjee")
    if weights != H.weighting:
        H = with_weights(H, weights)
    logger.info("Loaded %s: n=%s m=%s r=%s", args.input, H.n, H.m, H.r)
    return H


def _vector(spec: str, n: int, seed: int) -> np.ndarray:
    if spec == "ones":
        return np.ones(n)
    if spec == "uniform":
        return np.random.default_rng(seed).uniform(0.1, 2.0, size=n)
    if spec.startswith("file:"):
        values = np.loadtxt(Path(spec.removeprefix("file:")), dtype=np.float64, ndmin=1)
        if values.shape != (n,):
            raise ValueError(f"vector file holds {values.size} values, expected {n}")
        return values
    raise ValueError(f"unknown vector spec {spec!r}; use ones, uniform or file:PATH")


def cmd_ttsv(args: argparse.Namespace) -> int:
    H = _load(args)
    b = _vector(args.vector, H.n, args.seed)
    if args.op == 1:
        result = ttsv1(H, b, args.algo, args.threads, args.serial)
        write_csv(args.out, ("vertex", "value"), ((H.original_label(v), float(x)) for v, x in enumerate(result)))
        return 0

    matrix = sp.coo_array(ttsv2(H, b, args.algo, args.threads, args.serial))
    order = np.lexsort((matrix.col, matrix.row))
    rows = (
        (H.original_label(int(matrix.row[i])), H.original_label(int(matrix.col[i])), float(matrix.data[i]))
        for i in order
    )
    write_csv(args.out, ("u", "v", "value"), rows)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    H = read_hypergraph(args.input)
    dataset = args.dataset or Path(args.input).stem
    health = HarnessHealth(name=dataset)
    records = run_bench(
        H,
        dataset,
        args.r_min,
        args.r_max,
        algorithms=args.algos,
        operations=args.ops,
        timeout=args.timeout_secs,
        per_edge=args.per_edge,
        threads=args.threads,
        serial=args.serial,
        health=health,
    )
    header = ["dataset", "algorithm", "op", "r", "wall_ns", "status"]
    if args.per_edge:
        header += ["edge_size", "edges"]
    rows = ([getattr(record, column) for column in header] for record in records)
    write_csv(args.out, header, rows)
    logger.info("Harness summary: %s", json.dumps(health.payload()))
    return 0


def _centrality_options(args: argparse.Namespace) -> dict[str, object]:
    options: dict[str, object] = {}
    if args.tol is not None:
        options["tol"] = args.tol
    if args.max_iter is not None:
        options["max_iter"] = args.max_iter
    return options


def cmd_centrality(args: argparse.Namespace) -> int:
    H = _load(args)
    options = _centrality_options(args)
    if args.compare:
        rows = compare_methods(H, args.ks, **options)
        table = ((row.method_a, row.method_b, row.k, row.tau_b) for row in rows)
        write_csv(args.out, ("method_a", "method_b", "k", "tau_b"), table)
        return 0

    if args.method == "zec" and args.step is not None:
        options["step"] = args.step
    if args.method != "cec":
        options.update(threads=args.threads, serial=args.serial)
    result = run_centrality(H, args.method, **options)
    logger.info("%s converged in %s iterations (lambda=%.10g)", args.method, result.iterations, result.eigenvalue)
    write_json(args.out, result.to_report())
    if args.ranking_out:
        top = ranking(result.scores, args.topk)
        write_csv(
            args.ranking_out,
            ("rank", "vertex", "score"),
            ((rank, H.original_label(v), float(result.scores[v])) for rank, v in enumerate(top, start=1)),
        )
    return 0


def _prefilter(H: Hypergraph, args: argparse.Namespace) -> Hypergraph:
    if args.drop_high_degree:
        H = drop_high_degree(H, args.fraction)
    return H


def _fit(H: Hypergraph, args: argparse.Namespace) -> CPModel:
    kind = LaplacianOperator if args.laplacian else AdjacencyOperator
    operator = kind(H, threads=args.threads, serial=args.serial)
    return cp_fit_restarts(operator, args.q, restarts=args.restarts, seed=args.seed, steps=args.steps)


def _write_embedding(path: str | None, H: Hypergraph, factors: np.ndarray) -> None:
    header = ["vertex", *(f"e_{j + 1}" for j in range(factors.shape[1]))]
    write_csv(path, header, ([H.original_label(v), *map(float, factors[v])] for v in range(H.n)))


def cmd_embed(args: argparse.Namespace) -> int:
    H = _prefilter(_load(args), args)
    model = _fit(H, args)
    _write_embedding(args.out, H, model.factors)
    return 0


def cmd_cluster(args: argparse.Namespace) -> int:
    H = _prefilter(_load(args), args)
    model, assignment = embed_and_cluster(
        H,
        args.q,
        args.k,
        seed=args.seed,
        use_laplacian=args.laplacian,
        steps=args.steps,
        restarts=args.restarts,
        threads=args.threads,
        serial=args.serial,
    )
    if args.embedding_out:
        _write_embedding(args.embedding_out, H, model.factors)
    labels = ((H.original_label(v), int(label)) for v, label in enumerate(assignment.labels))
    write_csv(args.out, ("vertex", "label"), labels)
    logger.info("k-means inertia %.10g", assignment.inertia)
    return 0


def cmd_persistence(args: argparse.Namespace) -> int:
    H = _load(args)
    columns = persistence_sweep(
        H,
        args.method,
        args.r_min,
        args.r_max,
        topk=args.topk,
        restrict_largest=args.largest_component,
        **_centrality_options(args),
    )
    rows: list[list[object]] = []
    for column in columns:
        if not column.ok:
            rows.append([column.r, "failed", None, None, None, None])
            continue
        for index, vertex in enumerate(column.top):
            changed = None if column.changed is None else column.changed[index]
            rows.append([column.r, "ok", index + 1, vertex, changed, column.new_entrants])
    write_csv(args.out, ("r", "status", "rank", "vertex", "changed", "new_entrants"), rows)
    return 0


def cmd_filter(args: argparse.Namespace) -> int:
    H = read_hypergraph(args.input)
    filtered = leq_filter(H, args.max_size, drop_isolated=args.drop_isolated)
    if args.largest_component:
        filtered = largest_component(filtered)
    write_hypergraph(args.out, filtered)
    logger.info("Filtered to r<=%s: m %s -> %s", args.max_size, H.m, filtered.m)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    write_json(args.out, hypergraph_stats(read_hypergraph(args.input)))
    return 0


def _histogram(text: str | None) -> dict[int, int] | None:
    if not text:
        return None
    pairs = (item.split(":") for item in text.split(",") if item.strip())
    return {int(size): int(count) for size, count in pairs}


def cmd_synth(args: argparse.Namespace) -> int:
    H = synthetic_hypergraph(
        args.n,
        args.m,
        distribution=args.distribution,
        size=args.size,
        histogram=_histogram(args.histogram),
        seed=args.seed,
    )
    write_hypergraph(args.out, H)
    logger.info("Wrote synthetic hypergraph n=%s m=%s r=%s to %s", H.n, H.m, H.r, args.out)
    return 0
