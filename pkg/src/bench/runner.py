"""Timing harness for the TTSV kernels over an LEQ-filtration sweep.

For every rank cutoff r the input is filtered to edges of size at most r and
read as an order-r tensor; each requested kernel then runs under a watchdog.
Timeouts and capacity guards become status rows instead of failures.
"""

from __future__ import annotations

import logging
import time
from collections import defaultdict
from collections.abc import Callable, Sequence

import numpy as np

from src.bench.health import HarnessHealth
from src.core.config import settings
from src.core.context import Watchdog, raise_if_cancelled
from src.core.errors import CapacityError, EmptyHypergraphError, KernelCancelled, NumericRangeError
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import leq_filter, with_order
from src.kernels import blowup, genfn
from src.schemas.bench import Algorithm, BenchRecord, BenchStatus, Operation

logger = logging.getLogger(__name__)

ALGORITHMS: tuple[Algorithm, ...] = ("explicit", "ordered", "unordered", "genfn")
OPERATIONS: tuple[Operation, ...] = ("ttsv1", "ttsv2")

KernelCall = Callable[[Hypergraph, np.ndarray, int | None, bool], object]

_KERNELS: dict[tuple[str, str], KernelCall] = {
    ("explicit", "ttsv1"): lambda H, b, threads, serial: blowup.ttsv1_explicit(H, b),
    ("explicit", "ttsv2"): lambda H, b, threads, serial: blowup.ttsv2_explicit(H, b),
    ("ordered", "ttsv1"): blowup.ttsv1_ordered,
    ("ordered", "ttsv2"): blowup.ttsv2_ordered,
    ("unordered", "ttsv1"): blowup.ttsv1_unord,
    ("unordered", "ttsv2"): blowup.ttsv2_unord,
    ("genfn", "ttsv1"): genfn.ttsv1_gen,
    ("genfn", "ttsv2"): genfn.ttsv2_gen,
}

_EDGE_FUNCTIONS: dict[tuple[str, str], Callable[..., object]] = {
    ("ordered", "ttsv1"): blowup.edge_ttsv1_ordered,
    ("ordered", "ttsv2"): blowup.edge_ttsv2_ordered,
    ("unordered", "ttsv1"): blowup.edge_ttsv1_unord,
    ("unordered", "ttsv2"): blowup.edge_ttsv2_unord,
    ("genfn", "ttsv1"): genfn.edge_ttsv1_gen,
    ("genfn", "ttsv2"): genfn.edge_ttsv2_gen,
}


def timed(
    fn: Callable[[], object], timeout: float | None, health: HarnessHealth | None = None
) -> tuple[BenchStatus, int | None]:
    with Watchdog(timeout):
        start = time.perf_counter_ns()
        try:
            raise_if_cancelled()
            fn()
        except KernelCancelled:
            return "timeout", None
        except (CapacityError, NumericRangeError) as exc:
            logger.warning("Guard hit: %s", exc)
            if health is not None:
                health.mark_error(exc)
            return "oom-guard", None
        return "ok", time.perf_counter_ns() - start


def _sweep_graph(H: Hypergraph, r: int) -> Hypergraph | None:
    try:
        filtered = leq_filter(H, r)
    except EmptyHypergraphError:
        logger.warning("No hyperedge of size <= %s; skipping", r)
        return None
    return with_order(filtered, r)


def _per_edge_rows(
    dataset: str,
    H: Hypergraph,
    algorithm: Algorithm,
    op: Operation,
    b: np.ndarray,
    timeout: float | None,
    whole_status: BenchStatus,
) -> list[BenchRecord]:
    edge_fn = _EDGE_FUNCTIONS.get((algorithm, op))
    if edge_fn is None:
        return []

    values = [float(v) for v in b]
    by_size: defaultdict[int, list[int]] = defaultdict(list)
    for e, edge in enumerate(H.edges):
        by_size[len(edge)].append(e)

    rows: list[BenchRecord] = []
    for size in sorted(by_size):
        ids = by_size[size]
        if whole_status != "ok":
            # Buckets inherit a timeout or guard from the whole-kernel run.
            rows.append(_bucket(dataset, algorithm, op, H.r, whole_status, None, size, len(ids)))
            continue

        def run(ids: list[int] = ids) -> None:
            for e in ids:
                raise_if_cancelled()
                for _ in edge_fn(H.edges[e], float(H.edge_weights[e]), values, H.r):  # type: ignore[attr-defined]
                    pass

        status, wall_ns = timed(run, timeout)
        rows.append(_bucket(dataset, algorithm, op, H.r, status, wall_ns, size, len(ids)))
    return rows


def _bucket(
    dataset: str,
    algorithm: Algorithm,
    op: Operation,
    r: int,
    status: BenchStatus,
    wall_ns: int | None,
    size: int,
    count: int,
) -> BenchRecord:
    return BenchRecord(
        dataset=dataset, algorithm=algorithm, op=op, r=r, wall_ns=wall_ns, status=status, edge_size=size, edges=count
    )


def run_bench(
    H: Hypergraph,
    dataset: str,
    r_min: int,
    r_max: int,
    algorithms: Sequence[Algorithm] = ALGORITHMS,
    operations: Sequence[Operation] = ("ttsv1",),
    timeout: float | None = None,
    per_edge: bool = False,
    threads: int | None = None,
    serial: bool = False,
    health: HarnessHealth | None = None,
) -> list[BenchRecord]:
    """One record per attempted (r, algorithm, op) cell, plus per-size buckets when ``per_edge``."""
    timeout = settings.bench_timeout_seconds if timeout is None else timeout
    health = health or HarnessHealth(name=dataset)
    health.mark_start()
    rows: list[BenchRecord] = []
    for r in range(max(r_min, 2), r_max + 1):
        G = _sweep_graph(H, r)
        if G is None:
            continue
        b = np.ones(G.n)
        for algorithm in algorithms:
            for op in operations:
                kernel = _KERNELS[(algorithm, op)]
                status, wall_ns = timed(lambda: kernel(G, b, threads, serial), timeout, health)
                row = BenchRecord(dataset=dataset, algorithm=algorithm, op=op, r=r, wall_ns=wall_ns, status=status)
                logger.info("bench r=%s algo=%s op=%s status=%s wall_ns=%s", r, algorithm, op, status, wall_ns)
                health.record(row)
                rows.append(row)
                if per_edge:
                    rows.extend(_per_edge_rows(dataset, G, algorithm, op, b, timeout, status))
    return rows
