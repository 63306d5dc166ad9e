from __future__ import annotations

import itertools
import math
from collections import defaultdict
from collections.abc import Callable, Iterable

import numpy as np
import scipy.sparse as sp

from src.core.context import raise_if_cancelled
from src.core.parallel import map_blocks, resolve_threads
from src.hypergraph.model import Hypergraph

VectorTerms = Iterable[tuple[int, float]]
MatrixTerms = Iterable[tuple[int, int, float]]

EdgeVectorFn = Callable[[tuple[int, ...], float, list[float], int], VectorTerms]
EdgeMatrixFn = Callable[[tuple[int, ...], float, list[float], int], MatrixTerms]


def as_vector(H: Hypergraph, b: object) -> np.ndarray:
    vector = np.asarray(b, dtype=np.float64)
    if vector.shape != (H.n,):
        raise ValueError(f"vector has shape {vector.shape}, expected ({H.n},)")
    if not np.all(np.isfinite(vector)):
        raise ValueError("vector entries must be finite")
    return vector


def accumulate_vector(
    H: Hypergraph,
    b: np.ndarray,
    edge_fn: EdgeVectorFn,
    threads: int | None = None,
    serial: bool = False,
) -> np.ndarray:
    """Sum per-edge contributions into a length-n vector.

    Edges are split into contiguous blocks; each vertex total is an exactly
    rounded sum, so the result does not depend on the block layout.
    """
    values = [float(v) for v in b]
    weights = H.edge_weights
    r = H.r

    def run(block: range) -> list[list[float]]:
        terms: list[list[float]] = [[] for _ in range(H.n)]
        for e in block:
            raise_if_cancelled()
            for vertex, value in edge_fn(H.edges[e], float(weights[e]), values, r):
                terms[vertex].append(value)
        return terms

    parts = map_blocks(run, H.m, resolve_threads(threads, serial))
    return np.array(
        [math.fsum(itertools.chain.from_iterable(part[v] for part in parts)) for v in range(H.n)],
        dtype=np.float64,
    )


def accumulate_matrix(
    H: Hypergraph,
    b: np.ndarray,
    edge_fn: EdgeMatrixFn,
    threads: int | None = None,
    serial: bool = False,
) -> sp.csr_array:
    """Sum per-edge upper-triangle contributions (u <= v) into a symmetric matrix."""
    values = [float(v) for v in b]
    weights = H.edge_weights
    r = H.r

    def run(block: range) -> dict[tuple[int, int], list[float]]:
        terms: defaultdict[tuple[int, int], list[float]] = defaultdict(list)
        for e in block:
            raise_if_cancelled()
            for u, v, value in edge_fn(H.edges[e], float(weights[e]), values, r):
                terms[(u, v)].append(value)
        return terms

    parts = map_blocks(run, H.m, resolve_threads(threads, serial))
    keys = sorted({key for part in parts for key in part})
    upper = {
        key: math.fsum(itertools.chain.from_iterable(part.get(key, ()) for part in parts)) for key in keys
    }
    return symmetric_from_upper(H.n, upper)


def symmetric_from_upper(n: int, upper: dict[tuple[int, int], float]) -> sp.csr_array:
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    for (u, v), value in upper.items():
        rows.append(u)
        cols.append(v)
        data.append(value)
        if u != v:
            rows.append(v)
            cols.append(u)
            data.append(value)
    return sp.csr_array(
        (np.array(data, dtype=np.float64), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
        shape=(n, n),
    )
