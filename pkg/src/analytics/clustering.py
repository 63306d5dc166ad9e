from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from sklearn.cluster import KMeans

from src.analytics.decomp import AdjacencyOperator, CPModel, LaplacianOperator, cp_fit_restarts
from src.hypergraph.model import Hypergraph

logger = logging.getLogger(__name__)

KMEANS_RESTARTS = 10


@dataclass(frozen=True, slots=True)
class ClusterAssignment:
    labels: np.ndarray
    centers: np.ndarray
    inertia: float

    @property
    def k(self) -> int:
        return self.centers.shape[0]


def _canonical(labels: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Clusters are numbered by first appearance so the output is independent of k-means label order.
    present, first = np.unique(labels, return_index=True)
    used = present[np.argsort(first)]
    mapping = np.empty(centers.shape[0], dtype=np.int64)
    mapping[used] = np.arange(used.size)
    unused = np.setdiff1d(np.arange(centers.shape[0]), used)
    mapping[unused] = np.arange(used.size, centers.shape[0])
    reordered = np.empty_like(centers)
    reordered[mapping] = centers
    return mapping[labels], reordered


def cluster_embedding(
    E: np.ndarray, k: int, seed: int | None = 0, restarts: int = KMEANS_RESTARTS
) -> ClusterAssignment:
    """k-means++ seeded Lloyd iterations over the rows of E, best of ``restarts`` runs."""
    rows = np.asarray(E, dtype=np.float64)
    if rows.ndim != 2:
        raise ValueError("embedding must be a 2-D array")
    if not 1 <= k <= rows.shape[0]:
        raise ValueError(f"k must lie in 1..{rows.shape[0]}")
    model = KMeans(n_clusters=k, init="k-means++", n_init=restarts, random_state=seed).fit(rows)
    labels, centers = _canonical(np.asarray(model.labels_, dtype=np.int64), np.asarray(model.cluster_centers_))
    return ClusterAssignment(labels=labels, centers=centers, inertia=float(model.inertia_))


def embed_and_cluster(
    H: Hypergraph,
    q: int,
    k: int,
    seed: int | None = 0,
    use_laplacian: bool = False,
    steps: int | None = None,
    restarts: int | None = None,
    threads: int | None = None,
    serial: bool = False,
) -> tuple[CPModel, ClusterAssignment]:
    """CP-embed the adjacency or normalized Laplacian tensor, then k-means its rows.

    The embedding is the lowest-objective fit over ``restarts`` seeds starting at
    ``seed`` (``HT_CP_RESTARTS`` by default).
    """
    if k > H.n:
        raise ValueError(f"cannot form {k} clusters from {H.n} vertices")
    kind = LaplacianOperator if use_laplacian else AdjacencyOperator
    operator = kind(H, threads=threads, serial=serial)
    workers = 1 if serial else threads
    model = cp_fit_restarts(operator, q, restarts=restarts, seed=seed, steps=steps, threads=workers)
    assignment = cluster_embedding(model.factors, k, seed)
    logger.info(
        "Clustered %s vertices into %s groups (laplacian=%s, inertia=%.6g)", H.n, k, use_laplacian, assignment.inertia
    )
    return model, assignment
