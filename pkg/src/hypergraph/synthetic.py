from __future__ import annotations

import logging
from collections.abc import Mapping
from typing import Literal

import numpy as np

from src.hypergraph.model import Hypergraph

logger = logging.getLogger(__name__)

SizeDistribution = Literal["constant", "geometric", "histogram"]


def draw_edge_sizes(
    rng: np.random.Generator,
    m: int,
    distribution: SizeDistribution,
    size: float,
    histogram: Mapping[int, int] | None,
    max_size: int,
) -> np.ndarray:
    if distribution == "constant":
        sizes = np.full(m, int(size))
    elif distribution == "geometric":
        if size <= 2:
            raise ValueError("geometric edge sizes need a mean above 2")
        sizes = 1 + rng.geometric(1.0 / (size - 1.0), size=m)
    elif distribution == "histogram":
        if not histogram:
            raise ValueError("histogram distribution needs a size histogram")
        values = np.array(sorted(histogram), dtype=np.int64)
        counts = np.array([histogram[v] for v in values], dtype=np.float64)
        sizes = rng.choice(values, size=m, p=counts / counts.sum())
    else:
        raise ValueError(f"unknown size distribution {distribution!r}")
    return np.clip(sizes, 1, max_size)


def synthetic_hypergraph(
    n: int,
    m: int,
    distribution: SizeDistribution = "geometric",
    size: float = 8.0,
    histogram: Mapping[int, int] | None = None,
    seed: int = 0,
) -> Hypergraph:
    """Random hypergraph with ``m`` edges over ``n`` vertices.

    Edge members are drawn uniformly without replacement; only vertices that
    occur in some edge are kept, relabeled densely.
    """
    if n < 1 or m < 1:
        raise ValueError("synthetic hypergraph needs n >= 1 and m >= 1")
    rng = np.random.default_rng(seed)
    sizes = draw_edge_sizes(rng, m, distribution, size, histogram, max_size=n)
    edges = [tuple(sorted(int(v) for v in rng.choice(n, size=int(k), replace=False))) for k in sizes]

    used = sorted({v for edge in edges for v in edge})
    position = {v: i for i, v in enumerate(used)}
    dense = tuple(tuple(position[v] for v in edge) for edge in edges)
    logger.info("Generated synthetic hypergraph n=%s m=%s r=%s", len(used), m, int(sizes.max()))
    return Hypergraph(n=len(used), edges=dense)
