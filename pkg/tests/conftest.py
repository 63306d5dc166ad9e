from __future__ import annotations

import sys
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.hypergraph.model import Hypergraph  # noqa: E402

HypergraphFactory = Callable[..., Hypergraph]


def _random_hypergraph(
    rng: np.random.Generator, n_max: int = 6, m_max: int = 8, r_min: int = 2, r_max: int = 5
) -> Hypergraph:
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    r = int(rng.integers(r_min, r_max + 1))
    edges = []
    for _ in range(m):
        size = int(rng.integers(1, min(n, r) + 1))
        edges.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
    return Hypergraph.from_edges(edges, n=n, order=r)


def _connected_hypergraph(rng: np.random.Generator, n: int, r: int, extra: int | None = None) -> Hypergraph:
    # A path keeps every vertex reachable; random edges on top make it well mixed.
    edges = [[v, v + 1] for v in range(n - 1)]
    for _ in range(2 * n if extra is None else extra):
        size = int(rng.integers(2, min(n, r) + 1))
        edges.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
    return Hypergraph.from_edges(edges, n=n, order=r)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_hypergraph() -> HypergraphFactory:
    return _random_hypergraph


@pytest.fixture
def connected_hypergraph() -> HypergraphFactory:
    return _connected_hypergraph


@pytest.fixture
def single_edge() -> Hypergraph:
    return Hypergraph.from_edges([[0, 1, 2]])


@pytest.fixture
def two_components() -> Hypergraph:
    return Hypergraph.from_edges([[0, 1, 2], [3, 4]])
