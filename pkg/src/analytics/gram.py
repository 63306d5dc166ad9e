from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cache

import numpy as np

from src.core.errors import FixtureCorruptionError
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import degrees

logger = logging.getLogger(__name__)

# Incidence columns are aligned. The first four columns of R are those of S with
# the vertex pairs {0, 1} and {2, 3} exchanged; the rest are shared and meet both
# pairs equally, so both Gram matrices survive. Every vertex of R sees the edge
# shapes of its image in S under the exchange, so tensor centralities swap their
# values on the two pairs and agree on {4, 5}.
_S_EDGES: tuple[tuple[int, ...], ...] = (
    (0, 1, 4),
    (0, 1, 5),
    (2, 3, 4, 5),
    (2, 3),
    (0, 2, 4),
    (0, 3, 4),
    (1, 3, 5),
    (1, 2, 5),
    (4, 5),
)
_R_EDGES: tuple[tuple[int, ...], ...] = (
    (2, 3, 4),
    (2, 3, 5),
    (0, 1, 4, 5),
    (0, 1),
    (0, 2, 4),
    (0, 3, 4),
    (1, 3, 5),
    (1, 2, 5),
    (4, 5),
)
_VERTICES = 6
_ISOMORPHISM_LIMIT = 9


def incidence_matrix(H: Hypergraph) -> np.ndarray:
    """Vertex-by-edge 0/1 matrix."""
    matrix = np.zeros((H.n, H.m), dtype=np.int64)
    for e, edge in enumerate(H.edges):
        matrix[list(edge), e] = 1
    return matrix


def is_gram_mate_pair(S: Hypergraph, R: Hypergraph) -> bool:
    if S.n != R.n or S.m != R.m:
        return False
    left, right = incidence_matrix(S), incidence_matrix(R)
    return bool(np.array_equal(left @ left.T, right @ right.T) and np.array_equal(left.T @ left, right.T @ right))


def are_isomorphic(S: Hypergraph, R: Hypergraph) -> bool:
    """Exhaustive check for a vertex relabeling mapping S's edge multiset onto R's."""
    if S.n != R.n or S.m != R.m:
        return False
    if S.n > _ISOMORPHISM_LIMIT:
        raise ValueError(f"exhaustive isomorphism check limited to {_ISOMORPHISM_LIMIT} vertices")
    target = Counter(R.edges)
    if Counter(len(edge) for edge in S.edges) != Counter(len(edge) for edge in R.edges):
        return False
    for perm in itertools.permutations(range(S.n)):
        if Counter(tuple(sorted(perm[v] for v in edge)) for edge in S.edges) == target:
            return True
    return False


@cache
def gram_mate_fixture() -> tuple[Hypergraph, Hypergraph]:
    """Two non-isomorphic hypergraphs on six vertices sharing both Gram matrices.

    Identical Gram matrices give identical weighted clique expansions, so any
    matrix-based centrality scores them the same. Both identities, the
    non-isomorphism and the uneven degrees are checked on every load.
    """
    S = Hypergraph.from_edges(_S_EDGES, n=_VERTICES)
    R = Hypergraph.from_edges(_R_EDGES, n=_VERTICES)
    if not is_gram_mate_pair(S, R):
        raise FixtureCorruptionError("stored hypergraphs do not share their Gram matrices")
    if are_isomorphic(S, R):
        raise FixtureCorruptionError("stored hypergraphs are isomorphic")
    if np.ptp(degrees(S)) == 0:
        raise FixtureCorruptionError("stored hypergraphs are degree-regular")
    logger.debug("Loaded Gram-mate fixture n=%s m=%s", S.n, S.m)
    return S, R


@dataclass(frozen=True, slots=True)
class SignPartition:
    equal: tuple[int, ...]
    greater: tuple[int, ...]
    less: tuple[int, ...]


def sign_partition(first: np.ndarray, second: np.ndarray, tol: float = 1e-9) -> SignPartition:
    difference = np.asarray(first, dtype=np.float64) - np.asarray(second, dtype=np.float64)
    return SignPartition(
        equal=tuple(int(v) for v in np.flatnonzero(np.abs(difference) <= tol)),
        greater=tuple(int(v) for v in np.flatnonzero(difference > tol)),
        less=tuple(int(v) for v in np.flatnonzero(difference < -tol)),
    )
