from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Literal

import numpy as np
import scipy.sparse as sp

from src.kernels.combin import blowup_count

WeightScheme = Literal["banerjee", "unit", "custom"]


def banerjee_weight(esize: int, r: int) -> Fraction:
    return Fraction(esize, blowup_count(esize, r))


@dataclass(frozen=True)
class Hypergraph:
    """Vertex set 0..n-1 with sorted, duplicate-free hyperedges.

    Weights follow ``weighting``; Banerjee weights are derived from the rank on
    demand, custom weights are stored per edge. ``id_map`` holds the original
    label of every dense vertex id when the input was relabeled. ``order`` pins
    the tensor order above the largest edge size.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]
    weighting: WeightScheme = "banerjee"
    custom_weights: tuple[float, ...] | None = None
    id_map: tuple[int, ...] | None = None
    order: int | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for edge in self.edges:
            if not edge:
                raise ValueError("hyperedges must be non-empty")
            if any(b <= a for a, b in zip(edge, edge[1:])):
                raise ValueError(f"hyperedge {edge} is not strictly increasing")
            if edge[0] < 0 or edge[-1] >= self.n:
                raise ValueError(f"hyperedge {edge} references a vertex outside 0..{self.n - 1}")
        if self.weighting == "custom":
            if self.custom_weights is None or len(self.custom_weights) != len(self.edges):
                raise ValueError("custom weighting needs one weight per edge")
            if not all(np.isfinite(w) and w > 0 for w in self.custom_weights):
                raise ValueError("edge weights must be finite and positive")
        if self.id_map is not None and len(self.id_map) != self.n:
            raise ValueError("id map must label every vertex")
        if self.order is not None and self.order < max((len(e) for e in self.edges), default=1):
            raise ValueError("tensor order must be at least the largest edge size")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Iterable[int]],
        n: int | None = None,
        weights: Sequence[float] | None = None,
        order: int | None = None,
    ) -> Hypergraph:
        normalized = tuple(tuple(sorted(set(edge))) for edge in edges)
        if n is None:
            n = 1 + max((edge[-1] for edge in normalized if edge), default=-1)
        if weights is None:
            return cls(n=n, edges=normalized, order=order)
        return cls(
            n=n,
            edges=normalized,
            weighting="custom",
            custom_weights=tuple(float(w) for w in weights),
            order=order,
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def r(self) -> int:
        if self.order is not None:
            return self.order
        return max((len(edge) for edge in self.edges), default=0)

    @cached_property
    def vertex_index(self) -> tuple[tuple[int, ...], ...]:
        incident: list[list[int]] = [[] for _ in range(self.n)]
        for edge_id, edge in enumerate(self.edges):
            for vertex in edge:
                incident[vertex].append(edge_id)
        return tuple(tuple(ids) for ids in incident)

    @cached_property
    def edge_weights(self) -> np.ndarray:
        weights = np.array([self.weight_of(e) for e in range(self.m)], dtype=np.float64)
        weights.setflags(write=False)
        return weights

    def weight_of(self, edge_id: int, scheme: WeightScheme | None = None) -> float:
        scheme = scheme or self.weighting
        if scheme == "unit":
            return 1.0
        if scheme == "custom":
            if self.custom_weights is None:
                raise ValueError("hypergraph carries no custom weights")
            return float(self.custom_weights[edge_id])
        return float(banerjee_weight(len(self.edges[edge_id]), self.r))

    def exact_weight(self, edge_id: int) -> Fraction:
        if self.weighting == "unit":
            return Fraction(1)
        if self.weighting == "custom":
            return Fraction(self.custom_weights[edge_id])  # type: ignore[index]
        return banerjee_weight(len(self.edges[edge_id]), self.r)

    def original_label(self, vertex: int) -> int:
        return vertex if self.id_map is None else self.id_map[vertex]


def weight_of(H: Hypergraph, edge_id: int, scheme: WeightScheme) -> float:
    return H.weight_of(edge_id, scheme)


@dataclass(frozen=True, slots=True)
class CliqueExpansion:
    n: int
    entries: dict[tuple[int, int], int]

    def weight(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self.entries.get((min(u, v), max(u, v)), 0)

    def matrix(self) -> sp.csr_array:
        if not self.entries:
            return sp.csr_array((self.n, self.n), dtype=np.float64)
        keys = sorted(self.entries)
        pairs = np.array(keys, dtype=np.int64)
        values = np.array([self.entries[key] for key in keys], dtype=np.float64)
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        data = np.concatenate([values, values])
        return sp.csr_array((data, (rows, cols)), shape=(self.n, self.n))
