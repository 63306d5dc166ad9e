from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from src.core.config import settings
from src.core.errors import EmptyHypergraphError
from src.hypergraph.model import CliqueExpansion, Hypergraph, WeightScheme
from src.schemas.hypergraph import HypergraphStats

logger = logging.getLogger(__name__)


def degrees(H: Hypergraph) -> np.ndarray:
    return np.array([len(incident) for incident in H.vertex_index], dtype=np.float64)


def volume(H: Hypergraph) -> int:
    return sum(len(edge) for edge in H.edges)


def _rebuild(
    H: Hypergraph,
    edges: Sequence[tuple[int, ...]],
    edge_ids: Sequence[int],
    keep: Sequence[int] | None,
) -> Hypergraph:
    weights = None
    if H.weighting == "custom" and H.custom_weights is not None:
        weights = tuple(H.custom_weights[e] for e in edge_ids)

    if keep is None:
        return Hypergraph(
            n=H.n,
            edges=tuple(edges),
            weighting=H.weighting,
            custom_weights=weights,
            id_map=H.id_map,
        )

    position = {old: new for new, old in enumerate(keep)}
    relabeled = tuple(tuple(position[v] for v in edge) for edge in edges)
    id_map = tuple(H.original_label(old) for old in keep)
    if id_map == tuple(range(len(keep))):
        id_map = None
    return Hypergraph(
        n=len(keep),
        edges=relabeled,
        weighting=H.weighting,
        custom_weights=weights,
        id_map=id_map,
    )


def leq_filter(H: Hypergraph, rmax: int, drop_isolated: bool = False) -> Hypergraph:
    if rmax < 2:
        raise ValueError("rmax must be at least 2")
    kept = [e for e, edge in enumerate(H.edges) if len(edge) <= rmax]
    if not kept:
        raise EmptyHypergraphError(f"no hyperedge of size <= {rmax}")

    touched = sorted({v for e in kept for v in H.edges[e]})
    if len(kept) == H.m and (not drop_isolated or len(touched) == H.n):
        return H

    edges = [H.edges[e] for e in kept]
    logger.debug("LEQ filter r<=%s kept %s of %s edges", rmax, len(kept), H.m)
    return _rebuild(H, edges, kept, touched if drop_isolated else None)


def clique_expansion(H: Hypergraph) -> CliqueExpansion:
    entries: Counter[tuple[int, int]] = Counter()
    for edge in H.edges:
        entries.update(itertools.combinations(edge, 2))
    return CliqueExpansion(n=H.n, entries=dict(entries))


def _components(H: Hypergraph) -> tuple[int, np.ndarray]:
    return connected_components(clique_expansion(H).matrix(), directed=False)


def is_connected(H: Hypergraph) -> bool:
    if H.n <= 1:
        return True
    count, _ = _components(H)
    return bool(count == 1)


def largest_component(H: Hypergraph) -> Hypergraph:
    if H.n <= 1:
        return H
    count, labels = _components(H)
    if count == 1:
        return H
    sizes = np.bincount(labels)
    # Ties go to the component holding the smallest vertex id.
    target = int(np.argmax(sizes))
    keep = [int(v) for v in np.flatnonzero(labels == target)]
    members = set(keep)
    edge_ids = [e for e, edge in enumerate(H.edges) if edge[0] in members]
    if not edge_ids:
        raise EmptyHypergraphError("largest component has no hyperedges")
    return _rebuild(H, [H.edges[e] for e in edge_ids], edge_ids, keep)


def drop_high_degree(H: Hypergraph, fraction: float | None = None) -> Hypergraph:
    """Remove vertices that appear in more than ``fraction`` of the hyperedges."""
    fraction = settings.high_degree_fraction if fraction is None else fraction
    limit = fraction * H.m
    heavy = {v for v, incident in enumerate(H.vertex_index) if len(incident) > limit}
    if not heavy:
        return H

    logger.info("Dropping %s high-degree vertices (threshold %.3f of %s edges)", len(heavy), fraction, H.m)
    edges: list[tuple[int, ...]] = []
    edge_ids: list[int] = []
    for e, edge in enumerate(H.edges):
        trimmed = tuple(v for v in edge if v not in heavy)
        if trimmed:
            edges.append(trimmed)
            edge_ids.append(e)
    if not edges:
        raise EmptyHypergraphError("every hyperedge consisted of high-degree vertices")
    keep = sorted({v for edge in edges for v in edge})
    return _rebuild(H, edges, edge_ids, keep)


def permute(H: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    if sorted(perm) != list(range(H.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    edges = tuple(tuple(sorted(perm[v] for v in edge)) for edge in H.edges)
    id_map = None
    if H.id_map is not None:
        labels = [0] * H.n
        for old, new in enumerate(perm):
            labels[new] = H.id_map[old]
        id_map = tuple(labels)
    return Hypergraph(
        n=H.n,
        edges=edges,
        weighting=H.weighting,
        custom_weights=H.custom_weights,
        id_map=id_map,
        order=H.order,
    )


def with_weights(H: Hypergraph, weights: Iterable[float] | WeightScheme) -> Hypergraph:
    if isinstance(weights, str):
        if weights == "custom":
            raise ValueError("custom weighting needs explicit weights")
        return Hypergraph(n=H.n, edges=H.edges, weighting=weights, id_map=H.id_map, order=H.order)
    return Hypergraph(
        n=H.n,
        edges=H.edges,
        weighting="custom",
        custom_weights=tuple(float(w) for w in weights),
        id_map=H.id_map,
        order=H.order,
    )


def scale_weights(H: Hypergraph, factor: float) -> Hypergraph:
    return with_weights(H, (factor * w for w in H.edge_weights))


def hypergraph_stats(H: Hypergraph) -> HypergraphStats:
    sizes = Counter(len(edge) for edge in H.edges)
    vol = volume(H)
    return HypergraphStats(
        n=H.n,
        m=H.m,
        r=H.r,
        vol=vol,
        mean_edge_size=vol / H.m if H.m else 0.0,
        size_histogram={size: sizes[size] for size in sorted(sizes)},
    )


def with_order(H: Hypergraph, order: int) -> Hypergraph:
    """Same hypergraph read as an order-``order`` tensor (order at least the largest edge)."""
    return Hypergraph(
        n=H.n,
        edges=H.edges,
        weighting=H.weighting,
        custom_weights=H.custom_weights,
        id_map=H.id_map,
        order=order,
    )
