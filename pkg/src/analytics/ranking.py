from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import kendalltau

from src.analytics.centrality import METHODS, run_centrality
from src.core.config import settings
from src.core.errors import HypertensorError
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import largest_component, leq_filter
from src.schemas.centrality import CentralityMethod, KendallRow

logger = logging.getLogger(__name__)


def ranking(scores: Sequence[float] | np.ndarray, topk: int | None = None) -> list[int]:
    """Vertex ids by descending score; equal scores keep ascending id order."""
    values = np.asarray(scores, dtype=np.float64)
    order = np.lexsort((np.arange(values.size), -values))
    ranked = [int(v) for v in order]
    return ranked if topk is None else ranked[:topk]


def kendall_tau_b(rank_a: Sequence[int], rank_b: Sequence[int], k: int) -> float:
    """Kendall tau-b between two rankings over the first k entries of ``rank_a``.

    Positions of those vertices in ``rank_b`` are compared with their positions in
    ``rank_a``; k is clamped to the ranking length.
    """
    k = min(k, len(rank_a))
    if k < 2:
        raise ValueError("Kendall tau needs at least two ranked vertices")
    position = {vertex: index for index, vertex in enumerate(rank_b)}
    top = list(rank_a[:k])
    missing = [v for v in top if v not in position]
    if missing:
        raise ValueError(f"vertices {missing} are absent from the second ranking")
    tau, _ = kendalltau(np.arange(k), [position[v] for v in top], variant="b")
    return float(np.clip(tau, -1.0, 1.0))


def compare_methods(
    H: Hypergraph,
    ks: Sequence[int] | None = None,
    methods: Sequence[CentralityMethod] = METHODS,
    **options: object,
) -> list[KendallRow]:
    ks = settings.kendall_cutoffs() if ks is None else ks
    rankings = {
        method: ranking(run_centrality(H, method, **_options_for(method, options)).scores) for method in methods
    }
    rows: list[KendallRow] = []
    for first, second in itertools.combinations(methods, 2):
        for k in ks:
            clamped = min(k, H.n)
            if clamped < 2:
                continue
            rows.append(
                KendallRow(
                    method_a=first,
                    method_b=second,
                    k=clamped,
                    tau_b=kendall_tau_b(rankings[first], rankings[second], clamped),
                )
            )
    return rows


def _options_for(method: CentralityMethod, options: dict[str, object]) -> dict[str, object]:
    if method == "cec":
        return {key: value for key, value in options.items() if key in {"tol", "max_iter"}}
    return dict(options)


@dataclass(slots=True)
class PersistenceColumn:
    r: int
    top: list[int] = field(default_factory=list)
    changed: list[bool] | None = None
    new_entrants: int | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _compare(previous: PersistenceColumn | None, column: PersistenceColumn) -> None:
    if previous is None or not previous.ok:
        return
    column.changed = [
        index >= len(previous.top) or previous.top[index] != vertex for index, vertex in enumerate(column.top)
    ]
    column.new_entrants = len(set(column.top) - set(previous.top))


def persistence_sweep(
    H: Hypergraph,
    method: CentralityMethod,
    r_lo: int,
    r_hi: int,
    topk: int = 10,
    restrict_largest: bool = False,
    **options: object,
) -> list[PersistenceColumn]:
    """Top-k vertices of the LEQ-filtered hypergraph for every r in r_lo..r_hi.

    Vertex ids in the output are original labels, so columns compare across
    filtrations. A failing r yields a column with ``error`` set; the sweep goes on.
    """
    if r_lo < 2 or r_hi < r_lo:
        raise ValueError("need 2 <= r_lo <= r_hi")
    if topk < 1:
        raise ValueError("topk must be positive")

    columns: list[PersistenceColumn] = []
    previous: PersistenceColumn | None = None
    for r in range(r_lo, r_hi + 1):
        column = PersistenceColumn(r=r)
        try:
            filtered = leq_filter(H, r, drop_isolated=True)
            if restrict_largest:
                filtered = largest_component(filtered)
            result = run_centrality(filtered, method, **_options_for(method, options))
            column.top = [filtered.original_label(v) for v in ranking(result.scores, topk)]
        except HypertensorError as exc:
            logger.warning("Persistence sweep failed at r=%s: %s", r, exc)
            column.error = str(exc)
        _compare(previous, column)
        columns.append(column)
        previous = column
    return columns
