"""Blowup-based TTSV kernels.

``explicit`` materializes the adjacency tensor, ``ordered`` walks every blowup
tuple of every edge, and ``unord`` walks unordered blowups weighted by their
position counts. All three agree on the value of TTSV1 and TTSV2.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from collections.abc import Iterator
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from src.core.config import settings
from src.core.context import raise_if_cancelled
from src.core.errors import CapacityError
from src.hypergraph.model import Hypergraph
from src.kernels.accumulate import accumulate_matrix, accumulate_vector, as_vector
from src.kernels.combin import blowup_count, enumerate_beta, enumerate_kappa, multinomial, phi

logger = logging.getLogger(__name__)

_COLLAPSE_AT = 4096


def _push(terms: list[float], value: float) -> None:
    terms.append(value)
    if len(terms) >= _COLLAPSE_AT:
        terms[:] = [math.fsum(terms)]


def _require_order(H: Hypergraph, minimum: int) -> None:
    if H.r < minimum:
        raise ValueError(f"tensor order {H.r} is below {minimum}")


def explicit_tensor(H: Hypergraph) -> np.ndarray:
    """Dense order-r adjacency tensor, guarded by ``settings.explicit_entry_budget``."""
    entries = H.n**H.r
    if entries > settings.explicit_entry_budget:
        logger.warning("Explicit tensor needs %s entries, budget is %s", entries, settings.explicit_entry_budget)
        raise CapacityError(
            f"explicit tensor needs n^r = {H.n}^{H.r} entries, budget is {settings.explicit_entry_budget}"
        )
    tensor = np.zeros((H.n,) * H.r, dtype=np.float64)
    for edge, weight in zip(H.edges, H.edge_weights):
        raise_if_cancelled()
        for index in enumerate_beta(edge, H.r):
            tensor[index] += weight
    return tensor


def _contract(tensor: np.ndarray, b: np.ndarray, times: int) -> np.ndarray:
    result = tensor
    for _ in range(times):
        result = result @ b
    return result


def ttsv1_explicit(H: Hypergraph, b: object) -> np.ndarray:
    _require_order(H, 1)
    vector = as_vector(H, b)
    return np.asarray(_contract(explicit_tensor(H), vector, H.r - 1), dtype=np.float64)


def ttsv2_explicit(H: Hypergraph, b: object) -> sp.csr_array:
    _require_order(H, 2)
    vector = as_vector(H, b)
    return sp.csr_array(_contract(explicit_tensor(H), vector, H.r - 2))


def check_ordered_budget(H: Hypergraph) -> None:
    total = sum(blowup_count(len(edge), H.r) for edge in H.edges)
    if total > settings.ordered_tuple_budget:
        logger.warning("Ordered enumeration needs %s tuples, budget is %s", total, settings.ordered_tuple_budget)
        raise CapacityError(f"ordered enumeration needs {total} tuples, budget is {settings.ordered_tuple_budget}")


def edge_ttsv1_ordered(edge: tuple[int, ...], weight: float, b: list[float], r: int) -> Iterator[tuple[int, float]]:
    totals: defaultdict[int, list[float]] = defaultdict(list)
    for index in enumerate_beta(edge, r):
        _push(totals[index[0]], math.prod(b[v] for v in index[1:]))
    for vertex in edge:
        yield vertex, weight * math.fsum(totals[vertex])


def edge_ttsv2_ordered(
    edge: tuple[int, ...], weight: float, b: list[float], r: int
) -> Iterator[tuple[int, int, float]]:
    totals: defaultdict[tuple[int, int], list[float]] = defaultdict(list)
    for index in enumerate_beta(edge, r):
        if index[0] <= index[1]:
            _push(totals[(index[0], index[1])], math.prod(b[v] for v in index[2:]))
    for (u, v), terms in totals.items():
        yield u, v, weight * math.fsum(terms)


def ttsv1_ordered(H: Hypergraph, b: object, threads: int | None = None, serial: bool = False) -> np.ndarray:
    _require_order(H, 1)
    vector = as_vector(H, b)
    check_ordered_budget(H)
    return accumulate_vector(H, vector, edge_ttsv1_ordered, threads, serial)


def ttsv2_ordered(H: Hypergraph, b: object, threads: int | None = None, serial: bool = False) -> sp.csr_array:
    _require_order(H, 2)
    vector = as_vector(H, b)
    check_ordered_budget(H)
    return accumulate_matrix(H, vector, edge_ttsv2_ordered, threads, serial)


def _product_without(values: list[float], exponents: tuple[int, ...], drop: tuple[int, ...]) -> float:
    adjusted = list(exponents)
    for index in drop:
        adjusted[index] -= 1
    return math.prod(value**power for value, power in zip(values, adjusted))


def edge_ttsv1_unord(edge: tuple[int, ...], weight: float, b: list[float], r: int) -> Iterator[tuple[int, float]]:
    local = [b[v] for v in edge]
    terms: list[list[float]] = [[] for _ in edge]
    for x in enumerate_kappa(edge, r):
        raise_if_cancelled()
        count = multinomial(x.multiplicities)
        for i, m_i in enumerate(x.multiplicities):
            # phi_1(x, v) = multinomial(x) * m_x(v) / r
            position_count = count * m_i // r
            _push(terms[i], float(position_count) * _product_without(local, x.multiplicities, (i,)))
    for i, vertex in enumerate(edge):
        yield vertex, weight * math.fsum(terms[i])


def edge_ttsv2_unord(
    edge: tuple[int, ...], weight: float, b: list[float], r: int
) -> Iterator[tuple[int, int, float]]:
    local = [b[v] for v in edge]
    size = len(edge)
    terms: defaultdict[tuple[int, int], list[float]] = defaultdict(list)
    pairs = r * (r - 1)
    for x in enumerate_kappa(edge, r):
        raise_if_cancelled()
        count = multinomial(x.multiplicities)
        mult = x.multiplicities
        for i in range(size):
            for j in range(i, size):
                second = mult[j] - (1 if i == j else 0)
                if second < 1:
                    continue
                # phi_2(x, u, v) = multinomial(x) * m_x(u) * (m_x(v) - [u == v]) / (r (r - 1))
                position_count = count * mult[i] * second // pairs
                _push(terms[(i, j)], float(position_count) * _product_without(local, mult, (i, j)))
    for (i, j), values in terms.items():
        yield edge[i], edge[j], weight * math.fsum(values)


def ttsv1_unord(H: Hypergraph, b: object, threads: int | None = None, serial: bool = False) -> np.ndarray:
    _require_order(H, 1)
    vector = as_vector(H, b)
    return accumulate_vector(H, vector, edge_ttsv1_unord, threads, serial)


def ttsv2_unord(H: Hypergraph, b: object, threads: int | None = None, serial: bool = False) -> sp.csr_array:
    _require_order(H, 2)
    vector = as_vector(H, b)
    return accumulate_matrix(H, vector, edge_ttsv2_unord, threads, serial)


def ttsv1_unord_exact(H: Hypergraph, b: object) -> list[Fraction]:
    """Unordered-blowup TTSV1 in exact rational arithmetic."""
    _require_order(H, 1)
    values = [Fraction(v) for v in b]  # type: ignore[attr-defined]
    if len(values) != H.n:
        raise ValueError(f"vector has length {len(values)}, expected {H.n}")
    result = [Fraction(0)] * H.n
    for e, edge in enumerate(H.edges):
        weight = H.exact_weight(e)
        for x in enumerate_kappa(edge, H.r):
            for i, vertex in enumerate(edge):
                exponents = list(x.multiplicities)
                exponents[i] -= 1
                product = Fraction(1)
                for u, power in zip(edge, exponents):
                    product *= values[u] ** power
                result[vertex] += weight * phi(x, (vertex,)) * product
    return result
