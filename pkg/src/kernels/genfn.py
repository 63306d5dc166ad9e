"""Generating-function TTSV kernels.

Each edge contribution is a single coefficient of
``exp(a t) * prod_i (exp(b_i t) - 1)``, extracted either by truncated series
multiplication or by subset expansion, whichever is cheaper for the edge size.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln

from src.core.config import settings
from src.core.errors import CapacityError, NumericRangeError
from src.hypergraph.model import Hypergraph
from src.kernels.accumulate import accumulate_matrix, accumulate_vector, as_vector
from src.kernels.series import MultiplyMethod, exp_series, mult_series

logger = logging.getLogger(__name__)

SMALLEST_NORMAL = float(np.finfo(np.float64).tiny)
_SCALE_PEAK = 300


@dataclass(frozen=True, slots=True)
class SafetyReport:
    r: int
    b_min: float
    min_coeff_estimate: float
    log_estimate: float
    safe: bool


def safety_check(r: int, b: object, active: Sequence[bool] | np.ndarray | None = None) -> SafetyReport:
    values = np.abs(np.asarray(b, dtype=np.float64))
    if active is not None:
        values = values[np.asarray(active, dtype=bool)]
    if values.size == 0:
        return SafetyReport(r=r, b_min=math.inf, min_coeff_estimate=math.inf, log_estimate=math.inf, safe=True)

    b_min = float(values.min())
    if b_min == 0.0:
        log_estimate = -math.inf if r > 0 else 0.0
    else:
        log_estimate = r * math.log(b_min) - float(gammaln(r + 1))
    safe = log_estimate >= math.log(SMALLEST_NORMAL)
    return SafetyReport(
        r=r,
        b_min=b_min,
        min_coeff_estimate=math.exp(log_estimate) if log_estimate > -math.inf else 0.0,
        log_estimate=log_estimate,
        safe=safe,
    )


def crossover_size(r_target: int) -> int:
    """Largest edge remainder handled by subset expansion for a target degree."""
    base = r_target + 1
    value = math.log2(base) + math.log2(math.log2(max(base, 4)))
    return max(2, int(value))


def _power_of_two_scale(a: float, bs: Sequence[float], D: int) -> int:
    total = abs(a) + sum(abs(b) for b in bs)
    if D == 0 or total == 0.0:
        return 0
    return round(math.log2(min(D, _SCALE_PEAK) / total))


def edge_coeff_fft(a: float, bs: Sequence[float], r_target: int, method: MultiplyMethod = "auto") -> float:
    if r_target < 0:
        raise ValueError("target degree must be non-negative")
    if len(bs) > r_target:
        return 0.0
    # Rescale t by 2^p so the wanted coefficient sits near the series peak; undone exactly below.
    p = _power_of_two_scale(a, bs, r_target)
    acc = exp_series(math.ldexp(a, p), r_target)
    for b in bs:
        acc = mult_series(acc, exp_series(math.ldexp(b, p), r_target, drop_constant=True), r_target, method)
    return math.ldexp(acc.coefficient(r_target), -p * r_target)


def _scaled_power(x: float, D: int) -> float:
    """x^D / D!, falling back to the log domain outside the float range."""
    if D <= 170:
        try:
            return x**D / math.factorial(D)
        except OverflowError:
            pass
    if x == 0.0:
        return 0.0
    magnitude = math.exp(D * math.log(abs(x)) - float(gammaln(D + 1)))
    return -magnitude if x < 0 and D % 2 else magnitude


def edge_coeff_subset(a: float, bs: Sequence[float], r_target: int) -> float:
    """Inclusion-exclusion over subsets of ``bs`` walked in Gray-code order."""
    if r_target < 0:
        raise ValueError("target degree must be non-negative")
    k = len(bs)
    if k > settings.subset_cap:
        raise CapacityError(f"subset expansion over {k} factors exceeds cap {settings.subset_cap}")
    if k > r_target:
        return 0.0

    members = [False] * k
    total = a
    size = 0
    terms = [(-1.0 if k % 2 else 1.0) * _scaled_power(total, r_target)]
    for step in range(1, 1 << k):
        bit = (step & -step).bit_length() - 1
        if members[bit]:
            total -= bs[bit]
            size -= 1
        else:
            total += bs[bit]
            size += 1
        members[bit] = not members[bit]
        sign = -1.0 if (k - size) % 2 else 1.0
        terms.append(sign * _scaled_power(total, r_target))
    return math.fsum(terms)


def edge_coeff(a: float, bs: Sequence[float], r_target: int) -> float:
    k = len(bs)
    if k > r_target:
        return 0.0
    if k == r_target:
        # Every factor contributes exactly its linear term.
        return math.prod(bs)
    if k <= crossover_size(r_target) and k <= settings.subset_cap:
        return edge_coeff_subset(a, bs, r_target)
    return edge_coeff_fft(a, bs, r_target)


def edge_ttsv1_gen(edge: tuple[int, ...], weight: float, b: list[float], r: int) -> Iterator[tuple[int, float]]:
    scale = weight * math.factorial(r - 1)
    for vertex in edge:
        others = [b[u] for u in edge if u != vertex]
        yield vertex, scale * edge_coeff(b[vertex], others, r - 1)


def edge_ttsv2_gen(
    edge: tuple[int, ...], weight: float, b: list[float], r: int
) -> Iterator[tuple[int, int, float]]:
    scale = weight * math.factorial(r - 2)
    for i, u in enumerate(edge):
        if len(edge) - 1 <= r - 2:
            others = [b[x] for x in edge if x != u]
            yield u, u, scale * edge_coeff(b[u], others, r - 2)
        for v in edge[i + 1 :]:
            rest = [b[x] for x in edge if x != u and x != v]
            yield u, v, scale * edge_coeff(b[u] + b[v], rest, r - 2)


def _guard(H: Hypergraph, vector: np.ndarray, force: bool) -> None:
    active = np.array([bool(incident) for incident in H.vertex_index], dtype=bool)
    report = safety_check(H.r, vector, active)
    if report.safe:
        return
    if force:
        logger.warning("Generating-function kernel forced outside the safe range (b_min=%s, r=%s)", report.b_min, H.r)
        return
    raise NumericRangeError(
        f"coefficients b_min^r/r! underflow for b_min={report.b_min:.3g}, r={H.r}", report=report
    )


def ttsv1_gen(
    H: Hypergraph,
    b: object,
    threads: int | None = None,
    serial: bool = False,
    force: bool = False,
) -> np.ndarray:
    if H.r < 1:
        raise ValueError("tensor order must be at least 1")
    vector = as_vector(H, b)
    _guard(H, vector, force)
    return accumulate_vector(H, vector, edge_ttsv1_gen, threads, serial)


def ttsv2_gen(
    H: Hypergraph,
    b: object,
    threads: int | None = None,
    serial: bool = False,
    force: bool = False,
) -> sp.csr_array:
    if H.r < 2:
        raise ValueError("tensor order must be at least 2")
    vector = as_vector(H, b)
    _guard(H, vector, force)
    return accumulate_matrix(H, vector, edge_ttsv2_gen, threads, serial)
