"""Symmetric CP decomposition driven by TTSV1.

The objective ``||T - sum_j lambda_j E_j^{(r)}||^2`` and its gradients only
touch the tensor through ``T E_j^{r-1}`` and its Frobenius norm, so the same
code fits the adjacency tensor and the normalized Laplacian tensor.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Protocol

import numpy as np

from src.core.config import settings
from src.core.context import raise_if_cancelled
from src.core.errors import CapacityError, FitDivergenceError
from src.core.parallel import map_blocks, resolve_threads
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import degrees, with_weights
from src.kernels.combin import blowup_count
from src.kernels.dispatch import KernelName, ttsv1
from src.kernels.genfn import edge_coeff

logger = logging.getLogger(__name__)

_ARMIJO = 1e-4
_MAX_HALVINGS = 60


class TensorOperator(Protocol):
    @property
    def order(self) -> int: ...

    @property
    def n(self) -> int: ...

    def frobenius_sq(self) -> float: ...

    def apply(self, x: np.ndarray) -> np.ndarray: ...


def _grouped_weights(H: Hypergraph) -> dict[tuple[int, ...], float]:
    # Edges with the same vertex set share their tensor entries.
    grouped: defaultdict[tuple[int, ...], float] = defaultdict(float)
    for edge, weight in zip(H.edges, H.edge_weights):
        grouped[edge] += float(weight)
    return grouped


@dataclass(frozen=True)
class AdjacencyOperator:
    hypergraph: Hypergraph
    algo: KernelName = "auto"
    threads: int | None = None
    serial: bool = False

    @property
    def order(self) -> int:
        return self.hypergraph.r

    @property
    def n(self) -> int:
        return self.hypergraph.n

    def frobenius_sq(self) -> float:
        r = self.order
        grouped = _grouped_weights(self.hypergraph)
        return math.fsum(total**2 * blowup_count(len(edge), r) for edge, total in grouped.items())

    def apply(self, x: np.ndarray) -> np.ndarray:
        return ttsv1(self.hypergraph, x, self.algo, self.threads, self.serial)


@dataclass(frozen=True)
class LaplacianOperator:
    """Normalized Laplacian tensor ``I - A(D., ..., D.)`` with ``D = diag(d^{-1/r})``."""

    hypergraph: Hypergraph
    algo: KernelName = "auto"
    threads: int | None = None
    serial: bool = False

    @cached_property
    def _banerjee(self) -> Hypergraph:
        H = self.hypergraph
        return H if H.weighting == "banerjee" else with_weights(H, "banerjee")

    @cached_property
    def _scaling(self) -> np.ndarray:
        d = degrees(self.hypergraph)
        if np.any(d == 0):
            isolated = [int(v) for v in np.flatnonzero(d == 0)]
            raise ValueError(f"normalized Laplacian needs every vertex in an edge; isolated: {isolated}")
        return d ** (-1.0 / self.order)

    @property
    def order(self) -> int:
        return self.hypergraph.r

    @property
    def n(self) -> int:
        return self.hypergraph.n

    def frobenius_sq(self) -> float:
        r = self.order
        d = degrees(self.hypergraph)
        squared = self._scaling**2
        diagonal = np.ones(self.n)
        terms: list[float] = []
        for edge, total in _grouped_weights(self._banerjee).items():
            if len(edge) == 1:
                diagonal[edge[0]] -= total / d[edge[0]]
                continue
            # sum over blowup tuples of prod_j d_{t_j}^{-2/r}, as r! [t^r] prod_u (exp(c_u t) - 1)
            blown = math.factorial(r) * edge_coeff(0.0, [float(squared[u]) for u in edge], r)
            terms.append(total**2 * blown)
        terms.extend(float(v) ** 2 for v in diagonal)
        return math.fsum(terms)

    def apply(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        scale = self._scaling
        inner = ttsv1(self._banerjee, scale * x, self.algo, self.threads, self.serial)
        return x ** (self.order - 1) - scale * inner


def laplacian_ttsv1(H: Hypergraph, x: np.ndarray, algo: KernelName = "auto") -> np.ndarray:
    return LaplacianOperator(H, algo=algo).apply(x)


def as_operator(target: Hypergraph | TensorOperator) -> TensorOperator:
    if isinstance(target, Hypergraph):
        return AdjacencyOperator(target)
    return target


@dataclass(frozen=True)
class CPModel:
    weights: np.ndarray
    factors: np.ndarray
    trace: tuple[float, ...] = field(default=())
    converged: bool = False

    def __post_init__(self) -> None:
        if self.factors.ndim != 2 or self.weights.shape != (self.factors.shape[1],):
            raise ValueError("weights must have one entry per factor column")
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.factors))):
            raise ValueError("model entries must be finite")

    @property
    def q(self) -> int:
        return self.weights.size

    @property
    def n(self) -> int:
        return self.factors.shape[0]


def reconstruct(M: CPModel, r: int) -> np.ndarray:
    """Dense ``sum_j lambda_j E_j^{(r)}``; small n only."""
    if M.n**r > settings.explicit_entry_budget:
        raise CapacityError(f"reconstruction needs {M.n}^{r} entries")
    tensor = np.zeros((M.n,) * r)
    for j in range(M.q):
        column = M.factors[:, j]
        tensor += M.weights[j] * reduce(np.multiply.outer, [column] * r)
    return tensor


@dataclass(frozen=True, slots=True)
class _Evaluation:
    objective: float
    grad_weights: np.ndarray
    grad_factors: np.ndarray


def _applied_columns(op: TensorOperator, factors: np.ndarray, threads: int) -> np.ndarray:
    def run(block: range) -> list[np.ndarray]:
        return [op.apply(factors[:, j]) for j in block]

    columns = [col for part in map_blocks(run, factors.shape[1], threads) for col in part]
    return np.column_stack(columns)


def _evaluate(
    op: TensorOperator,
    weights: np.ndarray,
    factors: np.ndarray,
    threads: int,
    norm_sq: float | None = None,
    gradients: bool = True,
) -> _Evaluation:
    if factors.shape != (op.n, weights.size):
        raise ValueError(f"factor matrix has shape {factors.shape}, expected ({op.n}, {weights.size})")
    r = op.order
    norm_sq = op.frobenius_sq() if norm_sq is None else norm_sq
    applied = _applied_columns(op, factors, threads)
    contractions = np.einsum("ij,ij->j", applied, factors)
    gram = factors.T @ factors
    gram_r = gram**r

    objective = norm_sq - 2.0 * float(weights @ contractions) + float(weights @ gram_r @ weights)
    if not gradients:
        return _Evaluation(objective, np.empty(0), np.empty((0, 0)))

    grad_weights = -2.0 * (contractions - gram_r @ weights)
    mixed = factors @ (weights[:, np.newaxis] * gram ** (r - 1))
    grad_factors = -2.0 * r * weights[np.newaxis, :] * (applied - mixed)
    return _Evaluation(objective, grad_weights, grad_factors)


def cp_objective(target: Hypergraph | TensorOperator, M: CPModel, threads: int | None = None) -> float:
    op = as_operator(target)
    return _evaluate(op, M.weights, M.factors, resolve_threads(threads), gradients=False).objective


def cp_gradients(
    target: Hypergraph | TensorOperator, M: CPModel, threads: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    op = as_operator(target)
    evaluation = _evaluate(op, M.weights, M.factors, resolve_threads(threads))
    return evaluation.grad_weights, evaluation.grad_factors


def initial_model(n: int, q: int, seed: int | None = 0) -> CPModel:
    rng = np.random.default_rng(seed)
    bound = 1.0 / math.sqrt(n)
    return CPModel(weights=np.ones(q), factors=rng.uniform(-bound, bound, size=(n, q)))


def cp_fit(
    target: Hypergraph | TensorOperator,
    q: int,
    steps: int | None = None,
    initial_step: float | None = None,
    seed: int | None = 0,
    tol: float | None = None,
    init: CPModel | None = None,
    threads: int | None = None,
) -> CPModel:
    """Gradient descent with Armijo backtracking from a seeded random start.

    Accepted steps never increase the objective; the returned model carries the
    objective trace and whether the gradient norm fell below ``tol``.
    """
    if q < 1:
        raise ValueError("embedding dimension must be at least 1")
    steps = settings.cp_steps if steps is None else steps
    step = settings.cp_initial_step if initial_step is None else initial_step
    tol = settings.cp_grad_tol if tol is None else tol
    op = as_operator(target)
    workers = resolve_threads(threads)
    norm_sq = op.frobenius_sq()

    model = init if init is not None else initial_model(op.n, q, seed)
    if model.q != q or model.n != op.n:
        raise ValueError("initial model does not match the requested shape")
    weights, factors = model.weights.copy(), model.factors.copy()

    current = _evaluate(op, weights, factors, workers, norm_sq)
    step_log: list[tuple[int, float, float]] = [(0, 0.0, current.objective)]
    if not math.isfinite(current.objective):
        raise FitDivergenceError("objective is not finite at the starting point", step_log)

    trace = [current.objective]
    converged = False
    for iteration in range(1, steps + 1):
        raise_if_cancelled()
        grad_sq = float(current.grad_weights @ current.grad_weights) + float(np.sum(current.grad_factors**2))
        if math.sqrt(grad_sq) <= tol:
            converged = True
            break

        for _ in range(_MAX_HALVINGS):
            trial_weights = weights - step * current.grad_weights
            trial_factors = factors - step * current.grad_factors
            trial = _evaluate(op, trial_weights, trial_factors, workers, norm_sq)
            step_log.append((iteration, step, trial.objective))
            if math.isfinite(trial.objective) and trial.objective <= current.objective - _ARMIJO * step * grad_sq:
                break
            step *= 0.5
        else:
            if all(math.isnan(value) for it, _, value in step_log if it == iteration):
                raise FitDivergenceError(f"objective became NaN at iteration {iteration}", step_log)
            logger.info("CP line search stalled at iteration %s (objective %.6g)", iteration, current.objective)
            break

        weights, factors, current = trial_weights, trial_factors, trial
        trace.append(current.objective)
        logger.debug("cp iteration=%s step=%.3g objective=%.10g", iteration, step, current.objective)
        step *= 2.0
    else:
        grad_sq = float(current.grad_weights @ current.grad_weights) + float(np.sum(current.grad_factors**2))
        converged = math.sqrt(grad_sq) <= tol

    logger.info("CP fit q=%s finished after %s accepted steps, objective %.6g", q, len(trace) - 1, trace[-1])
    return CPModel(weights=weights, factors=factors, trace=tuple(trace), converged=converged)


def cp_fit_restarts(
    target: Hypergraph | TensorOperator,
    q: int,
    restarts: int | None = None,
    seed: int | None = 0,
    **options: object,
) -> CPModel:
    """Best of ``restarts`` seeded fits, ranked by final objective.

    Restart ``i`` starts from ``initial_model(n, q, seed + i)``.
    """
    restarts = settings.cp_restarts if restarts is None else restarts
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    op = as_operator(target)
    fits = (cp_fit(op, q, seed=None if seed is None else seed + attempt, **options) for attempt in range(restarts))
    best = min(fits, key=lambda model: model.trace[-1])
    logger.info("CP restarts=%s kept objective %.6g", restarts, best.trace[-1])
    return best
