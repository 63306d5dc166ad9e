from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from src.core.config import settings
from src.core.errors import CentralityError, ConvergenceError, NotConnectedError
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import clique_expansion, is_connected
from src.kernels.dispatch import KernelName, ttsv1, ttsv2
from src.schemas.centrality import CentralityMethod, CentralityReport

logger = logging.getLogger(__name__)

METHODS: tuple[CentralityMethod, ...] = ("zec", "hec", "cec")


@dataclass(slots=True)
class CentralityResult:
    scores: np.ndarray
    eigenvalue: float
    iterations: int
    residual: float
    method: CentralityMethod

    def to_report(self) -> CentralityReport:
        return CentralityReport(
            method=self.method,
            eigenvalue=self.eigenvalue,
            iterations=self.iterations,
            residual=self.residual,
            scores=[float(v) for v in self.scores],
        )


def _require_connected(H: Hypergraph) -> None:
    if H.m == 0:
        raise CentralityError("hypergraph has no hyperedges")
    if not is_connected(H):
        raise NotConnectedError("hypergraph not connected")


def _normalize(x: np.ndarray) -> np.ndarray:
    return x / x.sum()


def dominant_eigenvector(
    matrix: sp.sparray | np.ndarray,
    tol: float,
    max_iter: int | None = None,
) -> tuple[np.ndarray, float, int]:
    """Power iteration for the Perron vector of a symmetric nonnegative matrix.

    Iterates on ``A + sigma I`` with ``sigma`` half the largest absolute row sum,
    which leaves the eigenvectors unchanged and separates the dominant eigenvalue
    from its negative. Returns the l1-normalized vector with its largest entry
    positive, the Rayleigh quotient and the iteration count.
    """
    max_iter = settings.inner_max_iter if max_iter is None else max_iter
    n = matrix.shape[0]
    row_sums = np.abs(matrix).sum(axis=1)
    sigma = 0.5 * float(np.max(row_sums)) if n else 0.0

    x = np.full(n, 1.0 / n)
    for iteration in range(1, max_iter + 1):
        y = matrix @ x + sigma * x
        pivot = y[np.argmax(np.abs(y))]
        if pivot == 0.0:
            raise ConvergenceError("matrix annihilated the iterate", iterations=iteration)
        y = y / pivot
        y = y / np.abs(y).sum()
        delta = float(np.max(np.abs(y - x)))
        x = y
        if delta < tol:
            break
    else:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} iterations", iterations=max_iter
        )

    product = matrix @ x
    eigenvalue = float(x @ product) / float(x @ x)
    return np.asarray(x, dtype=np.float64), eigenvalue, iteration


def _start_vector(n: int, x0: np.ndarray | None, seed: int | None) -> np.ndarray:
    if x0 is not None:
        start = np.asarray(x0, dtype=np.float64)
        if start.shape != (n,) or np.any(start <= 0):
            raise ValueError("starting vector must be strictly positive with one entry per vertex")
        return _normalize(start)
    if seed is not None:
        rng = np.random.default_rng(seed)
        return _normalize(rng.uniform(0.5, 1.5, size=n))
    return np.full(n, 1.0 / n)


def hec(
    H: Hypergraph,
    tol: float | None = None,
    max_iter: int | None = None,
    x0: np.ndarray | None = None,
    seed: int | None = None,
    algo: KernelName = "auto",
    threads: int | None = None,
    serial: bool = False,
) -> CentralityResult:
    """H-eigenvector centrality via the Ng-Qi-Zhou power-type iteration."""
    tol = settings.hec_tol if tol is None else tol
    max_iter = settings.max_iter if max_iter is None else max_iter
    _require_connected(H)
    if H.r < 2:
        raise CentralityError("H-eigenvector centrality needs tensor order at least 2")

    power = H.r - 1
    x = _start_vector(H.n, x0, seed)
    z = ttsv1(H, x, algo, threads, serial)
    bounds = (0.0, 0.0)
    for iteration in range(1, max_iter + 1):
        if np.any(z <= 0):
            raise CentralityError("iterate lost strict positivity")
        ratios = z / x**power
        bounds = (float(ratios.min()), float(ratios.max()))
        logger.debug("hec iteration=%s bounds=%s", iteration, bounds)
        if bounds[1] - bounds[0] < tol:
            break
        x = _normalize(z ** (1.0 / power))
        z = ttsv1(H, x, algo, threads, serial)
    else:
        raise ConvergenceError(
            f"hec did not converge in {max_iter} iterations (bounds {bounds[0]:.6g}..{bounds[1]:.6g})",
            iterations=max_iter,
            bounds=bounds,
        )

    eigenvalue = 0.5 * (bounds[0] + bounds[1])
    residual = float(np.max(np.abs(z - eigenvalue * x**power))) / eigenvalue
    return CentralityResult(scores=x, eigenvalue=eigenvalue, iterations=iteration, residual=residual, method="hec")


def zec(
    H: Hypergraph,
    tol: float | None = None,
    step: float | None = None,
    max_iter: int | None = None,
    algo: KernelName = "auto",
    threads: int | None = None,
    serial: bool = False,
) -> CentralityResult:
    """Z-eigenvector centrality via the damped dominant-eigenvector dynamics."""
    tol = settings.zec_tol if tol is None else tol
    step = settings.zec_step if step is None else step
    max_iter = settings.max_iter if max_iter is None else max_iter
    _require_connected(H)
    if H.r < 2:
        raise CentralityError("Z-eigenvector centrality needs tensor order at least 2")

    y = np.full(H.n, 1.0 / H.n)
    for iteration in range(1, max_iter + 1):
        d, _, _ = dominant_eigenvector(ttsv2(H, y, algo, threads, serial), tol / 10)
        x = y + step * (d - y)
        if np.any(x <= 0):
            raise CentralityError("iterate lost strict positivity")
        ratios = x / y
        spread = float((ratios.max() - ratios.min()) / ratios.min())
        logger.debug("zec iteration=%s spread=%s", iteration, spread)
        y = _normalize(x)
        if spread < tol:
            break
    else:
        raise ConvergenceError(f"zec did not converge in {max_iter} iterations", iterations=max_iter)

    applied = ttsv1(H, y, algo, threads, serial)
    eigenvalue = float(applied @ y) / float(y @ y)
    residual = float(np.max(np.abs(applied - eigenvalue * y)))
    return CentralityResult(scores=y, eigenvalue=eigenvalue, iterations=iteration, residual=residual, method="zec")


def cec(H: Hypergraph, tol: float | None = None, max_iter: int | None = None) -> CentralityResult:
    """Dominant eigenvector of the codegree-weighted clique expansion."""
    tol = settings.hec_tol if tol is None else tol
    max_iter = settings.inner_max_iter if max_iter is None else max_iter
    _require_connected(H)

    matrix = clique_expansion(H).matrix()
    if H.n == 1:
        return CentralityResult(scores=np.ones(1), eigenvalue=0.0, iterations=0, residual=0.0, method="cec")
    scores, eigenvalue, iterations = dominant_eigenvector(matrix, tol, max_iter)
    residual = float(np.max(np.abs(matrix @ scores - eigenvalue * scores)))
    return CentralityResult(scores=scores, eigenvalue=eigenvalue, iterations=iterations, residual=residual, method="cec")


def run_centrality(H: Hypergraph, method: CentralityMethod, **options: object) -> CentralityResult:
    runners: dict[str, Callable[..., CentralityResult]] = {"zec": zec, "hec": hec, "cec": cec}
    if method not in runners:
        raise ValueError(f"unknown centrality method {method!r}")
    return runners[method](H, **options)
