from __future__ import annotations

import logging
import warnings
from typing import Literal

import numpy as np
import scipy.sparse as sp

from src.core.errors import NumericRangeWarning
from src.hypergraph.model import Hypergraph
from src.kernels import blowup, genfn

logger = logging.getLogger(__name__)

KernelName = Literal["explicit", "ordered", "unordered", "genfn", "auto"]
KERNELS: tuple[str, ...] = ("explicit", "ordered", "unordered", "genfn", "auto")


def resolve_kernel(H: Hypergraph, b: object, algo: KernelName) -> KernelName:
    if algo != "auto":
        return algo
    active = np.array([bool(incident) for incident in H.vertex_index], dtype=bool)
    report = genfn.safety_check(H.r, b, active)
    if report.safe:
        return "genfn"
    message = f"generating-function coefficients unsafe (b_min={report.b_min:.3g}, r={H.r}); using unordered blowups"
    logger.warning(message)
    warnings.warn(message, NumericRangeWarning, stacklevel=3)
    return "unordered"


def ttsv1(
    H: Hypergraph,
    b: object,
    algo: KernelName = "auto",
    threads: int | None = None,
    serial: bool = False,
) -> np.ndarray:
    chosen = resolve_kernel(H, b, algo)
    if chosen == "explicit":
        return blowup.ttsv1_explicit(H, b)
    if chosen == "ordered":
        return blowup.ttsv1_ordered(H, b, threads, serial)
    if chosen == "unordered":
        return blowup.ttsv1_unord(H, b, threads, serial)
    if chosen == "genfn":
        return genfn.ttsv1_gen(H, b, threads, serial)
    raise ValueError(f"unknown kernel {algo!r}")


def ttsv2(
    H: Hypergraph,
    b: object,
    algo: KernelName = "auto",
    threads: int | None = None,
    serial: bool = False,
) -> sp.csr_array:
    chosen = resolve_kernel(H, b, algo)
    if chosen == "explicit":
        return blowup.ttsv2_explicit(H, b)
    if chosen == "ordered":
        return blowup.ttsv2_ordered(H, b, threads, serial)
    if chosen == "unordered":
        return blowup.ttsv2_unord(H, b, threads, serial)
    if chosen == "genfn":
        return genfn.ttsv2_gen(H, b, threads, serial)
    raise ValueError(f"unknown kernel {algo!r}")
