from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from src.core.config import settings

MultiplyMethod = Literal["auto", "fft", "direct"]


@dataclass(frozen=True, slots=True)
class TruncatedSeries:
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("series needs at least the constant coefficient")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("series coefficients must be finite")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def coefficient(self, k: int) -> float:
        return float(self.coeffs[k]) if 0 <= k <= self.degree else 0.0


def _fit(coeffs: np.ndarray, D: int) -> np.ndarray:
    if coeffs.size > D + 1:
        return coeffs[: D + 1]
    if coeffs.size < D + 1:
        return np.pad(coeffs, (0, D + 1 - coeffs.size))
    return coeffs


def exp_series(a: float, D: int, drop_constant: bool = False) -> TruncatedSeries:
    """Taylor coefficients a^k / k! of exp(a t) up to degree D."""
    if D < 0:
        raise ValueError("degree must be non-negative")
    coeffs = np.empty(D + 1, dtype=np.float64)
    coeffs[0] = 0.0 if drop_constant else 1.0
    if D:
        coeffs[1:] = np.cumprod(a / np.arange(1, D + 1, dtype=np.float64))
    return TruncatedSeries(coeffs)


def _next_power_of_two(size: int) -> int:
    return 1 << max(0, (size - 1).bit_length())


def mult_series(
    f: TruncatedSeries,
    g: TruncatedSeries,
    D: int,
    method: MultiplyMethod = "auto",
) -> TruncatedSeries:
    if method == "auto":
        method = "direct" if D < settings.direct_convolution_threshold else "fft"

    left = f.coeffs[: D + 1]
    right = g.coeffs[: D + 1]
    if method == "direct":
        return TruncatedSeries(_fit(np.convolve(left, right), D))

    size = _next_power_of_two(left.size + right.size - 1)
    product = np.fft.irfft(np.fft.rfft(left, size) * np.fft.rfft(right, size), size)
    return TruncatedSeries(_fit(product, D))
