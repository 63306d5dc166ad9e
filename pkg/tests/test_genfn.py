from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import CapacityError, NumericRangeError, NumericRangeWarning
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import degrees
from src.kernels import genfn
from src.kernels.dispatch import resolve_kernel, ttsv1, ttsv2
from src.kernels.genfn import (
    crossover_size,
    edge_coeff,
    edge_coeff_fft,
    edge_coeff_subset,
    safety_check,
)
from src.kernels.series import TruncatedSeries, exp_series, mult_series

DYADIC = 32


def _exact_coeff(a: int, bs: list[int], D: int) -> Fraction:
    """[t^D] exp(a t) prod (exp(b t) - 1) for a = a/32, b = b/32, in integers."""
    k = len(bs)
    total = 0
    for mask in itertools.product((0, 1), repeat=k):
        chosen = a + sum(b for b, keep in zip(bs, mask) if keep)
        sign = -1 if (k - sum(mask)) % 2 else 1
        total += sign * chosen**D
    return Fraction(total, DYADIC**D * math.factorial(D))


def test_exp_series_coefficients() -> None:
    np.testing.assert_allclose(exp_series(1.0, 3).coeffs, [1.0, 1.0, 0.5, 1 / 6])
    np.testing.assert_allclose(exp_series(2.0, 2, drop_constant=True).coeffs, [0.0, 2.0, 2.0])
    assert exp_series(5.0, 0).coeffs.tolist() == [1.0]
    with pytest.raises(ValueError):
        exp_series(1.0, -1)


def test_truncated_series_validation() -> None:
    series = TruncatedSeries(np.array([1.0, 2.0]))

    assert series.degree == 1
    assert series.coefficient(5) == 0.0
    with pytest.raises(ValueError, match="finite"):
        TruncatedSeries(np.array([1.0, np.inf]))


def test_mult_series_truncates() -> None:
    f = TruncatedSeries(np.array([1.0, 1.0]))

    assert mult_series(f, f, 1).coeffs.tolist() == [1.0, 2.0]
    np.testing.assert_allclose(mult_series(f, f, 3, "fft").coeffs, [1.0, 2.0, 1.0, 0.0], atol=1e-15)


def test_fft_matches_direct_convolution(rng: np.random.Generator) -> None:
    for D in (5, 31, 64, 256):
        f = TruncatedSeries(rng.uniform(0.0, 1.0, size=D + 1))
        g = TruncatedSeries(rng.uniform(0.0, 1.0, size=D + 1))

        direct = mult_series(f, g, D, "direct").coeffs
        fft = mult_series(f, g, D, "fft").coeffs

        np.testing.assert_allclose(fft, direct, rtol=1e-9)


def test_edge_coeff_small_cases() -> None:
    assert edge_coeff_fft(0.0, [1.0], 2) == pytest.approx(0.5)
    assert edge_coeff_fft(1.0, [1.0], 2) == pytest.approx(1.5)
    assert edge_coeff_subset(0.0, [1.0], 2) == pytest.approx(0.5)
    assert edge_coeff_subset(1.0, [1.0], 2) == pytest.approx(1.5)
    assert edge_coeff(1.0, [1.0, 2.0, 3.0], 2) == 0.0
    assert edge_coeff(7.0, [2.0, 3.0], 2) == 6.0


def test_crossover_size() -> None:
    assert crossover_size(15) == 6
    assert crossover_size(1) == 2
    assert crossover_size(63) == 8


def test_subset_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(genfn.settings, "subset_cap", 2)

    with pytest.raises(CapacityError, match="cap"):
        edge_coeff_subset(0.0, [1.0, 1.0, 1.0], 5)


def test_coefficient_paths_match_exact_rationals(rng: np.random.Generator) -> None:
    for _ in range(500):
        k = int(rng.integers(1, 13))
        D = int(rng.integers(2 * k, 65))
        a = int(rng.integers(0, 2 * DYADIC + 1))
        bs = [int(v) for v in rng.integers(DYADIC // 4, 2 * DYADIC + 1, size=k)]

        exact = float(_exact_coeff(a, bs, D))
        values = [b / DYADIC for b in bs]

        assert edge_coeff_subset(a / DYADIC, values, D) == pytest.approx(exact, rel=1e-8)
        assert edge_coeff_fft(a / DYADIC, values, D) == pytest.approx(exact, rel=1e-8)


def test_dispatch_is_continuous_at_crossover(rng: np.random.Generator) -> None:
    D = 64
    star = crossover_size(D)
    for k in (star - 1, star, star + 1):
        bs = list(rng.uniform(0.5, 2.0, size=k))
        a = float(rng.uniform(0.5, 2.0))

        assert edge_coeff_subset(a, bs, D) == pytest.approx(edge_coeff_fft(a, bs, D), rel=1e-8)
        assert edge_coeff(a, bs, D) == pytest.approx(edge_coeff_fft(a, bs, D), rel=1e-8)


def test_safety_check() -> None:
    assert safety_check(100, [0.05, 1.0]).safe
    report = safety_check(100, [1e-4, 1.0])
    assert not report.safe
    assert report.b_min == 1e-4
    assert not safety_check(3, [0.0, 1.0]).safe
    assert safety_check(3, [0.0, 1.0], active=[False, True]).safe


def test_unsafe_vector_is_rejected_or_rerouted() -> None:
    H = Hypergraph.from_edges([[0, 1]], order=100)
    b = np.array([1e-4, 1.0])

    with pytest.raises(NumericRangeError, match="underflow"):
        genfn.ttsv1_gen(H, b)
    with pytest.warns(NumericRangeWarning):
        assert resolve_kernel(H, b, "auto") == "unordered"
    assert resolve_kernel(H, np.ones(2), "auto") == "genfn"


def test_isolated_zero_entries_do_not_trip_the_guard() -> None:
    H = Hypergraph.from_edges([[0, 1]], n=3)

    np.testing.assert_allclose(genfn.ttsv1_gen(H, [1.0, 1.0, 0.0]), [1.0, 1.0, 0.0])


def test_uniform_edge_has_empty_diagonal() -> None:
    H = Hypergraph.from_edges([[0, 1, 2]])

    Y = genfn.ttsv2_gen(H, [1.0, 2.0, 3.0]).toarray()

    np.testing.assert_array_equal(np.diag(Y), [0.0, 0.0, 0.0])
    assert Y[0, 1] == pytest.approx(0.5 * 3.0)


def test_genfn_matches_unordered_on_larger_inputs(rng: np.random.Generator) -> None:
    for _ in range(8):
        n = int(rng.integers(5, 31))
        r = int(rng.integers(3, 13))
        edges = []
        for _ in range(int(rng.integers(1, 16))):
            size = int(rng.integers(1, min(n, r) + 1))
            edges.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
        H = Hypergraph.from_edges(edges, n=n, order=r)
        b = rng.uniform(0.5, 2.0, size=n)

        np.testing.assert_allclose(genfn.ttsv1_gen(H, b), ttsv1(H, b, "unordered"), rtol=1e-9, atol=1e-12)
        Y = genfn.ttsv2_gen(H, b)
        np.testing.assert_allclose(Y.toarray(), ttsv2(H, b, "unordered").toarray(), rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(Y @ b, genfn.ttsv1_gen(H, b), rtol=1e-9, atol=1e-12)


def test_ttsv2_contracts_to_ttsv1_on_wide_inputs(rng: np.random.Generator) -> None:
    for _ in range(50):
        n = int(rng.integers(5, 51))
        r = int(rng.integers(3, 16))
        edges = []
        for _ in range(int(rng.integers(1, 21))):
            size = int(rng.integers(1, min(n, r) + 1))
            edges.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
        H = Hypergraph.from_edges(edges, n=n, order=r)
        b = rng.uniform(0.5, 2.0, size=n)

        Y = genfn.ttsv2_gen(H, b)

        np.testing.assert_allclose(Y @ b, genfn.ttsv1_gen(H, b), rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(Y.toarray(), Y.toarray().T, rtol=1e-12)


@pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
def test_homogeneity(c: float, rng: np.random.Generator, random_hypergraph) -> None:
    for _ in range(30):
        H = random_hypergraph(rng)
        b = rng.uniform(0.1, 2.0, size=H.n)

        scaled = ttsv1(H, c * b, "genfn")

        np.testing.assert_allclose(scaled, c ** (H.r - 1) * ttsv1(H, b, "genfn"), rtol=1e-9, atol=1e-300)


def test_degree_identity_at_order_one_hundred() -> None:
    rng = np.random.default_rng(7)
    sizes = [2] * 5 + [10] * 5 + [50] * 3 + [100] * 2
    edges = [[int(v) for v in rng.choice(150, size=size, replace=False)] for size in sizes]
    H = Hypergraph.from_edges(edges, n=150)
    assert H.r == 100

    np.testing.assert_allclose(genfn.ttsv1_gen(H, np.ones(H.n)), degrees(H), rtol=1e-10)
    b = rng.uniform(0.05, 1.0, size=H.n)
    b[0] = 0.05
    assert safety_check(H.r, b).safe
