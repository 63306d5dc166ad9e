from __future__ import annotations

import numpy as np
import pytest

from src.analytics.centrality import cec, dominant_eigenvector, hec, run_centrality, zec
from src.core.errors import CentralityError, ConvergenceError, NotConnectedError
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import scale_weights
from src.kernels.dispatch import ttsv1

SMALL = Hypergraph.from_edges([[0, 1, 2], [1, 2, 3], [2, 3], [0, 3], [1, 3, 4], [0, 4]])


@pytest.mark.parametrize("method", ["hec", "zec", "cec"])
def test_symmetric_edge_gives_uniform_scores(method: str, single_edge: Hypergraph) -> None:
    result = run_centrality(single_edge, method)

    np.testing.assert_allclose(result.scores, [1 / 3, 1 / 3, 1 / 3], rtol=1e-12)
    assert result.method == method
    assert result.residual <= 1e-12


def test_hec_is_positive_unique_and_satisfies_eigen_equation(
    rng: np.random.Generator, connected_hypergraph
) -> None:
    for _ in range(20):
        H = connected_hypergraph(rng, n=int(rng.integers(4, 13)), r=int(rng.integers(3, 6)))

        first = hec(H, seed=1)
        second = hec(H, seed=2)

        assert np.all(first.scores > 0)
        assert first.scores.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(first.scores - second.scores)) <= 1e-6
        assert first.residual <= 1e-7
        z = ttsv1(H, first.scores)
        np.testing.assert_allclose(z, first.eigenvalue * first.scores ** (H.r - 1), rtol=1e-6)


def test_hec_is_scale_invariant(rng: np.random.Generator, connected_hypergraph) -> None:
    H = connected_hypergraph(rng, n=8, r=4)

    plain = hec(H)
    scaled = hec(scale_weights(H, 3.0))

    np.testing.assert_allclose(scaled.scores, plain.scores, rtol=1e-7)
    assert scaled.eigenvalue == pytest.approx(3.0 * plain.eigenvalue, rel=1e-7)


def test_hec_accepts_a_positive_start() -> None:
    result = hec(SMALL, x0=np.arange(1.0, 6.0))

    np.testing.assert_allclose(result.scores, hec(SMALL).scores, atol=1e-7)
    with pytest.raises(ValueError, match="strictly positive"):
        hec(SMALL, x0=np.array([1.0, 0.0, 1.0, 1.0, 1.0]))


def test_zec_residual() -> None:
    result = zec(SMALL)

    assert np.all(result.scores > 0)
    assert result.scores.sum() == pytest.approx(1.0, abs=1e-12)
    assert result.residual <= 10 * 1e-6 * result.eigenvalue


def test_iteration_cap_raises(rng: np.random.Generator, connected_hypergraph) -> None:
    H = connected_hypergraph(rng, n=10, r=3)

    with pytest.raises(ConvergenceError, match="did not converge") as excinfo:
        hec(H, max_iter=1)
    assert excinfo.value.iterations == 1
    assert excinfo.value.bounds is not None


@pytest.mark.parametrize("method", ["hec", "zec", "cec"])
def test_disconnected_input_is_rejected(method: str, two_components: Hypergraph) -> None:
    with pytest.raises(NotConnectedError, match="not connected"):
        run_centrality(two_components, method)


def test_edgeless_input_is_rejected() -> None:
    with pytest.raises(CentralityError, match="no hyperedges"):
        hec(Hypergraph(n=2, edges=()))
    with pytest.raises(ValueError, match="unknown"):
        run_centrality(SMALL, "pagerank")  # type: ignore[arg-type]


def test_star_center_dominates_clique_centrality() -> None:
    star = Hypergraph.from_edges([[0, leaf] for leaf in range(1, 6)])

    scores = cec(star).scores

    assert scores[0] > scores[1:].max()
    np.testing.assert_allclose(scores[1:], scores[1], rtol=1e-9)


def test_dominant_eigenvector() -> None:
    vector, eigenvalue, iterations = dominant_eigenvector(np.array([[2.0, 1.0], [1.0, 2.0]]), 1e-12)

    np.testing.assert_allclose(vector, [0.5, 0.5])
    assert eigenvalue == pytest.approx(3.0)
    assert iterations >= 1


def test_report_uses_lambda_alias(single_edge: Hypergraph) -> None:
    report = hec(single_edge).to_report()

    payload = report.model_dump(by_alias=True)
    assert set(payload) == {"method", "lambda", "iterations", "residual", "scores"}
    assert payload["lambda"] == pytest.approx(report.eigenvalue)
