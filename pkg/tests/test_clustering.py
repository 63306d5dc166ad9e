from __future__ import annotations

import itertools

import numpy as np
import pytest

from src.analytics.clustering import cluster_embedding, embed_and_cluster
from src.analytics.decomp import cp_fit_restarts
from src.hypergraph.model import Hypergraph

SMALL = Hypergraph.from_edges([[0, 1, 2], [1, 2, 3], [2, 3], [0, 3], [1, 3, 4], [0, 4]])
# two complete 3-uniform blocks with no edge between them
BLOCKS = Hypergraph.from_edges(
    [*itertools.combinations(range(5), 3), *itertools.combinations(range(5, 10), 3)]
)


def test_single_cluster_inertia_is_total_variance(rng: np.random.Generator) -> None:
    E = rng.normal(size=(12, 3))

    assignment = cluster_embedding(E, 1)

    assert assignment.labels.tolist() == [0] * 12
    assert assignment.k == 1
    assert assignment.inertia == pytest.approx(float(np.sum((E - E.mean(axis=0)) ** 2)), rel=1e-9)


def test_one_cluster_per_row_has_no_inertia(rng: np.random.Generator) -> None:
    E = rng.normal(size=(6, 2))

    assignment = cluster_embedding(E, 6)

    assert sorted(assignment.labels.tolist()) == list(range(6))
    assert assignment.inertia <= 1e-10


def test_planted_partition_is_recovered(rng: np.random.Generator) -> None:
    E = np.vstack([rng.normal(0.0, 0.1, size=(5, 2)), rng.normal(10.0, 0.1, size=(5, 2))])
    order = rng.permutation(10)

    assignment = cluster_embedding(E[order], 2, seed=5)

    groups = (order >= 5).astype(int)
    expected = groups if groups[0] == 0 else 1 - groups
    np.testing.assert_array_equal(assignment.labels, expected)
    assert assignment.centers.shape == (2, 2)


def test_labels_are_numbered_by_first_appearance(rng: np.random.Generator) -> None:
    E = np.vstack([rng.normal(5.0, 0.1, size=(3, 2)), rng.normal(-5.0, 0.1, size=(3, 2))])

    labels = cluster_embedding(E, 2, seed=1).labels

    assert labels.tolist() == [0, 0, 0, 1, 1, 1]


def test_cluster_embedding_validates_input() -> None:
    with pytest.raises(ValueError, match="2-D"):
        cluster_embedding(np.ones(4), 1)
    with pytest.raises(ValueError, match="k must lie"):
        cluster_embedding(np.ones((3, 2)), 4)


@pytest.mark.parametrize("use_laplacian", [False, True])
def test_embed_and_cluster(use_laplacian: bool) -> None:
    model, assignment = embed_and_cluster(SMALL, q=2, k=2, seed=3, use_laplacian=use_laplacian, steps=20)

    assert model.factors.shape == (5, 2)
    assert assignment.labels.shape == (5,)
    assert assignment.labels[0] == 0
    assert set(assignment.labels.tolist()) <= {0, 1}
    with pytest.raises(ValueError, match="clusters"):
        embed_and_cluster(SMALL, q=2, k=6)


def test_embed_and_cluster_separates_disjoint_blocks() -> None:
    model, assignment = embed_and_cluster(BLOCKS, q=2, k=2, seed=0)

    assert assignment.labels.tolist() == [0] * 5 + [1] * 5
    assert model.factors.shape == (10, 2)


def test_more_restarts_never_raise_the_objective() -> None:
    single = cp_fit_restarts(BLOCKS, 2, restarts=1, seed=0, steps=30)
    several = cp_fit_restarts(BLOCKS, 2, restarts=4, seed=0, steps=30)

    assert several.trace[-1] <= single.trace[-1]
    with pytest.raises(ValueError, match="restarts"):
        cp_fit_restarts(BLOCKS, 2, restarts=0)
