from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.core.errors import EmptyHypergraphError, HypergraphParseError
from src.hypergraph.io import parse_hypergraph, read_hypergraph, read_metadata, serialize, write_hypergraph
from src.hypergraph.model import Hypergraph, banerjee_weight
from src.hypergraph.ops import (
    clique_expansion,
    degrees,
    drop_high_degree,
    hypergraph_stats,
    is_connected,
    largest_component,
    leq_filter,
    permute,
    scale_weights,
    volume,
    with_order,
    with_weights,
)
from src.hypergraph.synthetic import synthetic_hypergraph


def test_parse_relabels_sparse_ids() -> None:
    H = parse_hypergraph("1 3\n1 2 3\n")

    assert H.n == 3
    assert H.edges == ((0, 2), (0, 1, 2))
    assert H.id_map == (1, 2, 3)
    assert H.r == 3


def test_parse_accepts_commas_comments_and_repeats() -> None:
    H = parse_hypergraph("# comment\n\n0,1\n")
    assert H.edges == ((0, 1),)
    assert H.id_map is None

    repeated = parse_hypergraph(b"0 0 1\n")
    assert repeated.edges == ((0, 1),)


def test_parse_errors() -> None:
    with pytest.raises(HypergraphParseError, match="line 2"):
        parse_hypergraph("0 1\n0 x\n")
    with pytest.raises(HypergraphParseError, match="UTF-8"):
        parse_hypergraph(b"\xff\xfe")
    with pytest.raises(EmptyHypergraphError):
        parse_hypergraph("# nothing here\n")


def test_model_rejects_invalid_edges() -> None:
    with pytest.raises(ValueError, match="strictly increasing"):
        Hypergraph(n=3, edges=((1, 0),))
    with pytest.raises(ValueError, match="outside"):
        Hypergraph(n=2, edges=((0, 2),))
    with pytest.raises(ValueError, match="at least the largest"):
        Hypergraph.from_edges([[0, 1, 2]], order=2)
    with pytest.raises(ValueError, match="positive"):
        Hypergraph.from_edges([[0, 1]], weights=[-1.0])


def test_banerjee_weights() -> None:
    H = Hypergraph.from_edges([[0, 1], [0, 1, 2]])

    assert banerjee_weight(2, 3) == Fraction(1, 3)
    assert banerjee_weight(3, 3) == Fraction(1, 2)
    assert H.weight_of(0) == pytest.approx(1 / 3)
    assert H.weight_of(1) == pytest.approx(1 / 2)
    assert H.weight_of(0, "unit") == 1.0
    assert H.exact_weight(0) == Fraction(1, 3)


def test_order_override_changes_banerjee_weights() -> None:
    H = with_order(Hypergraph.from_edges([[0, 1]]), 3)

    assert H.r == 3
    assert H.exact_weight(0) == Fraction(2, 6)


def test_degrees_and_volume() -> None:
    H = Hypergraph.from_edges([[0, 1], [0, 1, 2]])

    assert degrees(H).tolist() == [2.0, 2.0, 1.0]
    assert volume(H) == 5


def test_leq_filter() -> None:
    H = Hypergraph.from_edges([[0, 1], [1, 2, 3], [0, 1, 2, 3, 4]])

    filtered = leq_filter(H, 3)
    assert filtered.edges == ((0, 1), (1, 2, 3))
    assert filtered.n == 5
    assert filtered.r == 3

    compact = leq_filter(H, 3, drop_isolated=True)
    assert compact.n == 4
    assert compact.id_map is None

    assert leq_filter(H, 5) is H
    with pytest.raises(ValueError):
        leq_filter(H, 1)
    with pytest.raises(EmptyHypergraphError):
        leq_filter(Hypergraph.from_edges([[0, 1, 2]]), 2)


def test_leq_filter_keeps_original_labels() -> None:
    H = parse_hypergraph("10 11\n11 12 13\n")

    filtered = leq_filter(H, 2, drop_isolated=True)

    assert filtered.edges == ((0, 1),)
    assert filtered.id_map == (10, 11)
    assert filtered.original_label(1) == 11


def test_leq_filter_keeps_custom_weights() -> None:
    H = Hypergraph.from_edges([[0, 1], [0, 1, 2], [1, 2]], weights=[1.0, 2.0, 3.0])

    filtered = leq_filter(H, 2)

    assert filtered.edge_weights.tolist() == [1.0, 3.0]


def test_clique_expansion() -> None:
    H = Hypergraph.from_edges([[0, 1, 2], [0, 1]])

    expansion = clique_expansion(H)

    assert expansion.weight(0, 1) == 2
    assert expansion.weight(2, 0) == 1
    assert expansion.weight(1, 1) == 0
    np.testing.assert_array_equal(expansion.matrix().toarray(), [[0, 2, 1], [2, 0, 1], [1, 1, 0]])


def test_connectivity(single_edge: Hypergraph, two_components: Hypergraph) -> None:
    assert is_connected(single_edge)
    assert not is_connected(two_components)
    assert is_connected(Hypergraph(n=1, edges=()))
    assert not is_connected(Hypergraph(n=3, edges=((0, 1),)))

    largest = largest_component(two_components)
    assert largest.n == 3
    assert largest.edges == ((0, 1, 2),)


def test_largest_component_keeps_labels() -> None:
    H = parse_hypergraph("5 6\n7 8 9\n")

    largest = largest_component(H)

    assert largest.id_map == (7, 8, 9)


def test_drop_high_degree() -> None:
    H = Hypergraph.from_edges([[0, 1], [0, 2], [0, 3], [0, 4], [1, 2]])

    trimmed = drop_high_degree(H, 0.5)

    assert trimmed.n == 4
    assert trimmed.edges == ((0,), (1,), (2,), (3,), (0, 1))
    assert trimmed.id_map == (1, 2, 3, 4)
    assert drop_high_degree(H, 0.9) is H


def test_permute_is_equivariant(rng: np.random.Generator, random_hypergraph) -> None:
    for _ in range(20):
        H = random_hypergraph(rng)
        perm = [int(v) for v in rng.permutation(H.n)]

        moved = permute(H, perm)

        assert moved.r == H.r
        np.testing.assert_array_equal(degrees(moved)[perm], degrees(H))
    with pytest.raises(ValueError):
        permute(Hypergraph.from_edges([[0, 1]]), [0, 0])


def test_weight_schemes() -> None:
    H = Hypergraph.from_edges([[0, 1], [0, 1, 2]])

    assert with_weights(H, "unit").edge_weights.tolist() == [1.0, 1.0]
    custom = with_weights(H, [2.0, 5.0])
    assert custom.weighting == "custom"
    assert scale_weights(custom, 0.5).edge_weights.tolist() == [1.0, 2.5]
    with pytest.raises(ValueError):
        with_weights(H, "custom")


def test_stats() -> None:
    stats = hypergraph_stats(Hypergraph.from_edges([[0, 1], [0, 1, 2], [2, 3]]))

    assert (stats.n, stats.m, stats.r, stats.vol) == (4, 3, 3, 7)
    assert stats.size_histogram == {2: 2, 3: 1}
    assert stats.mean_edge_size == pytest.approx(7 / 3)


def test_file_round_trip_with_sidecar(tmp_path: Path) -> None:
    H = parse_hypergraph("4 9\n2 4 9\n2\n")
    path = tmp_path / "graph.txt"

    write_hypergraph(path, H)
    loaded = read_hypergraph(path)
    meta = read_metadata(path)

    assert serialize(H) == "4 9\n2 4 9\n2\n"
    assert loaded.edges == H.edges
    assert loaded.id_map == H.id_map
    assert (meta.n, meta.m, meta.r, meta.vol) == (3, 3, 3, 6)
    assert meta.id_map == [2, 4, 9]


def test_synthetic_hypergraph_is_seeded() -> None:
    first = synthetic_hypergraph(50, 30, "constant", 3, seed=1)
    second = synthetic_hypergraph(50, 30, "constant", 3, seed=1)

    assert first == second
    assert all(len(edge) == 3 for edge in first.edges)
    assert first.m == 30

    mixed = synthetic_hypergraph(20, 40, "histogram", histogram={2: 3, 4: 1}, seed=2)
    assert {len(edge) for edge in mixed.edges} <= {2, 4}

    geometric = synthetic_hypergraph(100, 200, "geometric", 6.0, seed=3)
    assert min(len(edge) for edge in geometric.edges) >= 2


def test_synthetic_rejects_bad_parameters() -> None:
    with pytest.raises(ValueError):
        synthetic_hypergraph(0, 3)
    with pytest.raises(ValueError, match="mean above 2"):
        synthetic_hypergraph(10, 3, "geometric", 2.0)
    with pytest.raises(ValueError, match="histogram"):
        synthetic_hypergraph(10, 3, "histogram")
