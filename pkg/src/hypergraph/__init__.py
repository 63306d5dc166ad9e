from src.hypergraph.io import parse_hypergraph, read_hypergraph, serialize, write_hypergraph
from src.hypergraph.model import CliqueExpansion, Hypergraph, weight_of
from src.hypergraph.ops import clique_expansion, degrees, is_connected, leq_filter, volume

__all__ = [
    "CliqueExpansion",
    "Hypergraph",
    "clique_expansion",
    "degrees",
    "is_connected",
    "leq_filter",
    "parse_hypergraph",
    "read_hypergraph",
    "serialize",
    "volume",
    "weight_of",
    "write_hypergraph",
]
