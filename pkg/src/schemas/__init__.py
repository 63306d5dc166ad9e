from src.schemas.bench import BenchRecord
from src.schemas.centrality import CentralityReport, KendallRow
from src.schemas.hypergraph import HypergraphMetadata, HypergraphStats

__all__ = [
    "BenchRecord",
    "CentralityReport",
    "KendallRow",
    "HypergraphMetadata",
    "HypergraphStats",
]
