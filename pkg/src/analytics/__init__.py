from src.analytics.centrality import CentralityResult, cec, hec, zec
from src.analytics.clustering import ClusterAssignment, cluster_embedding, embed_and_cluster
from src.analytics.decomp import CPModel, cp_fit, cp_fit_restarts, cp_gradients, cp_objective, laplacian_ttsv1
from src.analytics.gram import gram_mate_fixture, sign_partition
from src.analytics.ranking import compare_methods, kendall_tau_b, persistence_sweep, ranking

__all__ = [
    "CPModel",
    "CentralityResult",
    "ClusterAssignment",
    "cec",
    "cluster_embedding",
    "compare_methods",
    "cp_fit",
    "cp_fit_restarts",
    "cp_gradients",
    "cp_objective",
    "embed_and_cluster",
    "gram_mate_fixture",
    "hec",
    "kendall_tau_b",
    "laplacian_ttsv1",
    "persistence_sweep",
    "ranking",
    "sign_partition",
    "zec",
]
