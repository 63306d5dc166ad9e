from src.bench.health import HarnessHealth
from src.bench.runner import ALGORITHMS, OPERATIONS, run_bench

__all__ = ["ALGORITHMS", "HarnessHealth", "OPERATIONS", "run_bench"]
