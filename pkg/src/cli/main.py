from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import get_args

from src.cli import commands
from src.core.config import settings
from src.core.errors import HypertensorError
from src.kernels.dispatch import KERNELS
from src.schemas.bench import Algorithm, Operation

logger = logging.getLogger(__name__)

USAGE_EXIT_CODE = 2

Handler = Callable[[argparse.Namespace], int]


def _csv_list(choices: Sequence[str]) -> Callable[[str], list[str]]:
    def parse(text: str) -> list[str]:
        items = [item.strip() for item in text.split(",") if item.strip()]
        unknown = [item for item in items if item not in choices]
        if unknown:
            raise argparse.ArgumentTypeError(f"unknown value(s) {unknown}; choose from {list(choices)}")
        return items

    return parse


def _int_list(text: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _parallel_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--threads", type=int, default=None, help="kernel worker threads (default HT_THREADS)")
    parent.add_argument("--serial", action="store_true", help="run kernels on the calling thread")
    return parent


def _input_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--input", required=True, help="hyperedge-list file")
    parent.add_argument("--weights", choices=("banerjee", "unit"), default="banerjee")
    return parent


def _centrality_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=("zec", "hec", "cec"), default="hec")
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--max-iter", type=int, default=None)
    parser.add_argument("--topk", type=int, default=10)


def _embedding_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, required=True, help="embedding dimension")
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=None, help="seeded CP fits to try (default HT_CP_RESTARTS)")
    parser.add_argument("--laplacian", action="store_true", help="factor the normalized Laplacian tensor")
    parser.add_argument("--drop-high-degree", action="store_true")
    parser.add_argument("--fraction", type=float, default=None, help="high-degree threshold as a share of edges")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperttsv", description="Tensor-free hypergraph TTSV analytics")
    parser.add_argument("--log-level", default=None, help="logging level (default HT_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)
    parallel, inputs = _parallel_flags(), _input_flags()

    ttsv = sub.add_parser("ttsv", parents=[inputs, parallel], help="tensor times same vector")
    ttsv.add_argument("--op", type=int, choices=(1, 2), default=1)
    ttsv.add_argument("--algo", choices=KERNELS, default="auto")
    ttsv.add_argument("--vector", default="ones", help="ones | uniform | file:PATH")
    ttsv.add_argument("--seed", type=int, default=0)
    ttsv.add_argument("--out", default=None)
    ttsv.set_defaults(handler=commands.cmd_ttsv)

    bench = sub.add_parser("bench", parents=[parallel], help="kernel timing over an LEQ sweep")
    bench.add_argument("--input", required=True)
    bench.add_argument("--dataset", default=None)
    bench.add_argument("--r-min", type=int, default=2)
    bench.add_argument("--r-max", type=int, required=True)
    bench.add_argument("--timeout-secs", type=float, default=None)
    bench.add_argument("--algos", type=_csv_list(get_args(Algorithm)), default=["unordered", "genfn"])
    bench.add_argument("--ops", type=_csv_list(get_args(Operation)), default=["ttsv1"])
    bench.add_argument("--per-edge", action="store_true", help="add per-edge-size timing buckets")
    bench.add_argument("--out", default=None)
    bench.set_defaults(handler=commands.cmd_bench)

    centrality = sub.add_parser("centrality", parents=[inputs, parallel], help="eigenvector centralities")
    _centrality_flags(centrality)
    centrality.add_argument("--step", type=float, default=None, help="zec step size")
    centrality.add_argument("--compare", action="store_true", help="Kendall tau-b between all three methods")
    centrality.add_argument("--ks", type=_int_list, default=None, help="top-k cutoffs for --compare")
    centrality.add_argument("--ranking-out", default=None)
    centrality.add_argument("--out", default=None)
    centrality.set_defaults(handler=commands.cmd_centrality)

    embed = sub.add_parser("embed", parents=[inputs, parallel], help="symmetric CP embedding")
    _embedding_flags(embed)
    embed.add_argument("--out", default=None)
    embed.set_defaults(handler=commands.cmd_embed)

    cluster = sub.add_parser("cluster", parents=[inputs, parallel], help="k-means over a CP embedding")
    _embedding_flags(cluster)
    cluster.add_argument("--k", type=int, required=True)
    cluster.add_argument("--embedding-out", default=None)
    cluster.add_argument("--out", default=None)
    cluster.set_defaults(handler=commands.cmd_cluster)

    persistence = sub.add_parser("persistence", parents=[inputs], help="top-k persistence over LEQ filtrations")
    _centrality_flags(persistence)
    persistence.add_argument("--r-min", type=int, default=2)
    persistence.add_argument("--r-max", type=int, required=True)
    persistence.add_argument("--largest-component", action="store_true")
    persistence.add_argument("--out", default=None)
    persistence.set_defaults(handler=commands.cmd_persistence)

    filt = sub.add_parser("filter", help="LEQ filter a hyperedge list")
    filt.add_argument("--input", required=True)
    filt.add_argument("--max-size", type=int, required=True)
    filt.add_argument("--drop-isolated", action="store_true")
    filt.add_argument("--largest-component", action="store_true")
    filt.add_argument("--out", required=True)
    filt.set_defaults(handler=commands.cmd_filter)

    stats = sub.add_parser("stats", help="n, m, r, volume and size histogram")
    stats.add_argument("--input", required=True)
    stats.add_argument("--out", default=None)
    stats.set_defaults(handler=commands.cmd_stats)

    synth = sub.add_parser("synth", help="seeded synthetic hypergraph")
    synth.add_argument("--n", type=int, required=True)
    synth.add_argument("--m", type=int, required=True)
    synth.add_argument("--distribution", choices=("constant", "geometric", "histogram"), default="geometric")
    synth.add_argument("--size", type=float, default=8.0, help="constant size or geometric mean")
    synth.add_argument("--histogram", default=None, help="size:count pairs, e.g. 2:10,3:5")
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", required=True)
    synth.set_defaults(handler=commands.cmd_synth)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    handler: Handler = args.handler
    try:
        return handler(args)
    except HypertensorError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        logger.error("%s", exc)
        return USAGE_EXIT_CODE
    except Exception:
        logger.exception("Unexpected failure in %s", args.command)
        return 1
