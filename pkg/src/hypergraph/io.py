from __future__ import annotations

import logging
import re
from pathlib import Path

from src.core.errors import EmptyHypergraphError, HypergraphParseError
from src.hypergraph.model import Hypergraph
from src.hypergraph.ops import volume
from src.schemas.hypergraph import HypergraphMetadata

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r"[\s,]+")
_VERTEX_ID = re.compile(r"[0-9]+")


def parse_hypergraph(text: bytes | str) -> Hypergraph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise HypergraphParseError("input is not valid UTF-8") from exc

    raw_edges: list[tuple[int, ...]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        ids: set[int] = set()
        for token in _SEPARATORS.split(stripped):
            if not token:
                continue
            if not _VERTEX_ID.fullmatch(token):
                raise HypergraphParseError(f"malformed vertex id {token!r}", line=lineno)
            ids.add(int(token))
        if not ids:
            raise HypergraphParseError("line holds no vertex ids", line=lineno)
        raw_edges.append(tuple(sorted(ids)))

    if not raw_edges:
        raise EmptyHypergraphError("input holds no hyperedges")

    labels = sorted({v for edge in raw_edges for v in edge})
    if labels[-1] == len(labels) - 1:
        return Hypergraph(n=len(labels), edges=tuple(raw_edges))

    position = {label: index for index, label in enumerate(labels)}
    edges = tuple(tuple(position[v] for v in edge) for edge in raw_edges)
    logger.debug("Relabeled %s vertex ids densely", len(labels))
    return Hypergraph(n=len(labels), edges=edges, id_map=tuple(labels))


def serialize(H: Hypergraph) -> str:
    lines = [" ".join(str(H.original_label(v)) for v in edge) for edge in H.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def metadata(H: Hypergraph) -> HypergraphMetadata:
    return HypergraphMetadata(
        n=H.n,
        m=H.m,
        r=H.r,
        vol=volume(H),
        id_map=list(H.id_map) if H.id_map is not None else None,
    )


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def read_hypergraph(path: str | Path) -> Hypergraph:
    path = Path(path)
    return parse_hypergraph(path.read_bytes())


def write_hypergraph(path: str | Path, H: Hypergraph, sidecar: bool = True) -> None:
    path = Path(path)
    path.write_text(serialize(H), encoding="utf-8")
    if sidecar:
        sidecar_path(path).write_text(metadata(H).model_dump_json(indent=2), encoding="utf-8")


def read_metadata(path: str | Path) -> HypergraphMetadata:
    return HypergraphMetadata.model_validate_json(sidecar_path(Path(path)).read_text(encoding="utf-8"))
