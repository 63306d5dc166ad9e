from __future__ import annotations

import contextlib
import csv
import sys
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path
from typing import IO

from pydantic import BaseModel


def format_float(value: float) -> str:
    return f"{value:.17g}"


def _cell(value: object) -> object:
    if isinstance(value, float):
        return format_float(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    return value


@contextlib.contextmanager
def open_output(path: str | Path | None) -> Iterator[IO[str]]:
    """Yield ``path`` opened for writing, or stdout when no path is given."""
    if path is None:
        yield sys.stdout
        return
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        yield handle


def write_csv(path: str | Path | None, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    with open_output(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])


def write_json(path: str | Path | None, payload: BaseModel) -> None:
    with open_output(path) as handle:
        handle.write(payload.model_dump_json(by_alias=True, indent=2))
        handle.write("\n")
