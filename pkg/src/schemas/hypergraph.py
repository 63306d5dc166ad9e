from __future__ import annotations

from pydantic import BaseModel, Field


class HypergraphMetadata(BaseModel):
    n: int = Field(ge=0)
    m: int = Field(ge=0)
    r: int = Field(ge=0)
    vol: int = Field(ge=0)
    id_map: list[int] | None = None


class HypergraphStats(BaseModel):
    n: int = Field(ge=0)
    m: int = Field(ge=0)
    r: int = Field(ge=0)
    vol: int = Field(ge=0)
    mean_edge_size: float = Field(ge=0)
    size_histogram: dict[int, int]
