from __future__ import annotations

import itertools
import math
import threading
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache


_STIRLING_ROWS: list[tuple[int, ...]] = [(1,)]
_STIRLING_LOCK = threading.Lock()


@dataclass(frozen=True, slots=True)
class Multiset:
    support: tuple[int, ...]
    multiplicities: tuple[int, ...]

    @property
    def r(self) -> int:
        return sum(self.multiplicities)

    def multiplicity(self, vertex: int) -> int:
        try:
            return self.multiplicities[self.support.index(vertex)]
        except ValueError:
            return 0

    def elements(self) -> tuple[int, ...]:
        return tuple(
            vertex for vertex, count in zip(self.support, self.multiplicities) for _ in range(count)
        )


def _stirling_row(nn: int) -> tuple[int, ...]:
    with _STIRLING_LOCK:
        while len(_STIRLING_ROWS) <= nn:
            prev = _STIRLING_ROWS[-1]
            size = len(prev)
            row = [0] * (size + 1)
            for k in range(1, size + 1):
                left = prev[k] if k < size else 0
                row[k] = k * left + prev[k - 1]
            _STIRLING_ROWS.append(tuple(row))
        return _STIRLING_ROWS[nn]


def stirling2(nn: int, k: int) -> int:
    """Stirling number of the second kind S(nn, k), exact."""
    if nn < 0 or k < 0:
        raise ValueError("stirling2 arguments must be non-negative")
    if k > nn:
        return 0
    return _stirling_row(nn)[k]


def _check_size(esize: int, r: int) -> None:
    if esize < 1 or esize > r:
        raise ValueError(f"edge size {esize} outside 1..{r}")


def blowup_count(esize: int, r: int) -> int:
    _check_size(esize, r)
    return math.factorial(esize) * stirling2(r, esize)


def unordered_count(esize: int, r: int) -> int:
    _check_size(esize, r)
    return math.comb(r - 1, r - esize)


@lru_cache(maxsize=65536)
def multinomial(multiplicities: tuple[int, ...]) -> int:
    total = math.factorial(sum(multiplicities))
    for count in multiplicities:
        total //= math.factorial(count)
    return total


def compositions(r: int, parts: int) -> Iterator[tuple[int, ...]]:
    # Cut points in lexicographic order give multiplicity tuples in lexicographic order.
    for cuts in itertools.combinations(range(1, r), parts - 1):
        bounds = (0, *cuts, r)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def enumerate_kappa(edge: Sequence[int], r: int) -> Iterator[Multiset]:
    support = tuple(edge)
    _check_size(len(support), r)
    for multiplicities in compositions(r, len(support)):
        yield Multiset(support=support, multiplicities=multiplicities)


def enumerate_beta(edge: Sequence[int], r: int) -> Iterator[tuple[int, ...]]:
    support = tuple(edge)
    _check_size(len(support), r)
    needed = set(support)
    for candidate in itertools.product(support, repeat=r):
        if needed.issubset(candidate):
            yield candidate


def phi(x: Multiset, fixed: Sequence[int], r: int | None = None) -> int:
    """Number of blowups with multiset ``x`` whose leading entries are ``fixed``.

    Computes (r-k)! / prod_v (m_x(v) - m_fixed(v))! for k = len(fixed) in {1, 2}.
    """
    order = x.r if r is None else r
    if order != x.r:
        raise ValueError(f"multiset has size {x.r}, expected {order}")
    if len(fixed) not in (1, 2):
        raise ValueError("phi supports one or two fixed positions")

    remaining = dict(zip(x.support, x.multiplicities))
    for vertex in fixed:
        if vertex not in remaining:
            raise ValueError(f"vertex {vertex} is not in the multiset support")
        remaining[vertex] -= 1
        if remaining[vertex] < 0:
            raise ValueError(f"vertex {vertex} fixed more often than its multiplicity")

    return multinomial(tuple(remaining.values()))
