"""Hypergraphs of arithmetic progressions and their palindromic quotients.

Vertices are ``1..num_vertices``.  Hyperedges are strictly increasing tuples,
kept in colexicographic order (compare the reversed tuples), which is the
order the DIMACS generators iterate progressions in.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


def colex_key(edge: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(edge))


@dataclass(frozen=True)
class Hypergraph:
    num_vertices: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vertices < 0:
            raise ValueError("num_vertices must be >= 0")
        seen = set()
        for e in self.edges:
            if any(b <= a for a, b in zip(e, e[1:])):
                raise ValueError(f"hyperedge {e} is not strictly increasing")
            if e and (e[0] < 1 or e[-1] > self.num_vertices):
                raise ValueError(f"hyperedge {e} has a vertex outside 1..{self.num_vertices}")
            if e in seen:
                raise ValueError(f"duplicate hyperedge {e}")
            seen.add(e)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.edges)

    def edge_set(self) -> set[frozenset[int]]:
        return {frozenset(e) for e in self.edges}

    def dump(self, header: str | None = None) -> str:
        """Plain text listing: optional header line, then one hyperedge per line."""
        lines = [header] if header is not None else []
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"


def _check_params(t: int, n: int) -> None:
    if t < 1:
        raise ValueError(f"progression length must be >= 1, got {t}")
    if n < 0:
        raise ValueError(f"vertex count must be >= 0, got {n}")


def progressions(t: int, n: int) -> Iterator[tuple[int, ...]]:
    """All length-t arithmetic progressions in 1..n, in colex order.

    For t == 1 the progressions are the singletons (every difference gives the
    same set, so each appears once).
    """
    _check_params(t, n)
    if t == 1:
        for v in range(1, n + 1):
            yield (v,)
        return
    # Colex order: by last element, then by the preceding elements; for a fixed
    # last element a larger difference means smaller earlier elements.
    for last in range(t, n + 1):
        for d in range((last - 1) // (t - 1), 0, -1):
            first = last - (t - 1) * d
            yield tuple(range(first, last + 1, d))


def count_progressions(t: int, n: int) -> int:
    """Closed form sum_{d>=1} max(0, n - (t-1) d)."""
    _check_params(t, n)
    if t == 1:
        return n
    total = 0
    d = 1
    while n - (t - 1) * d > 0:
        total += n - (t - 1) * d
        d += 1
    return total


def arithp(t: int, n: int) -> Hypergraph:
    """Hypergraph of arithmetic progressions of length t in 1..n."""
    return Hypergraph(n, tuple(progressions(t, n)))


def mirror(n: int, v: int) -> int:
    """Fold vertex v of 1..n onto 1..ceil(n/2) under v -> n+1-v."""
    if not 1 <= v <= n:
        raise ValueError(f"vertex {v} outside 1..{n}")
    return v if v <= (n + 1) // 2 else n + 1 - v


def minimal_sets(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """The subset-minimal members of a family (duplicates collapsed)."""
    uniq = sorted(set(sets), key=len)
    present: set[frozenset[int]] = set()
    kept: list[frozenset[int]] = []
    by_min: dict[int, list[int]] = {}  # min vertex -> bitmasks of kept sets
    for s in uniq:
        k = len(s)
        if k <= 4:
            covered = any(
                frozenset(sub) in present
                for r in range(k)
                for sub in combinations(sorted(s), r)
            )
        else:
            mask = 0
            for v in s:
                mask |= 1 << v
            covered = any(
                g & mask == g for v in s for g in by_min.get(v, ())
            )
        if covered:
            continue
        kept.append(s)
        present.add(s)
        if s:
            m = 0
            for v in s:
                m |= 1 << v
            by_min.setdefault(min(s), []).append(m)
    # A set is never covered by a set of equal size unless they are equal, and
    # equal sets were merged, so ascending-size processing is complete.
    return kept


def pdarithp(t: int, n: int) -> Hypergraph:
    """Palindromic quotient of arithp(t, n) on vertices 1..ceil(n/2).

    Each progression is mapped through :func:`mirror`; images are deduplicated
    and only the subset-minimal ones are kept.
    """
    _check_params(t, n)
    half = (n + 1) // 2
    if n == 0:
        return Hypergraph(0, ())
    images = (frozenset(mirror(n, v) for v in p) for p in progressions(t, n))
    edges = sorted((tuple(sorted(s)) for s in minimal_sets(images)), key=colex_key)
    return Hypergraph(half, tuple(edges))


def dump_pdarithp(t: int, n: int) -> str:
    return pdarithp(t, n).dump(f"palindromised hypergraph t={t} n={n}")
