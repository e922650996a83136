"""Exhaustive ground truth for small instances, used by the tests.

Deliberately shares no code with the hypergraph, encoding or solver
modules: progressions are generated by a plain double loop and every
bitstring of length n (or every half of a palindrome) is checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_BITS = 26
_CHUNK = 1 << 20


class OracleBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class OracleVerdict:
    satisfiable: bool
    count: int
    witnesses: tuple[str, ...] | None = None


def progression_positions(t: int, n: int) -> list[tuple[int, ...]]:
    if t == 1:
        return [(a,) for a in range(1, n + 1)]
    out = []
    for a in range(1, n + 1):
        d = 1
        while a + (t - 1) * d <= n:
            out.append(tuple(a + i * d for i in range(t)))
            d += 1
    return out


def has_progression(bits: str, block: str, t: int) -> bool:
    """Naive scan: does `block` ('0' or '1') contain a length-t progression?"""
    n = len(bits)
    if t == 1:
        return block in bits
    for a in range(n):
        for d in range(1, n):
            if a + (t - 1) * d >= n:
                break
            if all(bits[a + i * d] == block for i in range(t)):
                return True
    return False


def is_good_naive(bits: str, t0: int, t1: int) -> bool:
    return not has_progression(bits, "0", t0) and not has_progression(bits, "1", t1)


def _masks(t: int, n: int, pos_to_bit) -> np.ndarray:
    ms = set()
    for ap in progression_positions(t, n):
        m = 0
        for p in ap:
            m |= 1 << pos_to_bit(p)
        ms.add(m)
    return np.array(sorted(ms), dtype=np.uint64)


def _scan(nbits: int, m0: np.ndarray, m1: np.ndarray, want: bool):
    count = 0
    found = []
    for lo in range(0, 1 << nbits, _CHUNK):
        x = np.arange(lo, min(lo + _CHUNK, 1 << nbits), dtype=np.uint64)
        for m in m0:
            x = x[(x & m) != 0]          # block 0 may not cover a t0-progression
        for m in m1:
            x = x[(x & m) != m]          # block 1 may not cover a t1-progression
        count += len(x)
        if want:
            found.extend(int(v) for v in x)
    return count, found


def enumerate_partitions(t0: int, t1: int, n: int, want_witnesses: bool = False) -> OracleVerdict:
    """All good partitions of 1..n; bit i of the string is vertex i."""
    if n > MAX_BITS:
        raise OracleBudgetError(f"n={n} exceeds the oracle limit {MAX_BITS}")
    # vertex p is bit n-p, so integer order is string order
    m0 = _masks(t0, n, lambda p: n - p)
    m1 = _masks(t1, n, lambda p: n - p)
    count, xs = _scan(n, m0, m1, want_witnesses)
    wits = tuple(format(x, f"0{n}b") if n else "" for x in xs) if want_witnesses else None
    return OracleVerdict(count > 0, count, wits)


def enumerate_pd(t0: int, t1: int, n: int, want_witnesses: bool = False) -> OracleVerdict:
    """Good palindromic partitions of 1..n, enumerated by their first ceil(n/2) bits."""
    h = (n + 1) // 2
    if h > MAX_BITS:
        raise OracleBudgetError(f"ceil(n/2)={h} exceeds the oracle limit {MAX_BITS}")

    def bit(p):
        q = min(p, n + 1 - p)
        return h - q

    m0 = _masks(t0, n, bit)
    m1 = _masks(t1, n, bit)
    count, xs = _scan(h, m0, m1, want_witnesses)
    wits = None
    if want_witnesses:
        wits = []
        for x in xs:
            half = format(x, f"0{h}b") if h else ""
            wits.append(half + (half[:-1] if n % 2 else half)[::-1])
        wits = tuple(wits)
    return OracleVerdict(count > 0, count, wits)
