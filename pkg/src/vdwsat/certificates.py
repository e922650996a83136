"""Partition certificates: compact notation, goodness checks, pattern statistics.

A certificate is a bitstring over {0,1}; position i (1-based) carries 1 iff
vertex i is in block 1.  Compact notation writes runs with exponents, e.g.
``01^20^21^20`` for ``01100110``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import groupby
from typing import Iterable, Sequence


class CertificateParseError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionCertificate:
    bits: str

    def __post_init__(self):
        if not set(self.bits) <= {"0", "1"}:
            raise ValueError("certificate bits must be '0'/'1'")

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits

    def block(self, b: int) -> list[int]:
        c = str(b)
        return [i for i, x in enumerate(self.bits, start=1) if x == c]

    def assignment(self) -> tuple[bool, ...]:
        return tuple(x == "1" for x in self.bits)

    def compact(self) -> str:
        return emit_compact(self)


def _bits(cert: PartitionCertificate | str) -> str:
    return cert.bits if isinstance(cert, PartitionCertificate) else cert


# an unbraced exponent is one digit, as in TeX: 0^21^2 is 0^{2}1^{2}
_TOKEN = re.compile(r"([01])(?:\^(?:\{(\d+)\}|(\d)))?")


def parse_compact(text: str) -> PartitionCertificate:
    s = re.sub(r"\s+", "", text)
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None or m.end() == pos:
            raise CertificateParseError(f"unexpected {s[pos:pos + 10]!r} at offset {pos}")
        exp = m.group(2) or m.group(3)
        k = int(exp) if exp is not None else 1
        if k == 0:
            raise CertificateParseError(f"zero exponent at offset {pos}")
        out.append(m.group(1) * k)
        pos = m.end()
        if pos < len(s) and s[pos] == "^":
            raise CertificateParseError(f"malformed exponent at offset {pos}")
    return PartitionCertificate("".join(out))


def emit_compact(cert: PartitionCertificate | str, braces: bool = False) -> str:
    parts = []
    for b, run in groupby(_bits(cert)):
        k = sum(1 for _ in run)
        if k == 1:
            parts.append(b)
        else:
            parts.append(f"{b}^{{{k}}}" if braces or k > 9 else f"{b}^{k}")
    return "".join(parts)


@dataclass(frozen=True)
class Violation:
    start: int
    difference: int
    length: int
    block: int

    def progression(self) -> tuple[int, ...]:
        return tuple(self.start + i * self.difference for i in range(self.length))


def verify_good(cert: PartitionCertificate | str, t0: int, t1: int) -> Violation | None:
    """None if good; else the violating progression first in (start, difference) order."""
    bits = _bits(cert)
    n = len(bits)
    lengths = (t0, t1)
    inblock = [None] + [int(c) for c in bits]
    for a in range(1, n + 1):
        b = inblock[a]
        t = lengths[b]
        if t <= 1:
            return Violation(a, 1, t, b)
        d = 1
        while a + (t - 1) * d <= n:
            if all(inblock[a + i * d] == b for i in range(1, t)):
                return Violation(a, d, t, b)
            d += 1
    return None


def is_good(cert, t0: int, t1: int) -> bool:
    return verify_good(cert, t0, t1) is None


def is_palindrome(cert: PartitionCertificate | str) -> bool:
    bits = _bits(cert)
    return bits == bits[::-1]


def expand_half(half: PartitionCertificate | str | Sequence[int], n: int) -> PartitionCertificate:
    """Reflect a partition of 1..ceil(n/2) to a palindrome of length n."""
    if not isinstance(half, (str, PartitionCertificate)):
        half = "".join(str(int(b)) for b in half)
    h = _bits(half)
    if len(h) != (n + 1) // 2:
        raise ValueError(f"half has length {len(h)}, expected ceil({n}/2) = {(n + 1) // 2}")
    tail = h[:-1] if n % 2 else h
    return PartitionCertificate(h + tail[::-1])


def halve(cert: PartitionCertificate | str) -> PartitionCertificate:
    bits = _bits(cert)
    return PartitionCertificate(bits[: (len(bits) + 1) // 2])


# --- statistics -------------------------------------------------------------

def run_lengths(bits: str, symbol: str) -> tuple[int, ...]:
    return tuple(sum(1 for _ in g) for b, g in groupby(bits) if b == symbol)


def peaks_valleys(seq: Sequence[int]) -> tuple[int, int]:
    """Peaks and valleys of a sequence, equal neighbours merged first.

    After merging, an element is a peak if it exceeds all its neighbours and a
    valley if it is below all of them; endpoints have one neighbour.  A
    constant non-empty sequence has one peak and no valley.
    """
    c = [k for k, _ in groupby(seq)]
    if not c:
        return 0, 0
    if len(c) == 1:
        return 1, 0
    np_ = nv = 0
    for i, x in enumerate(c):
        nbrs = c[max(i - 1, 0):i] + c[i + 1:i + 2]
        if all(x > y for y in nbrs):
            np_ += 1
        elif all(x < y for y in nbrs):
            nv += 1
    return np_, nv


def max_plateau(seq: Sequence[int]) -> int:
    return max((sum(1 for _ in g) for _, g in groupby(seq)), default=0)


@dataclass(frozen=True)
class CertificateStats:
    n: int
    n0: int
    n1: int
    n00: int
    epos0: tuple[int, ...]
    epos1: tuple[int, ...]
    runs0: int
    runs1: int
    long_runs0: int
    long_runs1: int
    peaks0: int
    valleys0: int
    peaks1: int
    valleys1: int
    max_plateau0: int
    max_plateau1: int

    @property
    def peaks_valleys0(self) -> int:
        return self.peaks0 + self.valleys0

    @property
    def peaks_valleys1(self) -> int:
        return self.peaks1 + self.valleys1

    def quintuple(self) -> list[list[int]]:
        """Five (block 0, block 1) pairs: counts, runs, runs of length >= 2,
        peaks+valleys of the run lengths, longest constant stretch of run lengths."""
        return [
            [self.n0, self.n1],
            [self.runs0, self.runs1],
            [self.long_runs0, self.long_runs1],
            [self.peaks_valleys0, self.peaks_valleys1],
            [self.max_plateau0, self.max_plateau1],
        ]

    def to_record(self) -> dict:
        return {
            "n": self.n, "n0": self.n0, "n1": self.n1, "n00": self.n00,
            "epos0": list(self.epos0), "epos1": list(self.epos1),
            "np0": self.peaks0, "nv0": self.valleys0,
            "np1": self.peaks1, "nv1": self.valleys1,
            "quintuple": self.quintuple(),
        }


def stats(cert: PartitionCertificate | str) -> CertificateStats:
    bits = _bits(cert)
    e0 = run_lengths(bits, "0")
    e1 = run_lengths(bits, "1")
    p0, v0 = peaks_valleys(e0)
    p1, v1 = peaks_valleys(e1)
    return CertificateStats(
        n=len(bits),
        n0=bits.count("0"),
        n1=bits.count("1"),
        # adjacent "00" pairs away from both ends; the known max of 2 over
        # S(5) rules out counting a leading or trailing "00".  long_runs0
        # keeps the count with the ends included
        n00=sum(1 for i in range(1, len(bits) - 2) if bits[i] == bits[i + 1] == "0"),
        epos0=e0,
        epos1=e1,
        runs0=len(e0),
        runs1=len(e1),
        long_runs0=sum(1 for k in e0 if k >= 2),
        long_runs1=sum(1 for k in e1 if k >= 2),
        peaks0=p0, valleys0=v0, peaks1=p1, valleys1=v1,
        max_plateau0=max_plateau(e0),
        max_plateau1=max_plateau(e1),
    )


@dataclass
class ConjectureReport:
    t: int
    count: int
    min_n0: int | None = None
    max_n0: int | None = None
    max_n00: int | None = None
    min_n1: int | None = None
    max_n1: int | None = None
    T: int | None = None
    T_witness: str | None = None
    max_equal_exponents: int | None = None
    n0_spread_ok: bool | None = None
    n00_ok: bool | None = None
    n1_upper_bound: int | None = None
    n1_upper_ok: bool | None = None
    n1_lower_ok: bool | None = None
    three_equal_exponents: bool | None = None
    extra: dict = field(default_factory=dict)

    @property
    def T_ratio(self) -> float | None:
        return None if self.T is None else self.T / self.t

    def to_record(self) -> dict:
        d = dict(self.__dict__)
        d["T_ratio"] = self.T_ratio
        return d


def conjecture_checks(certs: Iterable[PartitionCertificate | str], t: int,
                      w_prev: int | None = None,
                      prev_certs: Iterable[PartitionCertificate | str] | None = None) -> ConjectureReport:
    """Evaluate the pattern conjectures over a set of good partitions for (3, t).

    ``w_prev`` is w(2;3,t-1) for the upper bound on n1; ``prev_certs`` is the
    solution set for t-1, for the lower bound.
    """
    sts = [stats(c) for c in certs]
    rep = ConjectureReport(t=t, count=len(sts))
    if not sts:
        return rep
    n0s = [s.n0 for s in sts]
    n1s = [s.n1 for s in sts]
    rep.min_n0, rep.max_n0 = min(n0s), max(n0s)
    rep.max_n00 = max(s.n00 for s in sts)
    rep.min_n1, rep.max_n1 = min(n1s), max(n1s)
    best = min(sts, key=lambda s: s.peaks_valleys1)
    rep.T = best.peaks_valleys1
    rep.T_witness = " ".join(map(str, best.epos1))
    rep.max_equal_exponents = max(s.max_plateau1 for s in sts)
    rep.n0_spread_ok = rep.max_n0 - rep.min_n0 <= t
    rep.n00_ok = rep.max_n00 < t
    rep.three_equal_exponents = rep.max_equal_exponents >= 3
    if w_prev is not None:
        rep.n1_upper_bound = w_prev + 2 * t
        rep.n1_upper_ok = rep.max_n1 <= rep.n1_upper_bound
    if prev_certs is not None:
        prev = [stats(c).n1 for c in prev_certs]
        if prev:
            rep.n1_lower_ok = max(prev) <= rep.min_n1
    return rep


# --- stored fixtures ----------------------------------------------------------

@lru_cache(maxsize=1)
def fixture_manifest() -> dict:
    with resources.files("vdwsat.data").joinpath("certificates.json").open() as f:
        return json.load(f)


def fixture_text(name: str) -> str:
    return resources.files("vdwsat.data.certificates").joinpath(name).read_text()


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str          # "vdw" or "pd"
    t0: int
    t1: int
    n: int             # claimed length of the (full) partition
    half: bool         # stored text is the first ceil(n/2) bits of a palindrome
    excess_trailing_bits: int
    source: str
    text: str

    def raw(self) -> PartitionCertificate:
        """The stored text, parsed as is."""
        return parse_compact(self.text)

    def certificate(self) -> PartitionCertificate:
        """The full partition of the claimed length."""
        c = self.raw()
        if self.excess_trailing_bits:
            c = PartitionCertificate(c.bits[: len(c) - self.excess_trailing_bits])
        return expand_half(c, self.n) if self.half else c


def load_fixtures(kind: str | None = None) -> list[Fixture]:
    out = []
    for entry in fixture_manifest()["fixtures"]:
        if kind is not None and entry["kind"] != kind:
            continue
        out.append(Fixture(
            name=entry["file"], kind=entry["kind"], t0=entry["t0"], t1=entry["t1"],
            n=entry["n"], half=entry.get("half", False),
            excess_trailing_bits=entry.get("excess_trailing_bits", 0),
            source=entry["source"], text=fixture_text(entry["file"]),
        ))
    return out


def load_fixture(name: str) -> Fixture:
    for f in load_fixtures():
        if f.name == name:
            return f
    raise KeyError(name)
