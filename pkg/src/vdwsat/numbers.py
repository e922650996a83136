"""Drivers for w(2;t0,t1) and the palindromic pair vdw_pd(2;t0,t1) = (p, q).

Ordinary instances are monotone in n (a good partition of 1..n restricts to
one of 1..n-1), so the number is the first unsatisfiable n.  Palindromic
instances are only monotone within a parity class (n -> n-2 drops the two
end vertices), so each parity has its own first unsatisfiable n.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .certificates import PartitionCertificate, expand_half, is_good, is_palindrome
from .cnf import CnfFormula, encode_pd, encode_vdw, pd_middle_unit
from .dpll import SolveResult, Verdict, dpll
from .local_search import LsConfig, local_search, warm_start_pd, warm_start_vdw


class SoundnessError(RuntimeError):
    """Solver answers contradict each other or a proven structural fact."""


class IncompleteCertification(RuntimeError):
    pass


# --- reference values ---------------------------------------------------------

_W_EXACT = dict(zip(range(3, 20), (9, 18, 22, 32, 46, 58, 77, 97, 114, 135, 160, 186, 218,
                                    238, 279, 312, 349)))
_W_LOWER = dict(zip(range(20, 40), (389, 416, 464, 516, 593, 656, 727, 770, 827, 868, 903,
                                     931, 1007, 1064, 1144, 1205, 1258, 1339, 1379, 1419)))
_PD_EXACT = {
    3: (6, 9), 4: (15, 16), 5: (16, 21), 6: (30, 31), 7: (41, 44), 8: (52, 57),
    9: (62, 77), 10: (93, 94), 11: (110, 113), 12: (126, 135), 13: (142, 155),
    14: (174, 183), 15: (200, 205), 16: (232, 237), 17: (256, 279), 18: (299, 312),
    19: (338, 347), 20: (380, 389), 21: (400, 405), 22: (444, 463), 23: (506, 507),
    24: (568, 593), 25: (586, 607),
}
# found by local search only: lower bounds, believed exact for t <= 35
_PD_LOWER = {
    26: (634, 643), 27: (664, 699), 28: (728, 743), 29: (810, 821), 30: (844, 855),
    31: (916, 931), 32: (958, 963), 33: (996, 1005), 34: (1054, 1081), 35: (1114, 1155),
    36: (1186, 1213), 37: (1272, 1295), 38: (1336, 1369), 39: (1406, 1411),
}


@dataclass(frozen=True)
class KnownValue:
    t: int
    w: int
    w_exact: bool            # False: w is a lower bound
    pd: tuple[int, int]
    pd_exact: bool           # False: pd is a lower-bound pair

    @property
    def span(self) -> int:
        return self.pd[1] - self.pd[0]

    @property
    def gap(self) -> int:
        """w - q; a lower bound on the true gap unless w is exact."""
        return self.w - self.pd[1]


def known_values() -> dict[int, KnownValue]:
    """Reference table for t0 = 3, t = 3..39."""
    out = {}
    for t in range(3, 40):
        w_exact = t in _W_EXACT
        w = _W_EXACT[t] if w_exact else _W_LOWER[t]
        pd_exact = t in _PD_EXACT
        out[t] = KnownValue(t, w, w_exact, _PD_EXACT[t] if pd_exact else _PD_LOWER[t], pd_exact)
    return out


# --- generic per-n probing ----------------------------------------------------

@dataclass(frozen=True)
class Probe:
    n: int
    verdict: Verdict
    method: str                               # "local-search", "dpll" or "trivial"
    certificate: PartitionCertificate | None = None
    nodes: int = 0
    flips: int = 0
    wall_time: float = 0.0


@dataclass
class SatProfile:
    """Verdicts per n; `solved` holds the probes actually run."""
    palindromic: bool
    solved: dict[int, Probe] = field(default_factory=dict)

    def verdict_at(self, n: int) -> Verdict:
        if n in self.solved:
            return self.solved[n].verdict
        # consequences of monotonicity (step 1, or step 2 for palindromes)
        step = 2 if self.palindromic else 1
        for m, pr in self.solved.items():
            if pr.verdict is Verdict.UNSAT and n > m and (n - m) % step == 0:
                return Verdict.UNSAT
            if pr.verdict is Verdict.SAT and n < m and (m - n) % step == 0:
                return Verdict.SAT
        return Verdict.INDETERMINATE

    def as_dict(self, lo: int, hi: int) -> dict[int, Verdict]:
        return {n: self.verdict_at(n) for n in range(lo, hi + 1)}


@dataclass(frozen=True)
class Limits:
    """Per-n effort.  node_budget None means DPLL runs to completion."""
    n_max: int | None = None
    node_budget: int | None = None
    ls_runs: int = 4
    ls_cutoff: int = 20_000
    seed: int = 0


def _formula(kind: str, t0: int, t1: int, n: int) -> CnfFormula:
    if kind == "vdw":
        return encode_vdw(t0, t1, n)
    return pd_middle_unit(encode_pd(t0, t1, n), t0, n, t1)


def _to_cert(kind: str, bits: tuple[bool, ...], n: int) -> PartitionCertificate:
    s = "".join("1" if b else "0" for b in bits)
    return expand_half(s, n) if kind == "pd" else PartitionCertificate(s)


def probe(kind: str, t0: int, t1: int, n: int, strategy: str = "hybrid",
          limits: Limits = Limits(), warm: tuple[bool, ...] | None = None) -> Probe:
    """Decide one instance.  Under "hybrid" local search goes first and DPLL
    only runs when it fails; SAT answers carry a verified certificate."""
    t_start = time.perf_counter()
    if n == 0:
        return Probe(0, Verdict.SAT, "trivial", PartitionCertificate(""))
    f = _formula(kind, t0, t1, n)
    flips = 0
    if strategy == "hybrid":
        cfg = LsConfig("gsat-tabu", limits.ls_runs, limits.ls_cutoff, limits.seed * 7919 + n,
                       initial=warm)
        out = local_search(f, cfg)
        flips = out.flips_used
        if out.found:
            cert = _to_cert(kind, out.witness, n)
            _check_cert(cert, t0, t1, kind)
            return Probe(n, Verdict.SAT, "local-search", cert, 0, flips,
                         time.perf_counter() - t_start)
    elif strategy != "dpll":
        raise ValueError(f"unknown strategy {strategy!r}")
    r = dpll(f, limits.node_budget)
    cert = None
    if r.is_sat:
        cert = _to_cert(kind, r.witness, n)
        _check_cert(cert, t0, t1, kind)
    return Probe(n, r.verdict, "dpll", cert, r.stats.nodes, flips, time.perf_counter() - t_start)


def _check_cert(cert: PartitionCertificate, t0: int, t1: int, kind: str) -> None:
    if not is_good(cert, t0, t1) or (kind == "pd" and not is_palindrome(cert)):
        raise SoundnessError(f"certificate for n={cert.n} does not verify")


# --- ordinary numbers ---------------------------------------------------------

@dataclass(frozen=True)
class VdwResult:
    t0: int
    t1: int
    value: int | None                  # None: not determined within the limits
    lower: int                         # verified: w > lower - 1, i.e. w >= lower
    witness: PartitionCertificate | None   # good partition of length lower - 1
    unsat_evidence: Probe | None
    profile: SatProfile

    @property
    def exact(self) -> bool:
        return self.value is not None

    def interval(self) -> tuple[int, int | None]:
        return (self.value, self.value) if self.exact else (self.lower, None)


def compute_vdw(t0: int, t1: int, strategy: str = "hybrid", limits: Limits = Limits(),
                n_start: int | None = None) -> VdwResult:
    """Scan n upward; the first unsatisfiable n is w(2;t0,t1).

    Each satisfiable n warm-starts local search for n+1.  If the very first
    probe is unsatisfiable the scan walks down until it meets a satisfiable n.
    """
    if not 2 <= t0 <= t1:
        raise ValueError(f"need 2 <= t0 <= t1, got ({t0}, {t1})")
    prof = SatProfile(palindromic=False)
    n = max(n_start if n_start is not None else t1, 1)
    warm = None
    while limits.n_max is None or n <= limits.n_max:
        pr = probe("vdw", t0, t1, n, strategy, limits, warm)
        prof.solved[n] = pr
        if pr.verdict is Verdict.INDETERMINATE:
            break
        sat = pr.verdict is Verdict.SAT
        clash = [m for m, q in prof.solved.items()
                 if (m < n if sat else m > n) and q.verdict is not pr.verdict
                 and q.verdict is not Verdict.INDETERMINATE]
        if clash:
            raise SoundnessError(f"n={n} is {pr.verdict.value} but n={clash[0]} is not")
        if sat:
            nxt = prof.solved.get(n + 1)
            if nxt is not None and nxt.verdict is Verdict.UNSAT:
                return VdwResult(t0, t1, n + 1, n + 1, pr.certificate, nxt, prof)
            warm = warm_start_vdw(pr.certificate)
            n += 1
        else:
            if n == 1:
                return VdwResult(t0, t1, 1, 1, PartitionCertificate(""), pr, prof)
            prv = prof.solved.get(n - 1)
            if prv is not None and prv.verdict is Verdict.SAT:
                return VdwResult(t0, t1, n, n, prv.certificate, pr, prof)
            # the first probe was already unsatisfiable: walk down
            n -= 1
            warm = None
    sats = [q for q in prof.solved.values() if q.verdict is Verdict.SAT]
    best = max(sats, key=lambda q: q.n) if sats else None
    lower = best.n + 1 if best is not None else 1
    wit = best.certificate if best is not None else PartitionCertificate("")
    return VdwResult(t0, t1, None, lower, wit, None, prof)


# --- palindromic numbers ------------------------------------------------------

@dataclass(frozen=True)
class PdNumber:
    t0: int
    t1: int
    p: int
    q: int
    w: int | None = None

    @property
    def span(self) -> int:
        return self.q - self.p

    @property
    def gap(self) -> int | None:
        return None if self.w is None else self.w - self.q

    def check_structure(self) -> None:
        if not (0 <= self.p < self.q) or (self.w is not None and self.q > self.w):
            raise SoundnessError(f"bad pair ({self.p}, {self.q}) for w={self.w}")
        if self.span % 2 != 1:
            raise SoundnessError(f"span {self.span} is not odd")


@dataclass(frozen=True)
class PdResult:
    number: PdNumber | None            # None if some parity was not settled
    first_unsat: dict                  # parity -> first UNSAT n, or None
    profile: SatProfile


def compute_pd(t0: int, t1: int, strategy: str = "hybrid", limits: Limits = Limits(),
               w: int | None = None, verify_beyond: int = 1) -> PdResult:
    """Find the first unsatisfiable n in each parity class (odd first).

    p = (smaller first UNSAT) - 1 and q = (larger first UNSAT) - 1.  Later n
    of a settled parity are UNSAT without solving; `verify_beyond` of them are
    solved anyway and must come back UNSAT.
    """
    if not 2 <= t0 <= t1:
        raise ValueError(f"need 2 <= t0 <= t1, got ({t0}, {t1})")
    prof = SatProfile(palindromic=True)
    first: dict[int, int | None] = {}
    for parity in (1, 0):
        n = 1 if parity else 2
        warm = None
        first[parity] = None
        while limits.n_max is None or n <= limits.n_max:
            pr = probe("pd", t0, t1, n, strategy, limits, warm)
            prof.solved[n] = pr
            if pr.verdict is Verdict.SAT:
                warm = warm_start_pd(pr.certificate.bits[: (n + 1) // 2])
                n += 2
                continue
            if pr.verdict is Verdict.UNSAT:
                first[parity] = n
                for i in range(1, verify_beyond + 1):
                    m = n + 2 * i
                    if limits.n_max is not None and m > limits.n_max:
                        break
                    chk = probe("pd", t0, t1, m, "dpll", limits)
                    prof.solved[m] = chk
                    if chk.verdict is Verdict.SAT:
                        raise SoundnessError(f"SAT at n={m} after UNSAT at n={n}")
            break
    if first[0] is None or first[1] is None:
        return PdResult(None, first, prof)
    lo, hi = sorted((first[0], first[1]))
    num = PdNumber(t0, t1, lo - 1, hi - 1, w)
    num.check_structure()
    for n in range(num.p + 1, num.q):
        expect = Verdict.UNSAT if (n - lo) % 2 == 0 else Verdict.SAT
        if prof.verdict_at(n) is not expect:
            raise SoundnessError(f"no alternation at n={n}")
    return PdResult(num, first, prof)


@dataclass(frozen=True)
class PdCertificate:
    number: PdNumber
    partitions: dict            # n -> PartitionCertificate, for p-1 and q-1
    refutations: dict           # n -> SolveResult (UNSAT), for p+1 and q+1


def certify_pd(number: PdNumber, node_budget: int | None = None) -> PdCertificate:
    """Evidence for (p, q): good palindromic partitions of p-1 and q-1 and
    refutations of p+1 and q+1.  With the parity transfer n -> n-2 this
    settles every n."""
    t0, t1 = number.t0, number.t1
    parts, refs = {}, {}
    for n in (number.p - 1, number.q - 1):
        if n < 0:
            continue
        if n == 0:
            parts[n] = PartitionCertificate("")
            continue
        r = dpll(_formula("pd", t0, t1, n), node_budget)
        if not r.is_sat:
            raise IncompleteCertification(f"no good palindromic partition found for n={n} ({r.verdict.value})")
        cert = _to_cert("pd", r.witness, n)
        if not (is_good(cert, t0, t1) and is_palindrome(cert) and cert.n == n):
            raise SoundnessError(f"certificate for n={n} does not verify")
        parts[n] = cert
    for n in (number.p + 1, number.q + 1):
        r = dpll(_formula("pd", t0, t1, n), node_budget)
        if not r.is_unsat:
            raise IncompleteCertification(f"n={n} not refuted ({r.verdict.value})")
        refs[n] = r
    return PdCertificate(number, parts, refs)


# --- growth bounds ------------------------------------------------------------

GROWTH_FACTOR = Fraction(1675, 1000)
GROWTH_OFFSET = Fraction(105, 100)


def growth_bound(t: int) -> Fraction:
    """1.675 (t^2 - t) - 1.05, exactly."""
    return GROWTH_FACTOR * (t * t - t) - GROWTH_OFFSET


@dataclass(frozen=True)
class GrowthRow:
    t: int
    w: int
    exact: bool
    exceeds_square: bool        # w > t^2
    refutes_square_bound: bool  # w > t^2 where w <= t^2 was conjectured (t >= 5)
    bound: Fraction
    within_bound: bool
    difference: int | None      # w(t) - w(t-1)
    slope: Fraction | None      # difference / (t - 1)


@dataclass(frozen=True)
class GrowthReport:
    rows: tuple[GrowthRow, ...]

    @property
    def refuted_at(self) -> list[int]:
        return [r.t for r in self.rows if r.refutes_square_bound]

    @property
    def all_within_bound(self) -> bool:
        return all(r.within_bound for r in self.rows)

    @property
    def max_slope(self) -> GrowthRow | None:
        rs = [r for r in self.rows if r.slope is not None]
        return max(rs, key=lambda r: r.slope) if rs else None


def check_growth_bounds(values: Mapping[int, int | tuple[int, bool]] | None = None) -> GrowthReport:
    """Compare w(2;3,t) (or lower bounds) with t^2 and the 1.675 bound.

    `values` maps t to w or to (w, exact); default: the embedded table.
    Comparisons are exact rationals: at t = 3 the bound equals w exactly.
    """
    if values is None:
        values = {t: (k.w, k.w_exact) for t, k in known_values().items()}
    norm = {t: (v if isinstance(v, tuple) else (v, True)) for t, v in values.items()}
    rows = []
    for t in sorted(norm):
        w, exact = norm[t]
        b = growth_bound(t)
        diff = w - norm[t - 1][0] if t - 1 in norm else None
        rows.append(GrowthRow(
            t, w, exact, w > t * t, t >= 5 and w > t * t, b, w <= b, diff,
            None if diff is None else Fraction(diff, t - 1)))
    return GrowthReport(tuple(rows))
