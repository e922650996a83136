"""Stochastic local search for good partitions, with warm starts.

Two schemes: GSAT with a tabu list, and WalkSAT with the SKC selection rule.
Warm starts reuse a solution of a smaller instance as the first initial
assignment.  Any assignment reported as a solution has been re-checked
against the formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import _ls_kernels as K
from .certificates import PartitionCertificate, expand_half, halve, is_good
from .cnf import CnfFormula, encode_pd, encode_vdw, pd_middle_unit


class Scheme(str, Enum):
    GSAT_TABU = "gsat-tabu"
    WALKSAT = "walksat"


@dataclass(frozen=True)
class LsConfig:
    scheme: Scheme = Scheme.GSAT_TABU
    runs: int = 10
    cutoff: int = 100_000
    seed: int = 0
    tabu_tenure: int = 10
    noise: float = 0.4
    initial: tuple[bool, ...] | None = None
    perturb: float = 0.05   # fraction of warm-start bits flipped on runs after the first

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if self.runs < 1 or self.cutoff < 1:
            raise ValueError("runs and cutoff must be >= 1")
        if not 0.0 <= self.noise <= 1.0:
            raise ValueError("noise must lie in [0, 1]")
        if self.tabu_tenure < 0:
            raise ValueError("tabu_tenure must be >= 0")
        if self.initial is not None:
            object.__setattr__(self, "initial", tuple(bool(b) for b in self.initial))


@dataclass(frozen=True)
class LsOutcome:
    found: bool
    witness: tuple[bool, ...] | None
    best_unsat: int
    flips_used: int
    runs_used: int
    run_best: tuple[int, ...] = ()   # fewest falsified clauses per run


class _Compiled:
    def __init__(self, formula: CnfFormula):
        n = formula.num_vars
        self.n = n
        self.has_empty = False
        starts, var, pos = [0], [], []
        for c in formula.clauses:
            lits = list(dict.fromkeys(c))
            if any(-l in lits for l in lits):
                continue
            if not lits:
                self.has_empty = True
            var.extend(abs(l) for l in lits)
            pos.extend(1 if l > 0 else 0 for l in lits)
            starts.append(len(var))
        self.cl_start = np.asarray(starts, np.int64)
        self.cl_var = np.asarray(var, np.int64)
        self.cl_pos = np.asarray(pos, np.int8)
        m = len(starts) - 1
        counts = np.bincount(self.cl_var, minlength=n + 1) if var else np.zeros(n + 1, np.int64)
        self.occ_start = np.zeros(n + 2, np.int64)
        np.cumsum(counts, out=self.occ_start[1:])
        order = np.argsort(self.cl_var, kind="stable")
        clause_of = np.repeat(np.arange(m, dtype=np.int64), np.diff(self.cl_start))
        self.occ_cl = clause_of[order].astype(np.int64)
        self.occ_pos = self.cl_pos[order].copy()

    def search(self, scheme: int, val: np.ndarray, cutoff: int, tenure: int, noise: float,
               seed: int):
        rng = np.array([seed or 0x9E3779B97F4A7C15], dtype=np.uint64)
        best_val = val.copy()
        nf, flips, best = K.search(scheme, self.n, self.cl_start, self.cl_var, self.cl_pos,
                                   self.occ_start, self.occ_cl, self.occ_pos, val, cutoff,
                                   tenure, noise, rng, best_val)
        return int(nf), int(flips), int(best), best_val


def _initial_assignments(cfg: LsConfig, n: int):
    """Per-run start vectors (index 0 unused) and kernel seeds."""
    ss = np.random.SeedSequence(cfg.seed)
    kids = ss.spawn(cfg.runs)
    for r, kid in enumerate(kids):
        gen = np.random.default_rng(kid)
        val = np.zeros(n + 1, np.int8)
        if cfg.initial is None:
            val[1:] = gen.integers(0, 2, size=n)
        else:
            if len(cfg.initial) != n:
                raise ValueError(f"initial assignment has {len(cfg.initial)} entries, expected {n}")
            val[1:] = np.asarray(cfg.initial, np.int8)
            if r > 0 and n:
                k = max(1, round(cfg.perturb * n))
                idx = gen.choice(n, size=min(k, n), replace=False) + 1
                val[idx] ^= 1
        yield val, int(gen.integers(1, 2**63))


def local_search(formula: CnfFormula, config: LsConfig | None = None,
                 max_flips: int | None = None) -> LsOutcome:
    """Up to runs x cutoff flips (or `max_flips` in total, if smaller)."""
    cfg = config or LsConfig()
    comp = _Compiled(formula)
    n = comp.n
    scheme = K.GSAT_TABU if cfg.scheme is Scheme.GSAT_TABU else K.WALKSAT
    total = 0
    bests: list[int] = []
    if comp.has_empty:
        return LsOutcome(False, None, sum(1 for c in formula.clauses if not c), 0, 0)
    for val, seed in _initial_assignments(cfg, n):
        cutoff = cfg.cutoff
        if max_flips is not None:
            cutoff = min(cutoff, max_flips - total)
            if cutoff <= 0:
                break
        nf, flips, best, _ = comp.search(scheme, val, cutoff, cfg.tabu_tenure, cfg.noise, seed)
        total += flips
        bests.append(best)
        if nf == 0:
            w = tuple(bool(x) for x in val[1:])
            if not formula.is_satisfied_by(w):
                raise AssertionError("local search reported a non-model")
            return LsOutcome(True, w, 0, total, len(bests), tuple(bests))
    best_unsat = min(bests) if bests else formula.num_clauses
    return LsOutcome(False, None, best_unsat, total, len(bests), tuple(bests))


def warm_start_vdw(cert: PartitionCertificate | str) -> tuple[bool, ...]:
    """Start for n from a good partition of n-1: copy it, new vertex in block 0."""
    bits = cert.bits if isinstance(cert, PartitionCertificate) else cert
    return tuple(b == "1" for b in bits) + (False,)


def warm_start_pd(half: PartitionCertificate | str | Sequence[bool]) -> tuple[bool, ...]:
    """Start for n from the half of a good palindromic partition of n-2.

    Vertex v of the smaller instance becomes v+1; the new vertex 1 goes to
    block 0.  Under this shift every clause of the larger instance that
    avoids vertex 1 is a clause of the smaller one.
    """
    if isinstance(half, PartitionCertificate):
        half = half.bits
    if isinstance(half, str):
        half = [b == "1" for b in half]
    return (False,) + tuple(bool(b) for b in half)


@dataclass(frozen=True)
class CampaignRow:
    n: int
    found: bool
    flips: int
    certificate: PartitionCertificate | None

    def record(self) -> str:
        cert = self.certificate.compact() if self.certificate is not None else "-"
        return f"n={self.n} verdict={'SAT' if self.found else 'UNKNOWN'} flips={self.flips} certificate={cert}"


@dataclass(frozen=True)
class CampaignResult:
    t0: int
    t1: int
    palindromic: bool
    rows: tuple[CampaignRow, ...] = field(default_factory=tuple)

    @property
    def flips_used(self) -> int:
        return sum(r.flips for r in self.rows)

    @property
    def best(self) -> CampaignRow | None:
        found = [r for r in self.rows if r.found]
        return max(found, key=lambda r: r.n) if found else None

    @property
    def best_n(self) -> int | None:
        b = self.best
        return None if b is None else b.n

    @property
    def lower_bound(self) -> int | None:
        """A good partition of 1..best_n gives w >= best_n + 1.  Palindromic
        satisfiability is not monotone in n, so no bound is derived there."""
        b = self.best
        return None if b is None or self.palindromic else b.n + 1


def run_campaign(t0: int, t1: int, n_start: int, scheme: Scheme | str = Scheme.GSAT_TABU,
                 budget: int = 10**7, *, runs: int = 40, cutoff: int = 250_000,
                 seed: int = 0, n_stop: int | None = None, max_failures: int = 1,
                 palindromic: bool = False, start: PartitionCertificate | None = None,
                 tabu_tenure: int = 10, noise: float = 0.4) -> CampaignResult:
    """Sweep n upward from n_start, warm-starting each n from the last solution.

    Ordinary instances step by 1; palindromic ones step by 2 (solutions
    transfer from n-2 to n).  Stops at n_stop, after `max_failures`
    consecutive failures, or when the flip budget is spent.  `start` is an
    optional good partition of the length preceding n_start.
    """
    step = 2 if palindromic else 1
    rows: list[CampaignRow] = []
    prev = start
    fails = 0
    n = n_start
    used = 0
    k = 0
    while used < budget and (n_stop is None or n <= n_stop) and fails < max_failures:
        if palindromic:
            f = pd_middle_unit(encode_pd(t0, t1, n), t0, n, t1)
            init = None
            if prev is not None and prev.n == n - 2:
                init = warm_start_pd(halve(prev))
        else:
            f = encode_vdw(t0, t1, n)
            init = warm_start_vdw(prev) if prev is not None and prev.n == n - 1 else None
        cfg = LsConfig(scheme, runs, cutoff, seed * 1_000_003 + k, tabu_tenure, noise, init)
        out = local_search(f, cfg, max_flips=budget - used)
        used += out.flips_used
        k += 1
        if out.found:
            cert = PartitionCertificate("".join("1" if b else "0" for b in out.witness))
            if palindromic:
                cert = expand_half(cert, n)
            if not is_good(cert, t0, t1):
                raise AssertionError(f"certificate for n={n} fails verification")
            rows.append(CampaignRow(n, True, out.flips_used, cert))
            prev = cert
            fails = 0
        else:
            rows.append(CampaignRow(n, False, out.flips_used, None))
            fails += 1
        n += step
    return CampaignResult(t0, t1, palindromic, tuple(rows))
