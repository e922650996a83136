"""DPLL with 2sJW branching: solving, model enumeration, cube splitting.

Thin Python layer over :mod:`._engine`; see there for the search itself.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from ..cnf import CnfFormula, emit_dimacs
from . import _engine as E

# Nodes per call into the compiled loop; between calls the Python side checks
# cancellation and writes checkpoints.
CHUNK = 1 << 16


class Verdict(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class SolveStats:
    nodes: int = 0
    propagations: int = 0
    max_depth: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SearchState:
    """Decision stack as (literal, explored) pairs; explored == 1 means the
    literal's own branch is finished and its complement is being searched."""
    pairs: tuple[tuple[int, int], ...] = ()
    exhausted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(l), int(f)) for l, f in self.pairs))
        seen = set()
        for lit, flag in self.pairs:
            if lit == 0 or flag not in (0, 1):
                raise ValueError(f"bad state pair ({lit}, {flag})")
            if abs(lit) in seen:
                raise ValueError(f"variable {abs(lit)} decided twice")
            seen.add(abs(lit))
        if self.exhausted and self.pairs:
            raise ValueError("an exhausted state has no open decisions")

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class SolveResult:
    verdict: Verdict
    witness: tuple[bool, ...] | None = None
    stats: SolveStats = field(default_factory=SolveStats)
    state: SearchState | None = None   # where to resume, for INDETERMINATE

    @property
    def is_sat(self) -> bool:
        return self.verdict is Verdict.SAT

    @property
    def is_unsat(self) -> bool:
        return self.verdict is Verdict.UNSAT


def lit_code(lit: int) -> int:
    return 2 * abs(lit) + (lit < 0)


def code_lit(code: int) -> int:
    v = code >> 1
    return -v if code & 1 else v


def formula_digest(formula: CnfFormula) -> str:
    """sha256 over the DIMACS text without comments."""
    body = emit_dimacs(CnfFormula(formula.num_vars, formula.clauses))
    return hashlib.sha256(body.encode()).hexdigest()


def weight_shift(max_len: int, max_occ: int) -> int:
    """Fixed-point exponent for 2sJW weights.

    With unit 2**-shift a clause of length k weighs 2**(shift-k), exact for
    k <= shift.  shift starts at the longest clause (capped at 62) and is
    lowered only if a literal's total could overflow int64.
    """
    shift = max(1, min(max_len, 62))
    while shift > 1 and max_occ * (1 << (shift - 1)) >= (1 << 62):
        shift -= 1
    return shift


class Engine:
    """Compiled search state for one formula under fixed assumptions."""

    def __init__(self, formula: CnfFormula, assumptions: Sequence[int] = ()):
        self.formula = formula
        self.num_vars = nv = formula.num_vars
        starts = [0]
        lits: list[int] = []
        for c in formula.clauses:
            seen: set[int] = set()
            taut = False
            for l in c:
                if -l in seen:
                    taut = True
                    break
                seen.add(l)
            if taut:
                continue
            for l in dict.fromkeys(c):
                lits.append(lit_code(l))
            starts.append(len(lits))
        self.cl_start = np.asarray(starts, dtype=np.int64)
        self.cl_lits = np.asarray(lits, dtype=np.int64)
        m = len(starts) - 1
        self.num_clauses = m
        ncodes = 2 * nv + 2
        counts = np.bincount(self.cl_lits, minlength=ncodes) if lits else np.zeros(ncodes, np.int64)
        self.occ_start = np.zeros(ncodes + 1, dtype=np.int64)
        np.cumsum(counts, out=self.occ_start[1:])
        clause_of = np.repeat(np.arange(m, dtype=np.int64), np.diff(self.cl_start))
        order = np.argsort(self.cl_lits, kind="stable")
        self.occ = clause_of[order].astype(np.int64)
        max_len = int(np.diff(self.cl_start).max()) if m else 1
        self.shift = weight_shift(max_len, int(counts.max()) if lits else 1)

        self.assign = np.zeros(nv + 1, dtype=np.int8)
        self.n_true = np.zeros(m, dtype=np.int32)
        self.n_free = np.zeros(m, dtype=np.int32)
        self.queue = np.zeros(m + 1, dtype=np.int64)
        self.trail = np.zeros(nv + 1, dtype=np.int64)
        self.trail_lim = np.zeros(nv + 2, dtype=np.int64)
        self.dec_lit = np.zeros(nv + 2, dtype=np.int64)
        self.dec_flag = np.zeros(nv + 2, dtype=np.int8)
        self.wbuf = np.zeros(ncodes, dtype=np.int64)
        self.counters = np.zeros(E.N_COUNTERS, dtype=np.int64)
        for l in assumptions:
            if l == 0 or abs(l) > nv:
                raise ValueError(f"assumption {l} outside 1..{nv}")
        self.assumptions = tuple(assumptions)
        self.restart()

    # -- state -------------------------------------------------------------
    def _settle(self) -> bool:
        return E.settle(self.cl_start, self.cl_lits, self.assign, self.n_true, self.n_free,
                        self.occ_start, self.occ, self.queue, self.trail, self.counters)

    def restart(self, state: SearchState | None = None) -> None:
        E.reset(self.cl_start, self.n_true, self.n_free, self.assign, self.queue, self.counters)
        for l in self.assumptions:
            E.assume(lit_code(l), self.assign, self.n_true, self.n_free, self.occ_start,
                     self.occ, self.queue, self.trail, self.counters)
        if state is None or not state.pairs:
            if state is not None and state.exhausted:
                self.counters[E.C_ACTION] = E.ACT_DONE
            return
        if self._settle():
            raise ValueError("checkpoint does not fit: the root is already refuted")
        last = len(state.pairs) - 1
        for i, (lit, flag) in enumerate(state.pairs):
            if abs(lit) > self.num_vars:
                raise ValueError(f"checkpoint literal {lit} outside 1..{self.num_vars}")
            ok = E.decide(lit_code(lit), flag, self.assign, self.n_true, self.n_free,
                          self.occ_start, self.occ, self.queue, self.trail, self.trail_lim,
                          self.dec_lit, self.dec_flag, self.counters)
            if not ok or (i < last and self._settle()):
                raise ValueError(f"checkpoint does not fit the formula at decision {i + 1}")
        self.counters[E.C_ACTION] = E.ACT_ENTER

    def state(self) -> SearchState:
        """Current decision stack, normalised so that resuming re-enters it."""
        c = self.counters
        if c[E.C_ACTION] == E.ACT_BACKTRACK:
            # finish the pending backtrack without visiting a node
            self.run(E.MODE_SOLVE, 0, 0)
        if c[E.C_ACTION] == E.ACT_DONE:
            return SearchState((), exhausted=True)
        lv = int(c[E.C_LEVEL])
        return SearchState(tuple((code_lit(int(self.dec_lit[i])), int(self.dec_flag[i]))
                                 for i in range(1, lv + 1)))

    def run(self, mode: int, level: int, budget: int) -> int:
        return E.run(self.num_vars, self.cl_start, self.cl_lits, self.occ_start, self.occ,
                     self.shift, self.assign, self.n_true, self.n_free, self.queue, self.trail,
                     self.trail_lim, self.dec_lit, self.dec_flag, self.wbuf, self.counters,
                     mode, level, budget)

    # -- readouts ----------------------------------------------------------
    def model(self) -> tuple[bool, ...]:
        """Current assignment, unassigned variables false."""
        return tuple(bool(x == 1) for x in self.assign[1:])

    def free_vars(self) -> list[int]:
        return [v for v in range(1, self.num_vars + 1) if self.assign[v] == 0]

    def path(self) -> tuple[int, ...]:
        """Literals actually set by the current decisions."""
        lv = int(self.counters[E.C_LEVEL])
        return tuple(code_lit(int(self.dec_lit[i]) ^ int(self.dec_flag[i])) for i in range(1, lv + 1))

    def stats(self, wall: float = 0.0) -> SolveStats:
        c = self.counters
        return SolveStats(int(c[E.C_NODES]), int(c[E.C_PROPS]), int(c[E.C_MAXDEPTH]), wall)

    def weights(self) -> np.ndarray:
        """Fixed-point 2sJW weights of the current residual formula, by literal code."""
        E.literal_weights(self.cl_start, self.cl_lits, self.assign, self.n_true, self.n_free,
                          self.shift, self.wbuf)
        return self.wbuf.copy()


def _drive(engine: Engine, mode: int, level: int, budget: int | None,
           cancel: Callable[[], bool] | None,
           on_checkpoint: Callable[[SearchState], None] | None,
           checkpoint_every: int | None,
           on_hit: Callable[[int], bool] | None = None) -> int:
    """Run until a terminal status; on_hit handles SOLUTION/CUBE and returns
    False to stop.  Returns SAT, UNSAT or BUDGET."""
    remaining = budget
    since_ckpt = 0
    while True:
        if cancel is not None and cancel():
            return E.BUDGET
        chunk = CHUNK if remaining is None else min(CHUNK, remaining)
        if on_checkpoint is not None and checkpoint_every:
            chunk = min(chunk, checkpoint_every - since_ckpt)
        before = int(engine.counters[E.C_NODES])
        status = engine.run(mode, level, chunk)
        used = int(engine.counters[E.C_NODES]) - before
        since_ckpt += used
        if remaining is not None:
            remaining -= used
        if status in (E.SOLUTION, E.CUBE):
            if on_hit is not None and not on_hit(status):
                return E.SAT
            status = E.BUDGET
        if status != E.BUDGET:
            return status
        if on_checkpoint is not None and checkpoint_every and since_ckpt >= checkpoint_every:
            on_checkpoint(engine.state())
            since_ckpt = 0
        if remaining is not None and remaining <= 0:
            return E.BUDGET


def dpll(formula: CnfFormula, budget: int | None = None, *,
         assumptions: Sequence[int] = (),
         resume: SearchState | None = None,
         cancel: Callable[[], bool] | None = None,
         on_checkpoint: Callable[[SearchState], None] | None = None,
         checkpoint_every: int | None = None) -> SolveResult:
    """Decide satisfiability.  `budget` limits search nodes; when it runs out
    (or `cancel()` turns true) the verdict is INDETERMINATE and `state` holds
    the point to resume from."""
    t0 = time.perf_counter()
    eng = Engine(formula, assumptions)
    eng.restart(resume)
    status = _drive(eng, E.MODE_SOLVE, 0, budget, cancel, on_checkpoint, checkpoint_every)
    wall = time.perf_counter() - t0
    if status == E.SAT:
        w = eng.model()
        if not formula.is_satisfied_by(w):
            raise AssertionError("solver produced a non-model")
        return SolveResult(Verdict.SAT, w, eng.stats(wall))
    if status == E.UNSAT:
        return SolveResult(Verdict.UNSAT, None, eng.stats(wall))
    return SolveResult(Verdict.INDETERMINATE, None, eng.stats(wall), eng.state())


def _iter_solutions(formula: CnfFormula, assumptions: Sequence[int] = ()):
    """Yield (partial model, free variables) for every solution leaf."""
    eng = Engine(formula, assumptions)
    out = []

    def hit(_status):
        out.append((eng.model(), eng.free_vars()))
        return True

    _drive(eng, E.MODE_ENUMERATE, 0, None, None, None, None, hit)
    return out


def count_models(formula: CnfFormula, assumptions: Sequence[int] = ()) -> int:
    """Number of total assignments over 1..num_vars satisfying formula and assumptions."""
    return sum(1 << len(free) for _, free in _iter_solutions(formula, assumptions))


def dpll_enumerate(formula: CnfFormula, assumptions: Sequence[int] = ()) -> list[tuple[bool, ...]]:
    """All satisfying total assignments, each once, sorted (False < True)."""
    sols = []
    for model, free in _iter_solutions(formula, assumptions):
        base = list(model)
        for x in range(1 << len(free)):
            for i, v in enumerate(free):
                base[v - 1] = bool(x >> i & 1)
            sols.append(tuple(base))
    sols.sort()
    return sols


Cube = tuple[int, ...]


def split(formula: CnfFormula, level: int) -> list[Cube]:
    """Frontier of the DPLL tree at depth `level`, left to right.

    Nodes refuted above the frontier are dropped; a node found satisfied above
    it is returned as a (shorter) cube.
    """
    if level < 0:
        raise ValueError("split level must be >= 0")
    eng = Engine(formula)
    cubes: list[Cube] = []

    def hit(_status):
        cubes.append(eng.path())
        return True

    _drive(eng, E.MODE_SPLIT, level, None, None, None, None, hit)
    return cubes


# -- checkpoint files ----------------------------------------------------------

class CheckpointError(ValueError):
    pass


_HEADER = "c vdwsat-checkpoint"


def checkpoint_save(state: SearchState, formula: CnfFormula | None = None) -> str:
    """One "<literal> <flag>" line per decision, oldest first.

    With a formula, a header line carries its digest so a checkpoint cannot
    be resumed against a different instance.
    """
    lines = []
    if formula is not None:
        lines.append(f"{_HEADER} sha256={formula_digest(formula)}")
    if state.exhausted:
        lines.append("c exhausted")
    lines.extend(f"{lit} {flag}" for lit, flag in state.pairs)
    return "".join(l + "\n" for l in lines)


def checkpoint_load(text: str, formula: CnfFormula | None = None) -> SearchState:
    pairs = []
    exhausted = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(_HEADER):
            digest = line[len(_HEADER):].strip()
            if not digest.startswith("sha256="):
                raise CheckpointError(f"line {lineno}: malformed header")
            if formula is not None and digest[7:] != formula_digest(formula):
                raise CheckpointError("checkpoint belongs to a different formula")
            continue
        if line == "c exhausted":
            exhausted = True
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CheckpointError(f"line {lineno}: expected '<literal> <flag>'")
        try:
            lit, flag = int(parts[0]), int(parts[1])
        except ValueError:
            raise CheckpointError(f"line {lineno}: expected integers") from None
        if lit == 0 or flag not in (0, 1):
            raise CheckpointError(f"line {lineno}: bad pair {line!r}")
        pairs.append((lit, flag))
    try:
        return SearchState(tuple(pairs), exhausted)
    except ValueError as e:
        raise CheckpointError(str(e)) from None


# -- cube files ----------------------------------------------------------------

def cubes_to_text(cubes: Iterable[Cube], icnf: bool = False) -> str:
    if icnf:
        return "p inccnf\n" + "".join("a " + " ".join(map(str, c + (0,))) + "\n" for c in cubes)
    return "".join(" ".join(map(str, c)) + "\n" for c in cubes)


def cubes_from_text(text: str) -> list[Cube]:
    """Read either format; '#' and 'c' lines are comments."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(("c ", "#", "p ")) or line in ("c", "p"):
            continue
        if line.startswith("a"):
            toks = line.split()[1:]
            if not toks or toks[-1] != "0":
                raise ValueError(f"line {lineno}: cube not terminated by 0")
            toks = toks[:-1]
        else:
            toks = line.split()
        try:
            cube = tuple(int(x) for x in toks)
        except ValueError:
            raise ValueError(f"line {lineno}: bad literal in {line!r}") from None
        if 0 in cube or len({abs(l) for l in cube}) != len(cube):
            raise ValueError(f"line {lineno}: malformed cube {line!r}")
        out.append(cube)
    return out
