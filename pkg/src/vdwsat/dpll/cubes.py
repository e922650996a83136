"""Solving the parts of a split instance, optionally in worker processes."""

from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Sequence

from ..cnf import CnfFormula
from .solver import Cube, SolveResult, Verdict, count_models, dpll


@dataclass(frozen=True)
class CubeResult:
    index: int
    cube: Cube
    result: SolveResult

    @property
    def nodes(self) -> int:
        return self.result.stats.nodes


@dataclass(frozen=True)
class CubeReport:
    verdict: Verdict
    results: tuple[CubeResult, ...]   # in cube order; cancelled cubes are absent
    witness: tuple[bool, ...] | None = None

    @property
    def nodes(self) -> int:
        return sum(r.nodes for r in self.results)


def solve_cube(formula: CnfFormula, cube: Sequence[int], budget: int | None = None,
               cancel=None) -> SolveResult:
    """The cube's literals are fixed below every decision, so the search
    below them is the subtree of the full DPLL tree at that frontier node."""
    return dpll(formula, budget, assumptions=tuple(cube), cancel=cancel)


def count_models_cubes(formula: CnfFormula, cubes: Sequence[Cube]) -> int:
    return sum(count_models(formula, c) for c in cubes)


def _worker(formula, index, cube, budget, stop):
    return index, solve_cube(formula, cube, budget, cancel=stop.is_set)


def _combine(cubes, results, complete) -> CubeReport:
    rs = tuple(sorted(results, key=lambda r: r.index))
    sat = [r for r in rs if r.result.is_sat]
    if sat:
        return CubeReport(Verdict.SAT, rs, sat[0].result.witness)
    if complete and len(rs) == len(cubes) and all(r.result.is_unsat for r in rs):
        return CubeReport(Verdict.UNSAT, rs)
    return CubeReport(Verdict.INDETERMINATE, rs)


def solve_cubes(formula: CnfFormula, cubes: Sequence[Cube], jobs: int = 1,
                budget_per_cube: int | None = None, stop_on_sat: bool = True) -> CubeReport:
    """Solve every cube; the instance is UNSAT iff all cubes are.

    With ``stop_on_sat`` the first satisfiable cube cancels the rest.  The
    verdict does not depend on which cube finishes first: SAT needs one SAT
    cube, UNSAT needs all of them.
    """
    cubes = [tuple(c) for c in cubes]
    if jobs <= 1:
        out = []
        for i, c in enumerate(cubes):
            r = CubeResult(i, c, solve_cube(formula, c, budget_per_cube))
            out.append(r)
            if stop_on_sat and r.result.is_sat:
                break
        return _combine(cubes, out, True)

    out = []
    with mp.Manager() as mgr:
        stop = mgr.Event()
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            pending = {ex.submit(_worker, formula, i, c, budget_per_cube, stop)
                       for i, c in enumerate(cubes)}
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for f in done:
                    if f.cancelled():
                        continue
                    i, res = f.result()
                    out.append(CubeResult(i, cubes[i], res))
                    if stop_on_sat and res.is_sat:
                        stop.set()
                        for p in pending:
                            p.cancel()
            # cancelled runs come back INDETERMINATE; they carry no verdict
            out = [r for r in out if r.result.verdict is not Verdict.INDETERMINATE
                   or not stop.is_set()]
    return _combine(cubes, out, True)
