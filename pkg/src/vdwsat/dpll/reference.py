"""Residual-formula operations in plain Python, with exact dyadic weights.

These follow the clause-set semantics literally (clauses are deleted and
shortened) and serve as the readable definition the compiled engine is
tested against.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..cnf import CnfFormula


def residual(formula: CnfFormula, u: int) -> CnfFormula:
    """F|u: drop clauses containing u, delete -u from the others."""
    if u == 0 or abs(u) > formula.num_vars:
        raise ValueError(f"literal {u} outside 1..{formula.num_vars}")
    out = tuple(tuple(l for l in c if l != -u) for c in formula.clauses if u not in c)
    return CnfFormula(formula.num_vars, out, formula.comments)


def unit_propagate(formula: CnfFormula) -> tuple[CnfFormula, bool, list[int]]:
    """Apply the first unit clause until none is left or a conflict shows up.

    Returns (residual formula, conflict, implied literals in order).
    """
    implied: list[int] = []
    f = formula
    while True:
        if any(len(c) == 0 for c in f.clauses):
            return f, True, implied
        units = [c[0] for c in f.clauses if len(c) == 1]
        if not units:
            return f, False, implied
        us = set(units)
        if any(-u in us for u in us):
            return f, True, implied
        u = units[0]
        implied.append(u)
        f = residual(f, u)


def jw_weight(formula: CnfFormula, u: int) -> Fraction:
    return sum((Fraction(1, 2 ** len(c)) for c in formula.clauses if u in c), Fraction(0))


def choose_branch(formula: CnfFormula) -> int:
    """2sJW: variable with the largest w(x)+w(-x), the heavier polarity first.

    Ties go to the smallest variable, and to the positive literal.
    """
    w: dict[int, Fraction] = {}
    for c in formula.clauses:
        q = Fraction(1, 2 ** len(c))
        for l in c:
            w[l] = w.get(l, Fraction(0)) + q
    vars_ = sorted({abs(l) for l in w})
    if not vars_:
        raise ValueError("no free variable to branch on")
    best = max(vars_, key=lambda v: (w.get(v, 0) + w.get(-v, 0), -v))
    return best if w.get(best, 0) >= w.get(-best, 0) else -best


def dpll_reference(formula: CnfFormula) -> tuple[bool, dict[int, bool] | None, int]:
    """Recursive Algorithm-1 DPLL; returns (sat, partial model, node count)."""
    nodes = 0

    def rec(f: CnfFormula, model: dict[int, bool]):
        nonlocal nodes
        nodes += 1
        f, conflict, implied = unit_propagate(f)
        if conflict:
            return None
        model = dict(model)
        for l in implied:
            model[abs(l)] = l > 0
        if not f.clauses:
            return model
        x = choose_branch(f)
        for lit in (x, -x):
            m = rec(residual(f, lit), {**model, abs(lit): lit > 0})
            if m is not None:
                return m
        return None

    m = rec(formula, {})
    return m is not None, m, nodes


def brute_force_models(formula: CnfFormula) -> list[tuple[bool, ...]]:
    """All total assignments over 1..num_vars satisfying the formula (2^n scan)."""
    n = formula.num_vars
    out = []
    for x in range(1 << n):
        a: Sequence[bool] = tuple(bool(x >> (n - 1 - i) & 1) for i in range(n))
        if formula.is_satisfied_by(a):
            out.append(tuple(a))
    return out
