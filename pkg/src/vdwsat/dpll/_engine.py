"""Compiled DPLL search over a counter-based clause representation.

Literal codes: variable v positive -> 2*v, negative -> 2*v + 1; the
complement of code c is c ^ 1.  Clauses are never physically removed; each
clause keeps the number of true literals and of unassigned literals, which
is enough to read off the residual formula at any node (satisfied clauses
are the removed ones, the unassigned count is the residual length).

The search loop is re-entrant: it returns to the caller on a solution (in
enumeration mode), on a frontier node (in split mode) and when the node
budget of the call is used up, and continues where it stopped on the next
call.  All state lives in the arrays of ``vdwsat.dpll.solver.Engine``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# run() status codes
SAT = 1
UNSAT = 2
BUDGET = 3
SOLUTION = 4
CUBE = 5

# run() modes
MODE_SOLVE = 0
MODE_ENUMERATE = 1
MODE_SPLIT = 2

# slots of the counters array
C_NSAT = 0        # satisfied clauses
C_NODES = 1
C_PROPS = 2       # literals set by unit propagation
C_MAXDEPTH = 3
C_LEVEL = 4
C_TRAIL = 5
C_QHEAD = 6
C_QTAIL = 7
C_ACTION = 8      # what the loop does next: enter node / backtrack / done
C_CONFLICT = 9    # conflict raised while making the pending assignment
N_COUNTERS = 10

ACT_ENTER = 0
ACT_BACKTRACK = 1
ACT_DONE = 2


@njit(cache=True)
def _assign(code, assign, n_true, n_free, occ_start, occ, queue, counters):
    """Make literal `code` true; returns True if some clause became empty."""
    v = code >> 1
    assign[v] = -1 if code & 1 else 1
    for j in range(occ_start[code], occ_start[code + 1]):
        k = occ[j]
        n_true[k] += 1
        if n_true[k] == 1:
            counters[C_NSAT] += 1
    conflict = False
    neg = code ^ 1
    for j in range(occ_start[neg], occ_start[neg + 1]):
        k = occ[j]
        n_free[k] -= 1
        if n_true[k] == 0:
            if n_free[k] == 0:
                conflict = True
            elif n_free[k] == 1:
                queue[counters[C_QTAIL]] = k
                counters[C_QTAIL] += 1
    return conflict


@njit(cache=True)
def _push(code, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
    trail[counters[C_TRAIL]] = code
    counters[C_TRAIL] += 1
    return _assign(code, assign, n_true, n_free, occ_start, occ, queue, counters)


@njit(cache=True)
def _unassign(code, assign, n_true, n_free, occ_start, occ, counters):
    for j in range(occ_start[code], occ_start[code + 1]):
        k = occ[j]
        n_true[k] -= 1
        if n_true[k] == 0:
            counters[C_NSAT] -= 1
    neg = code ^ 1
    for j in range(occ_start[neg], occ_start[neg + 1]):
        n_free[occ[j]] += 1
    assign[code >> 1] = 0


@njit(cache=True)
def _undo_to(mark, assign, n_true, n_free, occ_start, occ, trail, counters):
    while counters[C_TRAIL] > mark:
        counters[C_TRAIL] -= 1
        _unassign(trail[counters[C_TRAIL]], assign, n_true, n_free, occ_start, occ, counters)


@njit(cache=True)
def _propagate(cl_start, cl_lits, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
    """Unit propagation to fixpoint; returns True on conflict."""
    conflict = False
    while counters[C_QHEAD] < counters[C_QTAIL]:
        k = queue[counters[C_QHEAD]]
        counters[C_QHEAD] += 1
        if n_true[k] > 0:
            continue
        if n_free[k] == 0:
            conflict = True
            break
        unit = -1
        for j in range(cl_start[k], cl_start[k + 1]):
            c = cl_lits[j]
            if assign[c >> 1] == 0:
                unit = c
                break
        counters[C_PROPS] += 1
        if _push(unit, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
            conflict = True
            break
    counters[C_QHEAD] = 0
    counters[C_QTAIL] = 0
    return conflict


@njit(cache=True)
def literal_weights(cl_start, cl_lits, assign, n_true, n_free, shift, wbuf):
    """Fixed-point 2sJW weights of the residual formula, unit 2**-shift.

    A residual clause of length k adds 2**(shift-k) to each of its unassigned
    literals; clauses longer than `shift` add nothing.
    """
    wbuf[:] = 0
    m = cl_start.shape[0] - 1
    for k in range(m):
        if n_true[k] != 0:
            continue
        ln = n_free[k]
        if ln > shift:
            continue
        w = np.int64(1) << np.int64(shift - ln)
        for j in range(cl_start[k], cl_start[k + 1]):
            c = cl_lits[j]
            if assign[c >> 1] == 0:
                wbuf[c] += w


@njit(cache=True)
def _choose(nv, cl_start, cl_lits, assign, n_true, n_free, shift, wbuf):
    literal_weights(cl_start, cl_lits, assign, n_true, n_free, shift, wbuf)
    best = np.int64(-1)
    bv = 0
    for v in range(1, nv + 1):
        if assign[v] != 0:
            continue
        s = wbuf[2 * v] + wbuf[2 * v + 1]
        if s > best:
            best = s
            bv = v
    if bv == 0:
        return -1
    return 2 * bv if wbuf[2 * bv] >= wbuf[2 * bv + 1] else 2 * bv + 1


@njit(cache=True)
def run(nv, cl_start, cl_lits, occ_start, occ, shift,
        assign, n_true, n_free, queue, trail, trail_lim, dec_lit, dec_flag,
        wbuf, counters, mode, split_level, budget):
    """Advance the search; see module docstring for the protocol."""
    m = cl_start.shape[0] - 1
    used = 0
    while True:
        action = counters[C_ACTION]
        if action == ACT_DONE:
            return UNSAT
        if action == ACT_ENTER:
            if used >= budget:
                return BUDGET
            used += 1
            counters[C_NODES] += 1
            level = counters[C_LEVEL]
            if level > counters[C_MAXDEPTH]:
                counters[C_MAXDEPTH] = level
            if counters[C_CONFLICT] != 0:
                counters[C_QHEAD] = 0
                counters[C_QTAIL] = 0
                conflict = True
            else:
                conflict = _propagate(cl_start, cl_lits, assign, n_true, n_free,
                                      occ_start, occ, queue, trail, counters)
            counters[C_CONFLICT] = 0
            if conflict:
                counters[C_ACTION] = ACT_BACKTRACK
                continue
            if counters[C_NSAT] == m:
                counters[C_ACTION] = ACT_BACKTRACK
                if mode == MODE_SOLVE:
                    return SAT
                return SOLUTION
            if mode == MODE_SPLIT and level >= split_level:
                counters[C_ACTION] = ACT_BACKTRACK
                return CUBE
            code = _choose(nv, cl_start, cl_lits, assign, n_true, n_free, shift, wbuf)
            level += 1
            counters[C_LEVEL] = level
            trail_lim[level] = counters[C_TRAIL]
            dec_lit[level] = code
            dec_flag[level] = 0
            if _push(code, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
                counters[C_CONFLICT] = 1
            continue
        # backtrack
        level = counters[C_LEVEL]
        while True:
            if level == 0:
                counters[C_ACTION] = ACT_DONE
                return UNSAT
            _undo_to(trail_lim[level], assign, n_true, n_free, occ_start, occ, trail, counters)
            if dec_flag[level] == 0:
                dec_flag[level] = 1
                if _push(dec_lit[level] ^ 1, assign, n_true, n_free, occ_start, occ,
                         queue, trail, counters):
                    counters[C_CONFLICT] = 1
                counters[C_ACTION] = ACT_ENTER
                break
            level -= 1
            counters[C_LEVEL] = level


@njit(cache=True)
def reset(cl_start, n_true, n_free, assign, queue, counters):
    """Clear all assignments; enqueue unit clauses; flag empty clauses."""
    m = cl_start.shape[0] - 1
    assign[:] = 0
    counters[:] = 0
    for k in range(m):
        n_true[k] = 0
        ln = cl_start[k + 1] - cl_start[k]
        n_free[k] = ln
        if ln == 0:
            counters[C_CONFLICT] = 1
        elif ln == 1:
            queue[counters[C_QTAIL]] = k
            counters[C_QTAIL] += 1


@njit(cache=True)
def assume(code, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
    """Fix a literal below all decisions (level 0). Returns False if it contradicts."""
    v = code >> 1
    if assign[v] != 0:
        if (assign[v] == 1) != (code & 1 == 0):
            counters[C_CONFLICT] = 1
            return False
        return True
    if _push(code, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
        counters[C_CONFLICT] = 1
        return False
    return True


@njit(cache=True)
def settle(cl_start, cl_lits, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
    """Propagate pending units outside the search loop. Returns True on conflict."""
    if counters[C_CONFLICT] != 0:
        counters[C_QHEAD] = 0
        counters[C_QTAIL] = 0
        return True
    return _propagate(cl_start, cl_lits, assign, n_true, n_free, occ_start, occ, queue, trail, counters)


@njit(cache=True)
def decide(code, flag, assign, n_true, n_free, occ_start, occ, queue, trail, trail_lim,
           dec_lit, dec_flag, counters):
    """Replay one checkpointed decision: branch literal `code`, `flag` = 1 if
    its first branch is already explored (then the complement is assigned)."""
    level = counters[C_LEVEL] + 1
    counters[C_LEVEL] = level
    if level > counters[C_MAXDEPTH]:
        counters[C_MAXDEPTH] = level
    trail_lim[level] = counters[C_TRAIL]
    dec_lit[level] = code
    dec_flag[level] = flag
    lit = code ^ 1 if flag else code
    if assign[lit >> 1] != 0:
        return False
    if _push(lit, assign, n_true, n_free, occ_start, occ, queue, trail, counters):
        counters[C_CONFLICT] = 1
    return True


@njit(cache=True)
def count_clause_satisfied(cl_start, cl_lits, values):
    """Number of clauses satisfied by a total 0/1 assignment (index = variable)."""
    m = cl_start.shape[0] - 1
    ok = 0
    for k in range(m):
        for j in range(cl_start[k], cl_start[k + 1]):
            c = cl_lits[j]
            if (values[c >> 1] == 1) == (c & 1 == 0):
                ok += 1
                break
    return ok
