"""Compiled inner loops for GSAT-TABU and WalkSAT (SKC variant).

Clauses are CSR arrays of (variable, polarity) with variables 1..n; val[v]
is 0/1.  make[v] / brk[v] count the clauses a flip of v would satisfy /
falsify, so the change in falsified clauses is brk[v] - make[v].
"""

from __future__ import annotations

import numpy as np
from numba import njit

GSAT_TABU = 0
WALKSAT = 1

_M1 = np.uint64(2685821657736338717)


@njit(cache=True)
def _next(rng):
    # xorshift64*
    x = rng[0]
    x ^= x >> np.uint64(12)
    x ^= x << np.uint64(25)
    x ^= x >> np.uint64(27)
    rng[0] = x
    return x * _M1


@njit(cache=True)
def _randint(rng, k):
    return np.int64(_next(rng) % np.uint64(k))


@njit(cache=True)
def _random(rng):
    return np.float64(_next(rng) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def _init(n, cl_start, cl_var, cl_pos, val, numtrue, make, brk, falselist, wherefalse):
    m = cl_start.shape[0] - 1
    make[:] = 0
    brk[:] = 0
    nf = 0
    for c in range(m):
        nt = 0
        crit = 0
        for j in range(cl_start[c], cl_start[c + 1]):
            if val[cl_var[j]] == cl_pos[j]:
                nt += 1
                crit = cl_var[j]
        numtrue[c] = nt
        if nt == 0:
            wherefalse[c] = nf
            falselist[nf] = c
            nf += 1
            for j in range(cl_start[c], cl_start[c + 1]):
                make[cl_var[j]] += 1
        elif nt == 1:
            brk[crit] += 1
    return nf


@njit(cache=True)
def _flip(v, nf, cl_start, cl_var, cl_pos, occ_start, occ_cl, occ_pos,
          val, numtrue, make, brk, falselist, wherefalse):
    val[v] = 1 - val[v]
    for j in range(occ_start[v], occ_start[v + 1]):
        c = occ_cl[j]
        if occ_pos[j] == val[v]:
            numtrue[c] += 1
            nt = numtrue[c]
            if nt == 1:
                # clause leaves the false list
                k = wherefalse[c]
                nf -= 1
                last = falselist[nf]
                falselist[k] = last
                wherefalse[last] = k
                for i in range(cl_start[c], cl_start[c + 1]):
                    make[cl_var[i]] -= 1
                brk[v] += 1
            elif nt == 2:
                for i in range(cl_start[c], cl_start[c + 1]):
                    u = cl_var[i]
                    if u != v and val[u] == cl_pos[i]:
                        brk[u] -= 1
                        break
        else:
            numtrue[c] -= 1
            nt = numtrue[c]
            if nt == 0:
                wherefalse[c] = nf
                falselist[nf] = c
                nf += 1
                for i in range(cl_start[c], cl_start[c + 1]):
                    make[cl_var[i]] += 1
                brk[v] -= 1
            elif nt == 1:
                for i in range(cl_start[c], cl_start[c + 1]):
                    u = cl_var[i]
                    if val[u] == cl_pos[i]:
                        brk[u] += 1
                        break
    return nf


@njit(cache=True)
def search(scheme, n, cl_start, cl_var, cl_pos, occ_start, occ_cl, occ_pos,
           val, cutoff, tenure, noise, rng, best_val):
    """Run one try from the assignment in `val`.

    Returns (falsified clauses at the end, flips made, fewest falsified seen);
    the assignment with the fewest falsified clauses is copied to best_val.
    """
    m = cl_start.shape[0] - 1
    numtrue = np.zeros(m, np.int64)
    make = np.zeros(n + 1, np.int64)
    brk = np.zeros(n + 1, np.int64)
    falselist = np.zeros(m + 1, np.int64)
    wherefalse = np.zeros(m + 1, np.int64)
    last_flip = np.full(n + 1, -(1 << 40), np.int64)
    nf = _init(n, cl_start, cl_var, cl_pos, val, numtrue, make, brk, falselist, wherefalse)
    best = nf
    best_val[:] = val
    step = 0
    while nf > 0 and step < cutoff:
        pick = 0
        if scheme == GSAT_TABU:
            bestd = 1 << 60
            ties = 0
            for v in range(1, n + 1):
                d = brk[v] - make[v]
                if step - last_flip[v] <= tenure and nf + d != 0:
                    continue
                if d < bestd:
                    bestd = d
                    pick = v
                    ties = 1
                elif d == bestd:
                    ties += 1
                    if _randint(rng, ties) == 0:
                        pick = v
            if pick == 0:
                # every variable tabu: plain greedy step
                for v in range(1, n + 1):
                    d = brk[v] - make[v]
                    if d < bestd:
                        bestd = d
                        pick = v
        else:
            c = falselist[_randint(rng, nf)]
            lo = cl_start[c]
            ln = cl_start[c + 1] - lo
            zeros = 0
            for i in range(lo, lo + ln):
                if brk[cl_var[i]] == 0:
                    zeros += 1
                    if _randint(rng, zeros) == 0:
                        pick = cl_var[i]
            if zeros == 0:
                if _random(rng) < noise:
                    pick = cl_var[lo + _randint(rng, ln)]
                else:
                    bestb = 1 << 60
                    ties = 0
                    for i in range(lo, lo + ln):
                        b = brk[cl_var[i]]
                        if b < bestb:
                            bestb = b
                            pick = cl_var[i]
                            ties = 1
                        elif b == bestb:
                            ties += 1
                            if _randint(rng, ties) == 0:
                                pick = cl_var[i]
        nf = _flip(pick, nf, cl_start, cl_var, cl_pos, occ_start, occ_cl, occ_pos,
                   val, numtrue, make, brk, falselist, wherefalse)
        last_flip[pick] = step
        step += 1
        if nf < best:
            best = nf
            best_val[:] = val
    return nf, step, best
