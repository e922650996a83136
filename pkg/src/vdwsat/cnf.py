"""SAT encodings of "w(2;t0,t1) > n ?" and "vdw_pd(2;t0,t1) > n ?", DIMACS I/O.

Variable i true means vertex i is in block 1 (the block that must avoid
progressions of length t1); false means block 0 (length t0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .hypergraphs import arithp, pdarithp


class DimacsError(ValueError):
    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    comments: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        object.__setattr__(self, "comments", tuple(self.comments))
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def with_clauses(self, extra: Iterable[Sequence[int]]) -> "CnfFormula":
        return CnfFormula(self.num_vars, self.clauses + tuple(tuple(c) for c in extra), self.comments)

    def is_satisfied_by(self, assignment: Mapping[int, bool] | Sequence[bool]) -> bool:
        """True iff every clause has a true literal; missing variables count as false."""
        if isinstance(assignment, Mapping):
            val = lambda v: bool(assignment.get(v, False))
        else:
            val = lambda v: bool(assignment[v - 1]) if v <= len(assignment) else False
        return all(any(val(abs(l)) == (l > 0) for l in c) for c in self.clauses)


def _check_lengths(t0: int, t1: int, n: int) -> None:
    if t0 < 2 or t1 < t0:
        raise ValueError(f"need 2 <= t0 <= t1, got t0={t0}, t1={t1}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")


def encode_vdw(t0: int, t1: int, n: int) -> CnfFormula:
    """Positive clauses for progressions of length t0, negative ones for t1."""
    _check_lengths(t0, t1, n)
    pos = arithp(t0, n).edges
    neg = tuple(tuple(-v for v in e) for e in arithp(t1, n).edges)
    comments = (
        "generator vdwsat encode_vdw",
        "van der Waerden problem, 2 parts",
        f"progression lengths t0 = {t0}, t1 = {t1}",
        f"number of elements n = {n}",
        "progressions iterated in colexicographical order",
    )
    return CnfFormula(n, pos + neg, comments)


def encode_pd(t0: int, t1: int, n: int) -> CnfFormula:
    """Palindromic encoding over the ceil(n/2) representative vertices."""
    _check_lengths(t0, t1, n)
    half = (n + 1) // 2
    pos = pdarithp(t0, n).edges
    neg = tuple(tuple(-v for v in e) for e in pdarithp(t1, n).edges)
    comments = (
        "generator vdwsat encode_pd",
        "palindromic van der Waerden problem, 2 parts",
        f"progression lengths t0 = {t0}, t1 = {t1}",
        f"number of elements n = {n}, variables {half}",
    )
    return CnfFormula(half, pos + neg, comments)


def pd_middle_unit(formula: CnfFormula, t0: int, n: int, t1: int | None = None) -> CnfFormula:
    """Add the unit forcing the middle vertex into block 1 (odd n, t0 == 3).

    With the middle vertex m in block 0 every other vertex v of block 0 would
    give the progression v, m, n+1-v, so block 0 would be {m} and block 1 all
    of the rest.  The unit is therefore sound exactly when 1..n without m
    contains a progression of length t1; when t1 is given and that fails
    (small n), the formula is returned unchanged, as it is for even n or
    t0 != 3.
    """
    if n % 2 == 0 or t0 != 3:
        return formula
    mid = (n + 1) // 2
    if t1 is not None:
        from .certificates import is_good
        if is_good("1" * (mid - 1) + "0" + "1" * (mid - 1), t0, t1):
            return formula
    return CnfFormula(formula.num_vars, formula.clauses + ((mid,),),
                      formula.comments + (f"middle vertex {mid} forced into block 1",))


def cnf_filename(kind: str, t0: int, t1: int, n: int) -> str:
    if kind == "vdw":
        return f"vdw_2-{t0}-{t1}_{n}.cnf"
    if kind == "pd":
        return f"vdw_pd_2-{t0}-{t1}_{n}.cnf"
    raise ValueError(f"unknown kind {kind!r}")


def emit_dimacs(formula: CnfFormula) -> str:
    lines = [f"c {c}" if c else "c" for c in formula.comments]
    lines.append(f"p cnf {formula.num_vars} {formula.num_clauses}")
    lines.extend(" ".join(map(str, c)) + " 0" if c else "0" for c in formula.clauses)
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    comments: list[str] = []
    clauses: list[tuple[int, ...]] = []
    header: tuple[int, int] | None = None
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line[0] == "c" and (len(line) == 1 or line[1] in " \t"):
            comments.append(raw[2:] if raw.startswith("c ") else line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if nv < 0 or nc < 0:
                raise DimacsError("negative counts in header", lineno)
            header = (nv, nc)
            last_line = lineno
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        if line.startswith("%"):
            break
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError(f"literal {lit} out of range 1..{header[0]}", lineno)
            else:
                current.append(lit)
        last_line = lineno
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause not terminated by 0", last_line)
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}",
                          last_line)
    return CnfFormula(header[0], tuple(clauses), tuple(comments))


def assignment_to_partition(assignment: Mapping[int, bool] | Sequence[bool], n: int,
                            palindromic: bool = False,
                            formula: CnfFormula | None = None):
    """Turn a (possibly partial) assignment into a length-n certificate.

    Unassigned variables go to block 0.  With ``palindromic`` the assignment
    covers 1..ceil(n/2) and is reflected.  If ``formula`` is given the completed
    assignment is checked against it.
    """
    from .certificates import PartitionCertificate, expand_half

    nv = (n + 1) // 2 if palindromic else n
    if isinstance(assignment, Mapping):
        bits = "".join("1" if assignment.get(v, False) else "0" for v in range(1, nv + 1))
    else:
        if len(assignment) > nv:
            raise ValueError(f"assignment has {len(assignment)} entries, expected <= {nv}")
        bits = "".join("1" if b else "0" for b in assignment).ljust(nv, "0")
    if formula is not None and not formula.is_satisfied_by([c == "1" for c in bits]):
        raise ValueError("completed assignment does not satisfy the formula")
    if palindromic:
        return expand_half(bits, n)
    return PartitionCertificate(bits)
