import pytest
from hypothesis import given, strategies as st

from vdwsat.cnf import (CnfFormula, DimacsError, assignment_to_partition, cnf_filename,
                        emit_dimacs, encode_pd, encode_vdw, parse_dimacs, pd_middle_unit)
from vdwsat.dpll import dpll
from vdwsat.hypergraphs import pdarithp

VDW_346 = """1 2 3 0
2 3 4 0
1 3 5 0
3 4 5 0
2 4 6 0
4 5 6 0
-1 -2 -3 -4 0
-2 -3 -4 -5 0
-3 -4 -5 -6 0
"""

PD_349 = """1 2 3 0
2 4 0
1 3 4 0
1 5 0
2 5 0
3 5 0
4 5 0
-2 -4 0
-1 -3 -5 0
-3 -4 -5 0
"""


def body(text):
    return "".join(l + "\n" for l in text.splitlines() if not l.startswith("c"))


def test_encode_vdw_listing():
    f = encode_vdw(3, 4, 6)
    assert (f.num_vars, f.num_clauses) == (6, 9)
    assert body(emit_dimacs(f)) == "p cnf 6 9\n" + VDW_346


def test_encode_pd_listing():
    f = encode_pd(3, 4, 9)
    assert body(emit_dimacs(f)) == "p cnf 5 10\n" + PD_349


def test_pd_clauses_are_hyperedges():
    for t0, t1, n in [(3, 4, 9), (3, 5, 20), (4, 6, 31)]:
        f = encode_pd(t0, t1, n)
        pos = {frozenset(c) for c in f.clauses if c[0] > 0}
        neg = {frozenset(-l for l in c) for c in f.clauses if c[0] < 0}
        assert pos == pdarithp(t0, n).edge_set()
        assert neg == pdarithp(t1, n).edge_set()


def test_bad_lengths():
    with pytest.raises(ValueError):
        encode_vdw(1, 3, 5)
    with pytest.raises(ValueError):
        encode_vdw(4, 3, 5)
    with pytest.raises(ValueError):
        encode_pd(3, 3, -1)


def test_known_satisfiability():
    f8 = encode_vdw(3, 3, 8)
    assert f8.is_satisfied_by([c == "1" for c in "01100110"])
    assert dpll(encode_vdw(3, 3, 9)).is_unsat
    assert encode_pd(3, 3, 8).is_satisfied_by([c == "1" for c in "0110"])
    assert dpll(encode_pd(3, 3, 10)).is_unsat


def test_middle_unit():
    f = encode_pd(3, 9, 9)
    g = pd_middle_unit(f, 3, 9)
    assert g.clauses == f.clauses + ((5,),)
    f8 = encode_pd(3, 9, 8)
    assert pd_middle_unit(f8, 3, 8) is f8
    assert pd_middle_unit(f, 4, 9) is f
    # guard: 1..5 minus the middle has no 3-progression in {1,2,4,5}
    f5 = encode_pd(3, 3, 5)
    assert pd_middle_unit(f5, 3, 5, 3) is f5


@pytest.mark.parametrize("t1", [3, 4, 5, 6])
def test_middle_unit_preserves_satisfiability(t1):
    for n in range(1, 50, 2):
        f = encode_pd(3, t1, n)
        assert dpll(f).is_sat == dpll(pd_middle_unit(f, 3, n)).is_sat == \
            dpll(pd_middle_unit(f, 3, n, t1)).is_sat


def test_middle_unit_3_5_19():
    f = encode_pd(3, 5, 19)
    assert dpll(f).verdict == dpll(pd_middle_unit(f, 3, 19)).verdict


def test_filenames():
    assert cnf_filename("vdw", 3, 4, 6) == "vdw_2-3-4_6.cnf"
    assert cnf_filename("pd", 3, 4, 9) == "vdw_pd_2-3-4_9.cnf"
    with pytest.raises(ValueError):
        cnf_filename("x", 3, 4, 9)


def test_empty_formula():
    text = emit_dimacs(CnfFormula(0, ()))
    assert text == "p cnf 0 0\n"
    assert parse_dimacs(text) == CnfFormula(0, ())


def test_parse_examples():
    f = parse_dimacs("c listing\np cnf 6 9\n" + VDW_346)
    assert (f.num_vars, f.num_clauses) == (6, 9)
    assert f.comments == ("listing",)
    assert parse_dimacs("p cnf 1 1\n1 0\n").clauses == ((1,),)
    # clauses may span lines
    assert parse_dimacs("p cnf 3 2\n1 2\n 3 0 -1\n0\n").clauses == ((1, 2, 3), (-1,))


@pytest.mark.parametrize("text, line", [
    ("p cnf 4 5\n1 0\n2 0\n3 0\n4 0\n", 5),
    ("p cnf 2 1\n1 3 0\n", 2),
    ("p cnf x 1\n1 0\n", 1),
    ("p cnf 2 1\n1 2\n", 2),
    ("1 0\np cnf 1 1\n", 1),
    ("p cnf 2 1\np cnf 2 1\n", 2),
    ("p cnf 2 1\n1 a 0\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(DimacsError) as ei:
        parse_dimacs(text)
    assert ei.value.lineno == line
    assert f"line {line}" in str(ei.value)


clause = st.lists(st.integers(1, 8).flatmap(lambda v: st.sampled_from([v, -v])),
                  min_size=0, max_size=5)


@given(st.lists(clause, max_size=20),
       st.lists(st.text(alphabet="abc xyz=", max_size=10), max_size=3))
def test_roundtrip(clauses, comments):
    f = CnfFormula(8, tuple(tuple(c) for c in clauses), tuple(c.strip() for c in comments))
    text = emit_dimacs(f)
    assert parse_dimacs(text) == f
    assert emit_dimacs(parse_dimacs(text)) == text


def test_assignment_to_partition():
    assert assignment_to_partition([False, True, True, False], 8, palindromic=True).bits == "01100110"
    assert assignment_to_partition([False, True, True], 5, palindromic=True).bits == "01110"
    assert assignment_to_partition({2: True, 3: True}, 5).bits == "01100"
    f = encode_vdw(3, 4, 17)
    r = dpll(f)
    from vdwsat.certificates import is_good
    cert = assignment_to_partition(r.witness, 17, formula=f)
    assert is_good(cert, 3, 4)
    with pytest.raises(ValueError):
        assignment_to_partition([True] * 9, 9, formula=encode_vdw(3, 3, 9))
