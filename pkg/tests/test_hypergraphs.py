import pytest
from hypothesis import given, strategies as st

from vdwsat.hypergraphs import (Hypergraph, arithp, colex_key, count_progressions, dump_pdarithp,
                                minimal_sets, mirror, pdarithp)


def brute_aps(t, n):
    out = set()
    for a in range(1, n + 1):
        for d in range(1, n + 1):
            if a + (t - 1) * d <= n:
                out.add(frozenset(a + i * d for i in range(t)))
    return out


def test_arithp_3_5():
    assert arithp(3, 5).edges == ((1, 2, 3), (2, 3, 4), (1, 3, 5), (3, 4, 5))


def test_arithp_empty_and_small():
    assert arithp(3, 0) == Hypergraph(0, ())
    assert arithp(3, 2).edges == ()
    assert len(arithp(3, 9)) == 16
    assert arithp(1, 3).edges == ((1,), (2,), (3,))


@pytest.mark.parametrize("t", range(1, 7))
def test_count_matches_enumeration(t):
    for n in range(0, 101):
        assert count_progressions(t, n) == len(arithp(t, n))
    for n in range(0, 30):
        assert arithp(t, n).edge_set() == brute_aps(t, n)


def test_edges_in_colex_order():
    for t in (2, 3, 4):
        e = arithp(t, 30).edges
        assert list(e) == sorted(e, key=colex_key)


def test_mirror():
    assert mirror(5, 4) == 2
    assert mirror(5, 3) == 3
    assert mirror(6, 6) == 1
    with pytest.raises(ValueError):
        mirror(5, 0)
    with pytest.raises(ValueError):
        mirror(5, 6)


def test_pdarithp_examples():
    assert pdarithp(3, 5) == Hypergraph(3, ((1, 3), (2, 3)))
    assert pdarithp(4, 9).edge_set() == {frozenset(s) for s in ({2, 4}, {1, 3, 5}, {3, 4, 5})}
    assert pdarithp(3, 9).edges == ((1, 2, 3), (2, 4), (1, 3, 4), (1, 5), (2, 5), (3, 5), (4, 5))
    assert pdarithp(3, 0) == Hypergraph(0, ())


def brute_pdarithp(t, n):
    imgs = {frozenset(mirror(n, v) for v in e) for e in brute_aps(t, n)}
    return {s for s in imgs if not any(o < s for o in imgs)}


@given(st.integers(1, 6), st.integers(0, 45))
def test_pdarithp_against_definition(t, n):
    h = pdarithp(t, n)
    assert h.num_vertices == (n + 1) // 2
    assert h.edge_set() == brute_pdarithp(t, n)
    es = h.edge_set()
    assert not any(a < b for a in es for b in es)


@given(st.integers(1, 6), st.integers(0, 60))
def test_embedding(t, n):
    small = pdarithp(t, n)
    big = pdarithp(t, n + 2)
    shifted = {frozenset(v + 1 for v in e) for e in small.edge_set()}
    assert shifted == {e for e in big.edge_set() if 1 not in e}
    assert big.num_vertices == small.num_vertices + 1


def test_minimal_sets_large_sets():
    fam = [frozenset(range(1, 7)), frozenset(range(1, 6)), frozenset({2, 9}),
           frozenset({2, 9, 11, 12, 13, 14}), frozenset({3, 4, 5, 6, 7, 8})]
    got = set(minimal_sets(fam))
    assert got == {frozenset(range(1, 6)), frozenset({2, 9}), frozenset({3, 4, 5, 6, 7, 8})}


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        Hypergraph(3, ((2, 1),))
    with pytest.raises(ValueError):
        Hypergraph(3, ((1, 4),))
    with pytest.raises(ValueError):
        Hypergraph(3, ((1, 2), (1, 2)))


def test_dump():
    assert dump_pdarithp(3, 5) == "palindromised hypergraph t=3 n=5\n1 3\n2 3\n"
