import pytest

from vdwsat.cnf import encode_pd, encode_vdw
from vdwsat.dpll import count_models, dpll
from vdwsat.oracle import (OracleBudgetError, enumerate_partitions, enumerate_pd,
                           has_progression, is_good_naive, progression_positions)


def test_examples():
    v = enumerate_partitions(3, 3, 8, want_witnesses=True)
    assert v.satisfiable and "01100110" in v.witnesses and v.count == len(v.witnesses)
    assert enumerate_partitions(3, 3, 9).count == 0
    flips = [n for n in range(1, 20) if enumerate_partitions(3, 4, n).satisfiable]
    assert flips == list(range(1, 18))


def test_pd_examples():
    v = enumerate_pd(3, 3, 8, want_witnesses=True)
    assert v.satisfiable and "01100110" in v.witnesses
    assert enumerate_pd(3, 3, 7).count == 0
    assert all(w == w[::-1] for w in v.witnesses)


def test_budget():
    with pytest.raises(OracleBudgetError):
        enumerate_partitions(3, 3, 27)
    with pytest.raises(OracleBudgetError):
        enumerate_pd(3, 3, 53)


def test_naive_scanner():
    assert has_progression("10101", "1", 3)
    assert not has_progression("01100110", "1", 3)
    assert is_good_naive("01100110", 3, 3)
    assert progression_positions(3, 5) == [(1, 2, 3), (1, 3, 5), (2, 3, 4), (3, 4, 5)]
    assert progression_positions(1, 2) == [(1,), (2,)]


def test_count_zero_iff_unsat():
    for n in range(0, 12):
        v = enumerate_partitions(3, 3, n, want_witnesses=True)
        assert (v.count == 0) == (not v.satisfiable)
        assert all(is_good_naive(w, 3, 3) for w in v.witnesses)


@pytest.mark.parametrize("t1", [3, 4, 5])
def test_vdw_grid_small(t1):
    # the full n <= 24 grid runs in the acceptance suite
    for n in range(0, 17):
        f = encode_vdw(3, t1, n)
        o = enumerate_partitions(3, t1, n)
        assert dpll(f).is_sat == o.satisfiable
        assert count_models(f) == o.count


@pytest.mark.parametrize("t1", [3, 4, 5, 6])
def test_pd_grid_small(t1):
    for n in range(0, 31):
        f = encode_pd(3, t1, n)
        o = enumerate_pd(3, t1, n)
        assert dpll(f).is_sat == o.satisfiable
        assert count_models(f) == o.count
