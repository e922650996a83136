from fractions import Fraction

import pytest

from vdwsat.certificates import is_good, is_palindrome
from vdwsat.dpll import Verdict
from vdwsat.numbers import (Limits, PdNumber, Probe, SatProfile, SoundnessError, certify_pd,
                            check_growth_bounds, compute_pd, compute_vdw, growth_bound,
                            known_values, probe)


@pytest.mark.parametrize("t, w", [(3, 9), (4, 18), (5, 22), (6, 32)])
@pytest.mark.parametrize("strategy", ["hybrid", "dpll"])
def test_compute_vdw_small(t, w, strategy):
    r = compute_vdw(3, t, strategy)
    assert r.exact and r.value == w and r.interval() == (w, w)
    assert r.witness.n == w - 1 and is_good(r.witness, 3, t)
    assert r.unsat_evidence.verdict is Verdict.UNSAT and r.unsat_evidence.n == w


def test_compute_vdw_other_first_length():
    assert compute_vdw(4, 4).value == 35
    assert compute_vdw(2, 5).value == 10


def test_compute_vdw_walks_down():
    r = compute_vdw(3, 5, n_start=40)
    assert r.value == 22


def test_compute_vdw_interval_when_limited():
    r = compute_vdw(3, 6, limits=Limits(n_max=25))
    assert not r.exact and r.interval() == (26, None)
    r = compute_vdw(3, 6, "dpll", Limits(node_budget=5), n_start=32)
    assert r.value is None and r.profile.solved[32].verdict is Verdict.INDETERMINATE


@pytest.mark.parametrize("t, pq", [(3, (6, 9)), (4, (15, 16)), (5, (16, 21)), (6, (30, 31)),
                                   (7, (41, 44))])
def test_compute_pd_small(t, pq):
    res = compute_pd(3, t, w=known_values()[t].w)
    num = res.number
    assert (num.p, num.q) == pq
    assert num.span % 2 == 1
    assert num.gap == known_values()[t].w - pq[1]
    prof = res.profile
    lo = pq[0] + 1
    for n in range(pq[0] + 1, pq[1]):
        assert prof.verdict_at(n) is (Verdict.UNSAT if (n - lo) % 2 == 0 else Verdict.SAT)
    for n in range(1, pq[0] + 1):
        assert prof.verdict_at(n) is Verdict.SAT
    assert prof.verdict_at(pq[1] + 1) is Verdict.UNSAT and prof.verdict_at(pq[1] + 2) is Verdict.UNSAT


def test_compute_pd_incomplete():
    res = compute_pd(3, 6, limits=Limits(n_max=30))
    assert res.number is None
    assert res.first_unsat[1] is None or res.first_unsat[0] is None


def test_pd_number_structure():
    PdNumber(3, 3, 6, 9, 9).check_structure()
    with pytest.raises(SoundnessError):
        PdNumber(3, 3, 6, 8).check_structure()
    with pytest.raises(SoundnessError):
        PdNumber(3, 3, 6, 11, 9).check_structure()


def test_certify_pd():
    c = certify_pd(PdNumber(3, 5, 16, 21))
    assert set(c.partitions) == {15, 20} and set(c.refutations) == {17, 22}
    for n, cert in c.partitions.items():
        assert cert.n == n and is_palindrome(cert) and is_good(cert, 3, 5)


def test_probe_strategies():
    p = probe("vdw", 3, 4, 17, "dpll")
    assert p.verdict is Verdict.SAT and p.method == "dpll" and is_good(p.certificate, 3, 4)
    p = probe("pd", 3, 4, 15)
    assert p.verdict is Verdict.SAT and is_palindrome(p.certificate)
    assert probe("vdw", 3, 4, 0).method == "trivial"
    with pytest.raises(ValueError):
        probe("vdw", 3, 4, 10, "guess")


def test_profile_inference():
    prof = SatProfile(True, {9: Probe(9, Verdict.UNSAT, "dpll"), 8: Probe(8, Verdict.SAT, "dpll")})
    assert prof.verdict_at(11) is Verdict.UNSAT
    assert prof.verdict_at(6) is Verdict.SAT
    assert prof.verdict_at(10) is Verdict.INDETERMINATE
    assert prof.verdict_at(7) is Verdict.INDETERMINATE


def test_known_values_table():
    kv = known_values()
    assert sorted(kv) == list(range(3, 40))
    assert kv[19].w == 349 and kv[19].w_exact and not kv[20].w_exact
    for t, k in kv.items():
        assert k.span % 2 == 1 and k.pd[1] <= k.w
    assert (kv[3].span, kv[3].gap) == (3, 0)


def test_growth_bound_values():
    assert growth_bound(3) == Fraction(9)
    rep = check_growth_bounds()
    assert rep.refuted_at == list(range(24, 31))
    assert rep.all_within_bound
    best = rep.max_slope
    assert best.t == 24 and best.slope == Fraction(77, 23)
    four = next(r for r in rep.rows if r.t == 4)
    assert four.exceeds_square and not four.refutes_square_bound


def test_growth_custom_values():
    rep = check_growth_bounds({5: 22, 6: 100})
    assert rep.refuted_at == [6] and not rep.all_within_bound
    assert rep.rows[1].difference == 78
