import pytest
from hypothesis import given, strategies as st

from vdwsat.certificates import (CertificateParseError, PartitionCertificate, conjecture_checks,
                                 emit_compact, expand_half, halve, is_good, is_palindrome,
                                 load_fixture, load_fixtures, max_plateau, parse_compact,
                                 peaks_valleys, run_lengths, stats, verify_good)
from vdwsat.oracle import is_good_naive

bitstrings = st.text(alphabet="01", max_size=40)


def test_parse_examples():
    assert parse_compact("01^20^21^20").bits == "01100110"
    assert parse_compact("1^{4}01^{6}0").bits == "111101111110"
    assert parse_compact("").bits == ""
    assert parse_compact(" 1^{1 2}\n0 ").bits == "1" * 12 + "0"


@pytest.mark.parametrize("bad", ["1^0", "1^", "2", "1^{}", "1^^2", "a"])
def test_parse_errors(bad):
    with pytest.raises(CertificateParseError):
        parse_compact(bad)


def test_emit_examples():
    assert emit_compact("01100110") == "01^20^21^20"
    assert emit_compact("") == ""
    assert emit_compact("000") == "0^3"
    assert emit_compact("0001", braces=True) == "0^{3}1"


@given(bitstrings)
def test_compact_roundtrip(bits):
    assert parse_compact(emit_compact(bits)).bits == bits
    assert parse_compact(emit_compact(bits, braces=True)).bits == bits


def test_verify_examples():
    assert verify_good("01100110", 3, 3) is None
    v = verify_good("111", 3, 3)
    assert (v.start, v.difference, v.block) == (1, 1, 1)
    assert v.progression() == (1, 2, 3)
    v = verify_good("01101001", 3, 3)
    assert v.block == 0 and v.progression() == (1, 4, 7)


@given(bitstrings, st.integers(1, 5), st.integers(1, 5))
def test_verify_against_naive(bits, t0, t1):
    assert is_good(bits, t0, t1) == is_good_naive(bits, t0, t1)
    v = verify_good(bits, t0, t1)
    if v is not None:
        assert all(bits[p - 1] == str(v.block) for p in v.progression())


def test_palindromes():
    assert is_palindrome("01100110")
    assert not is_palindrome("00110011")
    assert is_palindrome("")
    assert expand_half("0110", 8).bits == "01100110"
    assert expand_half("011", 5).bits == "01110"
    assert halve("01110").bits == "011"
    with pytest.raises(ValueError):
        expand_half("011", 8)


@given(st.integers(0, 40).flatmap(lambda n: st.tuples(
        st.just(n), st.text(alphabet="01", min_size=(n + 1) // 2, max_size=(n + 1) // 2))))
def test_expand_half_is_palindrome(case):
    n, half = case
    full = expand_half(half, n)
    assert len(full) == n and is_palindrome(full)
    assert halve(full).bits == half


def test_stats_worked_example():
    bits = ("1" * 8 + "00" + "1" * 6 + "0" + "111" + "0" + "1" + "0" + "111" + "00" + "1" * 5 + "0"
            + "1" * 8 + "0" + "1" * 5 + "00" + "111" + "0" + "1" + "0" + "111" + "0" + "1" * 6
            + "00" + "1" * 8)
    s = stats(bits)
    assert (s.n0, s.n1, s.n00) == (16, 60, 4)
    assert s.epos1 == (8, 6, 3, 1, 3, 5, 8, 5, 3, 1, 3, 6, 8)
    assert (s.peaks1, s.valleys1) == (3, 2)


def test_stats_second_example():
    s = stats("10101101101110111")
    assert (s.n0, s.n1, s.n00) == (5, 12, 0)
    assert (s.peaks1, s.valleys1) == (1, 1)


@given(st.integers(1, 50))
def test_stats_all_ones(k):
    s = stats("1" * k)
    assert (s.n0, s.n1, s.n00, s.epos1, s.peaks1, s.valleys1) == (0, k, 0, (k,), 1, 0)


def test_four_equal_exponents():
    s = stats("1010010101")
    assert s.epos1 == (1, 1, 1, 1, 1)
    bits = "1" + "0" + "1" + "00" + "1" + "0" + "1"
    assert stats(bits).max_plateau1 == 4
    assert conjecture_checks([bits], 3).three_equal_exponents


def test_peaks_valleys_conventions():
    assert peaks_valleys(()) == (0, 0)
    assert peaks_valleys((4, 4, 4)) == (1, 0)
    assert peaks_valleys((1, 2)) == (1, 1)
    assert peaks_valleys((1, 3, 3, 2, 5)) == (2, 2)
    assert max_plateau((1, 2, 2, 2, 1)) == 3
    assert run_lengths("1101110", "1") == (2, 3)


@given(bitstrings)
def test_stats_consistency(bits):
    s = stats(bits)
    assert s.n0 + s.n1 == s.n == len(bits)
    assert sum(s.epos0) == s.n0 and sum(s.epos1) == s.n1
    assert abs(s.runs0 - s.runs1) <= 1
    assert s.n00 == sum(1 for i in range(1, len(bits) - 2) if bits[i:i + 2] == "00")
    assert s.n00 <= sum(k - 1 for k in s.epos0)
    if "000" not in bits:
        assert s.long_runs0 == sum(k - 1 for k in s.epos0)


def test_n00_ignores_end_pairs():
    s = stats("001110010111100110101")
    assert (s.n00, s.long_runs0) == (2, 3)
    assert stats("1001").n00 == 1 and stats("00").n00 == 0


def test_t20_quintuple():
    cert = load_fixture("vdw_3_20.txt").raw()
    assert stats(cert).quintuple() == [[48, 341], [44, 45], [4, 37], [5, 27], [20, 1]]


def test_fixtures_all_verify():
    fx = load_fixtures()
    assert len(fx) >= 40
    for f in fx:
        c = f.certificate()
        assert len(c) == f.n, f.name
        assert is_good(c, f.t0, f.t1), f.name
        if f.half or f.kind == "pd":
            assert is_palindrome(c), f.name


def test_t19_text():
    c = load_fixture("vdw_3_19.txt").certificate()
    assert c.n == 348 and is_good(c, 3, 19)
    assert c.bits.startswith("1111011111101") and c.bits.endswith("011")


def test_conjecture_checks_basic():
    rep = conjecture_checks(["01100110", "10011001"], 3)
    assert (rep.min_n0, rep.max_n0, rep.max_n00) == (4, 4, 2)
    assert rep.n0_spread_ok and rep.n00_ok
    assert conjecture_checks([], 3).count == 0


def test_certificate_type():
    c = PartitionCertificate("0110")
    assert c.block(1) == [2, 3] and c.block(0) == [1, 4]
    assert c.assignment() == (False, True, True, False)
    assert c.compact() == "01^20"
    with pytest.raises(ValueError):
        PartitionCertificate("012")
