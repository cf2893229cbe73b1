import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from c2finite.cfinite import (CFiniteSeq, cf_add, cf_const, cf_delay, cf_equal,
                              cf_fibonacci, cf_geometric, cf_indicator, cf_is_zero, cf_minimize,
                              cf_mul, cf_neg, cf_scale, cf_shift, cf_sub, cf_subseq, cf_zero,
                              cf_zero_pattern, growth_exponent)
from c2finite.errors import DomainMismatch, PatternNotFound
from c2finite.rings import QQ, MPoly, RatFuncField
from strategies import cfinite_seqs

FIB11 = cf_fibonacci(QQ, (1, 1))


def test_terms_and_examples():
    assert FIB11.term(8) == 34
    assert cf_indicator(2, 0).term(5) == 0
    assert cf_indicator(3, 2).terms(6) == [0, 0, 1, 0, 0, 1]
    assert cf_indicator(1, 0).terms(4) == [1, 1, 1, 1]
    with pytest.raises(ValueError):
        cf_indicator(2, 2)


def test_closure_examples():
    assert cf_add(FIB11, cf_const(QQ, 1)).terms(6) == [2, 2, 3, 4, 6, 9]
    assert cf_mul(FIB11, FIB11).terms(6) == [1, 1, 4, 9, 25, 64]
    s = cf_minimize(cf_subseq(FIB11, 2, 1))
    assert s.terms(4) == [1, 3, 8, 21]
    assert s.coeffs == (-1, 3)
    assert cf_add(cf_indicator(2, 0), cf_indicator(2, 1)).terms(8) == [1] * 8


def test_zero_divisors():
    a, b = cf_indicator(2, 0), cf_indicator(2, 1)
    assert not cf_is_zero(a) and not cf_is_zero(b)
    assert cf_is_zero(cf_mul(a, b))
    assert cf_is_zero(cf_sub(FIB11, FIB11))


def test_minimize_examples():
    twice = cf_add(FIB11, FIB11)
    assert cf_minimize(twice).order == 2
    assert cf_minimize(CFiniteSeq(QQ, [1, 2, 3], [0, 0, 0])).order == 0
    assert cf_minimize(FIB11) is FIB11 or cf_minimize(FIB11).order == 2


@settings(max_examples=200)
@given(cfinite_seqs(), cfinite_seqs())
def test_closure_laws_termwise(a, b):
    n = 64
    ta, tb = a.terms(n), b.terms(n)
    assert cf_add(a, b).terms(n) == [x + y for x, y in zip(ta, tb)]
    assert cf_mul(a, b).terms(n) == [x * y for x, y in zip(ta, tb)]


@given(cfinite_seqs(), st.integers(1, 3), st.integers(0, 3))
def test_subseq_termwise(a, t, r):
    assert cf_subseq(a, t, r).terms(40) == [a.term(t * n + r) for n in range(40)]


@given(cfinite_seqs())
def test_subseq_identity_and_shift(a):
    assert cf_subseq(a, 1, 0).terms(30) == a.terms(30)
    assert cf_subseq(a, 1, 2).terms(30) == a.terms(32)[2:]
    assert cf_shift(a, 3).terms(20) == a.terms(23)[3:]


@given(cfinite_seqs())
def test_minimize_preserves_terms(a):
    m = cf_minimize(a)
    assert m.order <= a.order
    assert m.terms(60) == a.terms(60)
    assert cf_equal(m, a)


@given(cfinite_seqs(max_vf=0))
def test_exact_minimization_not_worse_than_hankel(a):
    m = cf_minimize(a)
    h = cf_minimize(a, method="hankel")
    assert m.terms(40) == h.terms(40)
    assert m.order <= h.order


@given(cfinite_seqs())
def test_recurrence_holds_on_window(a):
    t = a.terms(a.valid_from + a.order + 200)
    s = a.order
    for n in range(a.valid_from, len(t) - s):
        assert t[n + s] == sum(c * t[n + i] for i, c in enumerate(a.coeffs))


@given(cfinite_seqs(), st.integers(1, 3))
def test_delay_prefixes_zeros(a, k):
    assert cf_delay(a, k).terms(30) == [0] * k + a.terms(30 - k)


def test_negative_shift_extends_backwards():
    f = cf_fibonacci(QQ)
    assert cf_shift(cf_shift(f, 5), -5).terms(10) == f.terms(10)


def test_scale_and_neg():
    assert cf_scale(FIB11, Fraction(1, 2)).terms(4) == [Fraction(1, 2), Fraction(1, 2), 1, Fraction(3, 2)]
    assert cf_neg(FIB11).term(3) == -3


def test_domain_mismatch():
    dom = RatFuncField(("x",))
    with pytest.raises(DomainMismatch):
        cf_add(FIB11, cf_const(dom, dom.one))


def test_ratfunc_sequences():
    dom = RatFuncField(("x",))
    x = dom.convert(MPoly.var(("x",), "x"))
    g = cf_geometric(dom, x)
    s = cf_minimize(cf_add(cf_mul(g, g), g))
    assert s.terms(4) == [2, x + x ** 2, x ** 2 + x ** 4, x ** 3 + x ** 6]


def test_json_round_trip():
    for a in (FIB11, cf_delay(cf_geometric(QQ, 2), 2), cf_zero(QQ)):
        b = CFiniteSeq.from_json(a.to_json())
        assert b.terms(20) == a.terms(20) and b.valid_from == a.valid_from


def test_zero_patterns():
    odd_zero = cf_indicator(2, 0)
    zp = cf_zero_pattern(odd_zero)
    assert (zp.exceptional, zp.n1, zp.period, zp.residues) == (frozenset(), 0, 2, frozenset({1}))
    zp = cf_zero_pattern(FIB11)
    assert not zp.residues and not zp.exceptional
    zp = cf_zero_pattern(cf_fibonacci(QQ))
    assert zp.exceptional == {0} and not zp.residues
    assert zp.proof_status == "empirical"


def test_zero_pattern_bounds():
    long_period = cf_indicator(9, 0)
    with pytest.raises(PatternNotFound):
        cf_zero_pattern(long_period, n1_max=2, p_max=4, horizon=40)


@given(cfinite_seqs())
def test_zero_pattern_reproduces_zero_set(a):
    try:
        zp = cf_zero_pattern(a, horizon=48)
    except PatternNotFound:
        return
    for n, x in enumerate(a.terms(49)):
        assert zp.predicts_zero(n) == (x == 0)


def test_growth_exponent():
    alpha = growth_exponent(cf_fibonacci(QQ).terms(60))
    assert 1.5 < alpha < 1.7


def test_concurrent_term_reads():
    f = cf_fibonacci(QQ)
    results = []

    def work():
        results.append(f.term(300))

    ts = [threading.Thread(target=work) for _ in range(8)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert len(set(results)) == 1
