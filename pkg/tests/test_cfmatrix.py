from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from c2finite.cfinite import cf_const, cf_fibonacci, cf_geometric, cf_indicator
from c2finite.cfmatrix import (CFMatrixSeq, cfm_at, cfm_det, cfm_det_adjugate, cfm_inverse_on_residue,
                               cfm_mul, cfm_subseq, cfm_transpose, const_power_seq)
from c2finite.errors import ExtractionError
from c2finite.linalg import RingMatrix, mat_det
from c2finite.rings import QQ
from strategies import cfinite_seqs

small = st.integers(-2, 2).map(Fraction)


@st.composite
def const_matrices(draw, max_r=4):
    r = draw(st.integers(1, max_r))
    return RingMatrix(QQ, draw(st.lists(st.lists(small, min_size=r, max_size=r), min_size=r, max_size=r)))


@settings(max_examples=25)
@given(const_matrices())
def test_power_law_all_shifts(M):
    for c in (1, 2, 3):
        for d in range(-3, 4):
            P = const_power_seq(M, c, d)
            for n in range(32):
                e = c * n + d
                want = M ** e if e >= 0 else RingMatrix.zeros(QQ, M.rows, M.cols)
                assert cfm_at(P, n) == want


def test_power_law_rejects_c_zero():
    with pytest.raises(ValueError):
        const_power_seq(RingMatrix.identity(QQ, 2), 0, 1)


def test_power_products_and_det():
    F = RingMatrix(QQ, [[1, 1], [1, 0]])
    P1 = const_power_seq(F, 1, 0)
    P2 = const_power_seq(F, 2, 0)
    prod = cfm_mul(P1, P1)
    assert all(cfm_at(prod, n) == cfm_at(P2, n) for n in range(20))
    det = cfm_det(P1)
    assert det.terms(10) == [(-1) ** n for n in range(10)]


@st.composite
def seq_matrices(draw, r=2):
    return CFMatrixSeq(QQ, [[draw(cfinite_seqs(max_order=2, max_vf=1)) for _ in range(r)] for _ in range(r)])


@settings(max_examples=20)
@given(seq_matrices(), seq_matrices())
def test_product_and_determinant_termwise(A, B):
    AB = cfm_mul(A, B)
    det, adj = cfm_det_adjugate(A)
    for n in range(16):
        a, b = cfm_at(A, n), cfm_at(B, n)
        assert cfm_at(AB, n) == a @ b
        assert det.term(n) == mat_det(a)
        assert a @ cfm_at(adj, n) == RingMatrix.identity(QQ, 2).scale(det.term(n))


@given(seq_matrices())
def test_transpose_and_subseq(A):
    T = cfm_transpose(A)
    S = cfm_subseq(A, 2, 1)
    for n in range(10):
        assert cfm_at(T, n) == cfm_at(A, n).T
        assert cfm_at(S, n) == cfm_at(A, 2 * n + 1)


def test_zero_divisor_determinant():
    a, b = cf_indicator(2, 0), cf_indicator(2, 1)
    A = CFMatrixSeq(QQ, [[a, cf_const(QQ, 0)], [cf_const(QQ, 0), b]])
    assert all(x == 0 for x in cfm_det(A).terms(12))
    with pytest.raises(ExtractionError):
        cfm_inverse_on_residue(A, 1, 0)
    # on the even residue class the first factor is 1 but the second is 0
    adj, det = cfm_inverse_on_residue(CFMatrixSeq(QQ, [[a, b], [b, a]]), 2, 0)
    assert det.terms(5) == [1] * 5


def test_inverse_on_residue():
    g = cf_geometric(QQ, 2)
    A = CFMatrixSeq(QQ, [[g, cf_fibonacci(QQ)], [cf_const(QQ, 0), cf_const(QQ, 1)]])
    adj, det = cfm_inverse_on_residue(A, 1, 0)
    for n in range(10):
        assert cfm_at(A, n) @ cfm_at(adj, n) == RingMatrix.identity(QQ, 2).scale(det.term(n))


def test_json_round_trip():
    P = const_power_seq(RingMatrix(QQ, [[1, 1], [1, 0]]), 2, 1)
    Q = CFMatrixSeq.from_json(P.to_json())
    assert all(cfm_at(P, n) == cfm_at(Q, n) for n in range(10))
