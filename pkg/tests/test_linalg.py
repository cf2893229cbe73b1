from fractions import Fraction

from hypothesis import given, strategies as st

from c2finite.linalg import (RingMatrix, char_poly, companion, in_span, mat_adjugate, mat_det,
                             mat_det_bruteforce, nullspace, poly_eval_matrix, rank, solve)
from c2finite.rings import QQ, MPoly, PolyRing, RatFuncField
from strategies import rationals


def qmat(draw_rows):
    return RingMatrix(QQ, draw_rows)


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_det_matches_leibniz(rows):
    A = qmat(rows)
    assert mat_det(A) == mat_det_bruteforce(A)


@given(square)
def test_adjugate_identity(rows):
    A = qmat(rows)
    n = A.rows
    assert A @ mat_adjugate(A) == RingMatrix.identity(QQ, n).scale(mat_det(A))


@given(square)
def test_cayley_hamilton(rows):
    A = qmat(rows)
    chi = char_poly(A)
    assert chi[-1] == 1 and len(chi) == A.rows + 1
    assert poly_eval_matrix(chi, A).is_zero()


@given(square, square)
def test_det_multiplicative(a, b):
    A, B = qmat(a), qmat(b)
    if A.rows == B.rows:
        assert mat_det(A @ B) == mat_det(A) * mat_det(B)


def test_det_over_ratfuncs_matches_leibniz():
    dom = RatFuncField(("x", "y"))
    x = dom.convert(MPoly.var(("x", "y"), "x"))
    y = dom.convert(MPoly.var(("x", "y"), "y"))
    A = RingMatrix(dom, [[x, 1 / x, y, 1], [y, x + y, 2, x / y],
                         [1, 0, x * y, 3], [x - 1, y, 1 / (x + 1), 0]])
    assert mat_det(A) == mat_det_bruteforce(A)


def test_det_over_polynomials():
    dom = PolyRing(("x",))
    x = MPoly.var(("x",), "x")
    A = RingMatrix(dom, [[x, 1, 0, 0], [1, x, 1, 0], [0, 1, x, 1], [0, 0, 1, x]])
    assert mat_det(A) == x ** 4 - 3 * x ** 2 + 1


def test_companion_advances_fibonacci():
    C = companion(QQ, [1, 1])  # a_{n+2} = a_n + a_{n+1}
    v = [Fraction(1), Fraction(0)]  # (a_1, a_0)
    for _ in range(10):
        v = C.apply(v)
    assert v == [89, 55]


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_and_rank(rows):
    A = qmat(rows)
    ns = nullspace(A)
    assert rank(A) + len(ns) == A.cols
    for v in ns:
        assert all(x == 0 for x in A.apply(v))


def test_solve_and_span():
    A = qmat([[1, 2], [3, 4]])
    x = solve(A, [5, 6])
    assert A.apply(x) == [5, 6]
    assert in_span([[1, 0, 0], [0, 1, 0]], [2, 3, 0], QQ)
    assert not in_span([[1, 0, 0], [0, 1, 0]], [0, 0, 1], QQ)


def test_kron_and_power():
    A = qmat([[1, 1], [1, 0]])
    assert (A ** 10)[0, 1] == 55
    K = A.kron(RingMatrix.identity(QQ, 2))
    assert K.rows == 4 and K[0, 2] == 1 and K[1, 3] == 1 and K[0, 1] == 0
