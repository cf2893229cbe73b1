"""Dense univariate polynomials in an auxiliary variable over a field domain.

Polynomials are plain lists of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  These helpers build
annihilating polynomials for closure operations on C-finite sequences.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .rings import QQ, MPoly, RatFuncField, _sympy_ring, poly_cofactors


def trim(p: Sequence) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def add(dom, a, b) -> list:
    n = max(len(a), len(b))
    z = dom.zero
    return trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])


def mul(dom, a, b) -> list:
    if not a or not b:
        return []
    out = [dom.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return trim(out)


def power(dom, a, k: int) -> list:
    out = [dom.one]
    for _ in range(k):
        out = mul(dom, out, a)
    return out


def monic(dom, a) -> list:
    if not a:
        return []
    lc = a[-1]
    if lc == dom.one:
        return list(a)
    inv = dom.one / lc
    return [x * inv for x in a]


def divmod_(dom, a, b) -> Tuple[list, list]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    if len(a) < len(b):
        return [], a
    q = [dom.zero] * (len(a) - len(b) + 1)
    r = list(a)
    inv = dom.one / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv
        q[k] = c
        if c:
            for j, y in enumerate(b):
                if y:
                    r[k + j] = r[k + j] - c * y
    return trim(q), trim(r[:len(b) - 1])


def _euclid(dom, a, b) -> list:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, monic(dom, divmod_(dom, a, b)[1])
    return monic(dom, a)


def _gcd_qq(a, b) -> list:
    from sympy.polys.domains import QQ as SQQ
    from sympy.polys.euclidtools import dup_gcd

    A = [SQQ(x.numerator, x.denominator) for x in reversed(a)]
    B = [SQQ(x.numerator, x.denominator) for x in reversed(b)]
    g = dup_gcd(A, B, SQQ)
    return [Fraction(int(x.numerator), int(x.denominator)) for x in reversed(g)]


def _gcd_ratfunc(dom, a, b) -> list:
    """gcd over Q(vars)[lam] via a polynomial gcd in Q[vars, lam]."""
    vars = dom.vars
    R, SQQ = _sympy_ring(vars + ("_lam",))

    def lift(p):
        p = [dom.convert(c) for c in p]
        den = MPoly.const(vars, 1)
        for c in p:
            if not c.den.is_constant():
                den = den * c.den.exact_div(poly_cofactors(den, c.den)[0])
        out = R.zero
        for k, c in enumerate(p):
            if not c:
                continue
            num = c.num * den.exact_div(c.den)
            out += R.from_dict({e + (k,): SQQ(v.numerator, v.denominator) for e, v in num.terms.items()})
        return out

    g = lift(a).gcd(lift(b))
    deg = g.degree(len(vars))
    parts = [dict() for _ in range(deg + 1)]
    for e, c in g.items():
        parts[e[-1]][tuple(e[:-1])] = Fraction(int(c.numerator), int(c.denominator))
    out = [dom.convert(MPoly(vars, t)) for t in parts]
    return monic(dom, out)


def gcd(dom, a, b) -> list:
    a, b = trim(a), trim(b)
    if not a:
        return monic(dom, b)
    if not b:
        return monic(dom, a)
    if len(a) == 1 or len(b) == 1:
        return [dom.one]
    if dom == QQ:
        return _gcd_qq(a, b)
    if isinstance(dom, RatFuncField):
        return _gcd_ratfunc(dom, a, b)
    return _euclid(dom, a, b)


def lcm(dom, a, b) -> list:
    if not a or not b:
        return []
    g = gcd(dom, a, b)
    return monic(dom, mul(dom, divmod_(dom, a, g)[0], b))


def derivative(dom, a) -> list:
    return trim([a[i] * i for i in range(1, len(a))])


def squarefree(dom, a) -> List[list]:
    """Yun's algorithm: returns [s_1, s_2, ...] with monic(a) = prod s_i^i."""
    a = monic(dom, trim(a))
    if len(a) <= 1:
        return []
    out = []
    d = derivative(dom, a)
    b = gcd(dom, a, d)
    c = divmod_(dom, a, b)[0]
    w = divmod_(dom, d, b)[0]
    y = add(dom, w, [-x for x in derivative(dom, c)])
    while len(c) > 1:
        g = gcd(dom, c, y)
        out.append(g)
        c = divmod_(dom, c, g)[0]
        w = divmod_(dom, y, g)[0]
        y = add(dom, w, [-x for x in derivative(dom, c)])
    while out and len(out[-1]) <= 1:
        out.pop()
    return out


def power_sums(dom, p, count: int) -> list:
    """P_1..P_count of the roots of monic p (Newton identities)."""
    p = monic(dom, p)
    n = len(p) - 1
    # e_k = (-1)^k p_{n-k}
    e = [dom.one] + [(p[n - k] if k % 2 == 0 else -p[n - k]) for k in range(1, n + 1)]
    P = [None] * (count + 1)
    for k in range(1, count + 1):
        s = dom.zero
        for i in range(1, min(k - 1, n) + 1):
            t = e[i] * P[k - i]
            s = s + t if i % 2 == 1 else s - t
        if k <= n:
            t = e[k] * k
            s = s + t if k % 2 == 1 else s - t
        P[k] = s
    return P[1:]


def from_power_sums(dom, P: Sequence, n: int) -> list:
    """Monic polynomial of degree n whose roots have power sums P_1..P_n."""
    e = [dom.one]
    for k in range(1, n + 1):
        s = dom.zero
        for i in range(1, k + 1):
            t = e[k - i] * P[i - 1]
            s = s + t if i % 2 == 1 else s - t
        e.append(s / k)
    # p_{n-k} = (-1)^k e_k
    p = [dom.zero] * (n + 1)
    for k in range(n + 1):
        p[n - k] = e[k] if k % 2 == 0 else -e[k]
    return p


class _FastQQ:
    """Stand-in domain running Newton-identity loops on sympy's ground rationals."""

    def __init__(self):
        from sympy.polys.domains import QQ as SQQ

        self.SQQ = SQQ
        self.zero = SQQ(0)
        self.one = SQQ(1)

    def lift(self, p):
        return [self.SQQ(x.numerator, x.denominator) for x in p]

    @staticmethod
    def drop(p):
        return [Fraction(int(x.numerator), int(x.denominator)) for x in p]


_fast_qq = None


def _fast(dom):
    global _fast_qq
    if dom == QQ:
        if _fast_qq is None:
            _fast_qq = _FastQQ()
        return _fast_qq
    return None


def composed_product(dom, p, q) -> list:
    """Monic polynomial with roots alpha*beta over all root pairs."""
    m, n = len(p) - 1, len(q) - 1
    if m <= 0 or n <= 0:
        return [dom.one]
    N = m * n
    f = _fast(dom)
    if f is not None:
        Pp, Pq = power_sums(f, f.lift(p), N), power_sums(f, f.lift(q), N)
        return f.drop(from_power_sums(f, [x * y for x, y in zip(Pp, Pq)], N))
    Pp, Pq = power_sums(dom, p, N), power_sums(dom, q, N)
    return from_power_sums(dom, [x * y for x, y in zip(Pp, Pq)], N)


def root_power(dom, p, t: int) -> list:
    """Monic polynomial whose roots are the t-th powers of the roots of p."""
    n = len(p) - 1
    if n <= 0:
        return [dom.one]
    f = _fast(dom)
    if f is not None:
        P = power_sums(f, f.lift(p), t * n)
        return f.drop(from_power_sums(f, [P[t * k - 1] for k in range(1, n + 1)], n))
    P = power_sums(dom, p, t * n)
    return from_power_sums(dom, [P[t * k - 1] for k in range(1, n + 1)], n)


def lcm_all(dom, polys) -> list:
    out = [dom.one]
    for p in polys:
        out = lcm(dom, out, p)
    return out


def radical(dom, p) -> list:
    """Product of the distinct monic irreducible factors (squarefree part)."""
    out = [dom.one]
    for s in squarefree(dom, p):
        out = mul(dom, out, s)
    return out


# --------------------------------------------------------------------------
# factored annihilators over Q
#
# Closure polynomials are assembled from irreducible factors, kept as a map
# {monic factor (tuple, low degree first): multiplicity}.  This keeps the
# composed products small: the root sets of closure results are highly
# structured and the unfactored composed product is mostly redundant.

def factor_qq(p) -> dict:
    return dict(_factor_qq_cached(tuple(trim(p))))


@lru_cache(maxsize=65536)
def _factor_qq_cached(p: tuple):
    from sympy.polys.domains import QQ as SQQ
    from sympy.polys.factortools import dup_factor_list

    coeffs = [SQQ(x.numerator, x.denominator) for x in reversed(trim(p))]
    _, facs = dup_factor_list(coeffs, SQQ)
    out = {}
    for f, k in facs:
        lc = f[0]
        key = tuple(Fraction(int((c / lc).numerator), int((c / lc).denominator)) for c in reversed(f))
        out[key] = out.get(key, 0) + k
    return tuple(out.items())


def factors_merge_max(*maps) -> dict:
    out = {}
    for m in maps:
        for f, k in m.items():
            if k > out.get(f, 0):
                out[f] = k
    return out


def factors_expand(m: dict) -> list:
    out = [QQ.one]
    for f, k in sorted(m.items(), key=lambda t: (len(t[0]), t[0])):
        out = mul(QQ, out, power(QQ, list(f), k))
    return out


def factored_product_annihilator(fa: dict, fb: dict) -> dict:
    """Factor map of an annihilator of termwise products."""
    out: dict = {}
    for f, i in fa.items():
        for g, j in fb.items():
            for h in _composed_factors(f, g):
                if i + j - 1 > out.get(h, 0):
                    out[h] = i + j - 1
    return out


@lru_cache(maxsize=65536)
def _composed_factors(f: tuple, g: tuple) -> tuple:
    if len(f) == 2 and len(g) == 2:
        # linear factors: the single root is the product of the roots
        return (((-f[0]) * (-g[0]) * -1, Fraction(1)),)
    return tuple(factor_qq(composed_product(QQ, list(f), list(g))))


def factored_root_power(fa: dict, t: int) -> dict:
    out: dict = {}
    for f, i in fa.items():
        for h in factor_qq(root_power(QQ, list(f), t)):
            if i > out.get(h, 0):
                out[h] = i
    return out
