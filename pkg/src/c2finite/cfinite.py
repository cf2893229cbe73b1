"""C-finite sequences with exact closure operations.

A :class:`CFiniteSeq` stores a monic recurrence

    a_{n+s} = c_0 a_n + ... + c_{s-1} a_{n+s-1}        (n >= valid_from)

together with the first ``valid_from + s`` terms, which fix the sequence.
Terms before ``valid_from`` are free: this is how eventually-recurrent
sequences (zero prefixes, indicator stitching) stay inside the class.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import upoly
from .errors import CertificationError, DomainMismatch, PatternNotFound
from .linalg import RingMatrix, char_poly, companion
from .rings import QQ, domain_from_json


class CFiniteSeq:
    __slots__ = ("domain", "coeffs", "initials", "valid_from", "_cache", "_lock", "_factors")

    def __init__(self, domain, coeffs: Sequence, initials: Sequence, valid_from: int = 0):
        if valid_from < 0:
            raise ValueError("valid_from must be non-negative")
        self.domain = domain
        self.coeffs = tuple(domain.convert(c) for c in coeffs)
        self.initials = tuple(domain.convert(x) for x in initials)
        self.valid_from = int(valid_from)
        if len(self.initials) != self.valid_from + len(self.coeffs):
            raise ValueError(
                f"need {self.valid_from + len(self.coeffs)} initial terms "
                f"(valid_from + order), got {len(self.initials)}"
            )
        self._cache = list(self.initials)
        self._lock = threading.Lock()
        self._factors = None

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def factors(self) -> dict:
        """Irreducible factorisation of the characteristic polynomial (Q only)."""
        if self._factors is None:
            self._factors = upoly.factor_qq(self.charpoly())
        return self._factors

    def charpoly(self) -> list:
        """lambda^s - sum c_i lambda^i, lowest degree first."""
        return [-c for c in self.coeffs] + [self.domain.one]

    def term(self, n: int):
        if n < 0:
            raise IndexError("negative index")
        cache = self._cache
        if n < len(cache):
            return cache[n]
        with self._lock:
            s = self.order
            z = self.domain.zero
            if s == 0:
                cache.extend([z] * (n + 1 - len(cache)))
                return cache[n]
            cs = self.coeffs
            while len(cache) <= n:
                base = len(cache) - s
                acc = z
                for i, c in enumerate(cs):
                    if c:
                        x = cache[base + i]
                        if x:
                            acc = acc + c * x
                cache.append(acc)
            return cache[n]

    def terms(self, count: int, start: int = 0) -> list:
        if count <= 0:
            return []
        self.term(start + count - 1)
        return list(self._cache[start:start + count])

    __getitem__ = term

    def same_terms(self, other: "CFiniteSeq", count: int) -> bool:
        return self.terms(count) == other.terms(count)

    def to_json(self) -> dict:
        f = self.domain.format
        return {
            "domain": self.domain.to_json(),
            "order": self.order,
            "coeffs": [f(c) for c in self.coeffs],
            "initials": [f(x) for x in self.initials],
            "valid_from": self.valid_from,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CFiniteSeq":
        dom = domain_from_json(obj.get("domain", "Q"))
        coeffs = [dom.convert(x) for x in obj["coeffs"]]
        if "order" in obj and obj["order"] != len(coeffs):
            raise ValueError("order does not match the number of coefficients")
        return cls(dom, coeffs, [dom.convert(x) for x in obj["initials"]], obj.get("valid_from", 0))

    def __repr__(self):
        f = self.domain.format
        return (f"CFiniteSeq(order={self.order}, coeffs=[{', '.join(f(c) for c in self.coeffs)}], "
                f"valid_from={self.valid_from}, head=[{', '.join(f(x) for x in self.terms(6))}])")


# --------------------------------------------------------------------------
# constructors

def cf_const(domain, c) -> CFiniteSeq:
    c = domain.convert(c)
    if not c:
        return CFiniteSeq(domain, [], [])
    return CFiniteSeq(domain, [domain.one], [c])


def cf_zero(domain) -> CFiniteSeq:
    return CFiniteSeq(domain, [], [])


def cf_geometric(domain, ratio, start=1) -> CFiniteSeq:
    return CFiniteSeq(domain, [ratio], [start])


def cf_fibonacci(domain=QQ, initials=(0, 1)) -> CFiniteSeq:
    return CFiniteSeq(domain, [1, 1], list(initials))


def cf_indicator(p: int, i: int, domain=QQ) -> CFiniteSeq:
    """The sequence 1 if n = i (mod p) else 0."""
    if p < 1:
        raise ValueError("period must be at least 1")
    if not 0 <= i < p:
        raise ValueError(f"residue {i} out of range for period {p}")
    coeffs = [domain.one] + [domain.zero] * (p - 1)
    inits = [domain.one if j == i else domain.zero for j in range(p)]
    return CFiniteSeq(domain, coeffs, inits)


def cf_from_matrix_entry(M: RingMatrix, i: int, j: int) -> CFiniteSeq:
    """n -> (M^n)[i, j], with recurrence from the characteristic polynomial."""
    chi = char_poly(M)
    r = M.rows
    powers = [RingMatrix.identity(M.domain, r)]
    for _ in range(r - 1):
        powers.append(powers[-1] @ M)
    return CFiniteSeq(M.domain, [-e for e in chi[:-1]], [P[i, j] for P in powers])


def _check_domain(a: CFiniteSeq, b: CFiniteSeq):
    if a.domain != b.domain:
        raise DomainMismatch(f"{a.domain!r} vs {b.domain!r}")


def _from_charpoly(domain, p: Sequence, source, valid_from: int) -> CFiniteSeq:
    """Build a sequence with monic char poly p whose terms follow ``source``."""
    s = len(p) - 1
    coeffs = [-x for x in p[:-1]]
    if s == 0:
        # only the prefix survives
        vf = valid_from
        inits = [source(n) for n in range(vf)]
        while inits and not inits[-1]:
            inits.pop()
        return CFiniteSeq(domain, [], inits, len(inits))
    return CFiniteSeq(domain, coeffs, [source(n) for n in range(valid_from + s)], valid_from)


def _from_factors(fm: dict, source, valid_from: int) -> CFiniteSeq:
    out = _from_charpoly(QQ, upoly.factors_expand(fm), source, valid_from)
    if out.order:
        out._factors = dict(fm)
    return out


# --------------------------------------------------------------------------
# closure operations

def cf_neg(a: CFiniteSeq) -> CFiniteSeq:
    return CFiniteSeq(a.domain, a.coeffs, [-x for x in a.initials], a.valid_from)


def cf_scale(a: CFiniteSeq, c) -> CFiniteSeq:
    c = a.domain.convert(c)
    if not c:
        return cf_zero(a.domain)
    return CFiniteSeq(a.domain, a.coeffs, [x * c for x in a.initials], a.valid_from)


def cf_add(a: CFiniteSeq, b: CFiniteSeq) -> CFiniteSeq:
    _check_domain(a, b)
    dom = a.domain
    vf = max(a.valid_from, b.valid_from)
    if dom == QQ:
        fm = upoly.factors_merge_max(a.factors(), b.factors())
        return _from_factors(fm, lambda n: a.term(n) + b.term(n), vf)
    p = upoly.lcm(dom, a.charpoly(), b.charpoly())
    return _from_charpoly(dom, p, lambda n: a.term(n) + b.term(n), vf)


def cf_sub(a: CFiniteSeq, b: CFiniteSeq) -> CFiniteSeq:
    return cf_add(a, cf_neg(b))


def cf_mul(a: CFiniteSeq, b: CFiniteSeq) -> CFiniteSeq:
    """Termwise product.

    The annihilator is built root-class by root-class: a root of multiplicity
    i times a root of multiplicity j needs multiplicity i + j - 1.  This is a
    divisor of the characteristic polynomial of the Kronecker product of the
    companion matrices and usually much smaller.
    """
    _check_domain(a, b)
    dom = a.domain
    vf = max(a.valid_from, b.valid_from)
    if a.order == 0 or b.order == 0:
        return _from_charpoly(dom, [dom.one], lambda n: a.term(n) * b.term(n), vf)
    if dom == QQ:
        fm = upoly.factored_product_annihilator(a.factors(), b.factors())
        return _from_factors(fm, lambda n: a.term(n) * b.term(n), vf)
    sa = upoly.squarefree(dom, a.charpoly())
    sb = upoly.squarefree(dom, b.charpoly())
    p = [dom.one]
    for i, f in enumerate(sa, 1):
        if len(f) <= 1:
            continue
        for j, g in enumerate(sb, 1):
            if len(g) <= 1:
                continue
            cp = upoly.radical(dom, upoly.composed_product(dom, f, g))
            p = upoly.lcm(dom, p, upoly.power(dom, cp, i + j - 1))
    return _from_charpoly(dom, p, lambda n: a.term(n) * b.term(n), vf)


def kronecker_charpoly(a: CFiniteSeq, b: CFiniteSeq) -> list:
    """Characteristic polynomial of companion(a) (x) companion(b)."""
    dom = a.domain
    K = companion(dom, a.coeffs).kron(companion(dom, b.coeffs))
    return char_poly(K)


def cf_subseq(a: CFiniteSeq, t: int, r: int = 0) -> CFiniteSeq:
    """n -> a_{t n + r}."""
    if t < 1:
        raise ValueError("stride must be at least 1")
    if r < 0:
        raise ValueError("offset must be non-negative")
    dom = a.domain
    vf = max(0, -((r - a.valid_from) // t))
    if t == 1:
        p = a.charpoly()
    elif dom == QQ:
        fm = upoly.factored_root_power(a.factors(), t)
        return _from_factors(fm, lambda n: a.term(t * n + r), vf)
    else:
        p = [dom.one]
        for i, f in enumerate(upoly.squarefree(dom, a.charpoly()), 1):
            if len(f) > 1:
                g = upoly.radical(dom, upoly.root_power(dom, f, t))
                p = upoly.lcm(dom, p, upoly.power(dom, g, i))
    return _from_charpoly(dom, p, lambda n: a.term(t * n + r), vf)


def cf_shift(a: CFiniteSeq, k: int) -> CFiniteSeq:
    """n -> a_{n+k}.  Negative k extends backwards (needs c_0 != 0)."""
    dom = a.domain
    if k >= 0:
        vf = max(0, a.valid_from - k)
        return CFiniteSeq(dom, a.coeffs, [a.term(n + k) for n in range(vf + a.order)], vf)
    if a.valid_from != 0:
        raise ValueError("backward shift needs a recurrence valid from index 0")
    if a.order == 0:
        return a
    c0 = a.coeffs[0]
    if not c0:
        raise ValueError("backward shift needs a nonzero constant coefficient")
    window = list(a.initials)
    for _ in range(-k):
        # a_{n+s} = c_0 a_n + ...  =>  a_n = (a_{n+s} - sum_{i>=1} c_i a_{n+i}) / c_0
        acc = window[-1]
        for i in range(1, a.order):
            acc = acc - a.coeffs[i] * window[i - 1]
        window = [acc / c0] + window[:-1]
    return CFiniteSeq(dom, a.coeffs, window)


def cf_delay(a: CFiniteSeq, k: int) -> CFiniteSeq:
    """n -> a_{n-k} for n >= k, and 0 before."""
    if k < 0:
        raise ValueError("delay must be non-negative")
    dom = a.domain
    return CFiniteSeq(dom, a.coeffs, [dom.zero] * k + list(a.initials), a.valid_from + k)


def cf_is_zero(a: CFiniteSeq) -> bool:
    """Exact: the first valid_from + s terms determine everything."""
    return not any(a.initials)


def cf_equal(a: CFiniteSeq, b: CFiniteSeq) -> bool:
    return cf_is_zero(cf_sub(a, b))


def _berlekamp_massey(dom, seq: Sequence) -> Tuple[list, int]:
    """Shortest LFSR: returns (C, L) with sum_{i=0}^{L} C_i a_{n-i} = 0 for n >= L."""
    zero, one = dom.zero, dom.one
    C, B = [one], [one]
    L, m, b = 0, 1, one
    for n, x in enumerate(seq):
        d = x
        for i in range(1, L + 1):
            if i < len(C) and C[i]:
                d = d + C[i] * seq[n - i]
        if not d:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C = C + [zero] * (need - len(C))
        for i, y in enumerate(B):
            if y:
                C[i + m] = C[i + m] - coef * y
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    return upoly.trim(C), L


def _reduced_generating_function(a: CFiniteSeq) -> CFiniteSeq:
    """Minimal recurrence from sum a_n x^n = N(x)/Q(x) in lowest terms."""
    dom = a.domain
    s, v = a.order, a.valid_from
    # Q(x) = x^s p(1/x), so Q_0 = 1 and Q_j = -c_{s-j}
    Q = [dom.one] + [-a.coeffs[s - j] for j in range(1, s + 1)]
    terms = a.terms(v + s)
    N = []
    for k in range(v + s):
        acc = dom.zero
        for j in range(min(k, s) + 1):
            if Q[j] and terms[k - j]:
                acc = acc + Q[j] * terms[k - j]
        N.append(acc)
    N = upoly.trim(N)
    if not N:
        return cf_zero(dom)
    Q = upoly.trim(Q)
    g = upoly.gcd(dom, N, Q)
    if len(g) > 1:
        Q = upoly.divmod_(dom, Q, g)[0]
        N = upoly.divmod_(dom, N, g)[0]
    inv = dom.one / Q[0]
    Q = [x * inv for x in Q]
    N = [x * inv for x in N]
    d = len(Q) - 1
    vf = max(0, len(N) - d)
    coeffs = [-Q[d - i] for i in range(d)]
    return CFiniteSeq(dom, coeffs, a.terms(vf + d), vf)


def cf_minimize(a: CFiniteSeq, window: Optional[int] = None, method: str = "exact") -> CFiniteSeq:
    """Shortest recurrence that certifiably reproduces ``a``.

    ``method="exact"`` reduces the generating function to lowest terms (the
    denominator is the minimal annihilator of the tail).  ``method="hankel"``
    runs Berlekamp-Massey on ``window`` terms.  Either way the candidate is
    accepted only if its difference with ``a`` is exactly zero.
    """
    dom = a.domain
    if not dom.is_field:
        return a
    total = a.valid_from + a.order
    if window is None:
        window = 2 * total + 2
    if window < 2 * a.order + 2:
        raise ValueError("window must be at least 2*order + 2")
    if cf_is_zero(a):
        return cf_zero(dom)
    if method == "exact":
        cand = _reduced_generating_function(a)
        if cand.order > a.order or (cand.order == a.order and cand.valid_from >= a.valid_from):
            return a
    elif method == "hankel":
        # the sequence satisfies an order-`total` recurrence from 0, so 2*total terms pin it down
        terms = a.terms(max(window, 2 * total))
        C, L = _berlekamp_massey(dom, terms)
        d = len(C) - 1
        if d >= a.order:
            return a
        vf = L - d  # a_{m+d} = -sum_{i=1}^{d} C_i a_{m+d-i} for m >= L - d
        cand = CFiniteSeq(dom, [-C[d - j] for j in range(d)], terms[:vf + d], vf)
    else:
        raise ValueError("method must be 'exact' or 'hankel'")
    if not cf_equal(a, cand):
        raise CertificationError("minimized recurrence failed exact certification")
    return cand


# --------------------------------------------------------------------------
# empirical zero patterns

@dataclass(frozen=True)
class ZeroPattern:
    exceptional: frozenset
    n1: int
    period: int
    residues: frozenset
    horizon: int
    proof_status: str = "empirical"

    def predicts_zero(self, n: int) -> bool:
        if n <= self.n1:
            return n in self.exceptional
        return (n % self.period) in self.residues

    def to_json(self) -> dict:
        return {
            "exceptional": sorted(self.exceptional),
            "n1": self.n1,
            "period": self.period,
            "residues": sorted(self.residues),
            "horizon": self.horizon,
            "proof_status": self.proof_status,
        }


def zero_pattern_of(zero_set: set, horizon: int, n1_max: int, p_max: int) -> ZeroPattern:
    """Smallest (n1, p), n1 first, reproducing ``zero_set`` on [0, horizon]."""
    for n1 in range(n1_max + 1):
        for p in range(1, p_max + 1):
            residues = set()
            ok = True
            for r in range(p):
                idx = [n for n in range(n1 + 1, horizon + 1) if n % p == r]
                hits = [n in zero_set for n in idx]
                if all(hits) and idx:
                    residues.add(r)
                elif any(hits):
                    ok = False
                    break
            if ok:
                return ZeroPattern(frozenset(n for n in zero_set if n <= n1), n1, p,
                                   frozenset(residues), horizon)
    raise PatternNotFound(f"no eventually periodic pattern with n1 <= {n1_max}, p <= {p_max}")


def cf_zero_pattern(a: CFiniteSeq, n1_max: int = 8, p_max: int = 6, horizon: int = 64) -> ZeroPattern:
    if horizon < n1_max + 2 * p_max:
        raise ValueError("horizon must be at least n1_max + 2*p_max")
    zs = {n for n, x in enumerate(a.terms(horizon + 1)) if not x}
    return zero_pattern_of(zs, horizon, n1_max, p_max)


# --------------------------------------------------------------------------
# diagnostics

def growth_exponent(values: Sequence, power=lambda n: n) -> float:
    """Smallest alpha >= 1 with |v_n| <= alpha^{power(n)} on the given range."""
    alpha = 1.0
    for n, v in enumerate(values):
        e = power(n)
        if e <= 0:
            continue
        x = abs(Fraction(v))
        if x > 1:
            lx = math.log(x.numerator) - math.log(x.denominator)
            alpha = max(alpha, math.exp(lx / e))
    return alpha


__all__ = [
    "CFiniteSeq", "ZeroPattern", "cf_const", "cf_zero", "cf_geometric", "cf_fibonacci",
    "cf_indicator", "cf_from_matrix_entry", "cf_neg", "cf_scale", "cf_add", "cf_sub", "cf_mul",
    "kronecker_charpoly", "cf_subseq", "cf_shift", "cf_delay", "cf_is_zero", "cf_equal",
    "cf_minimize", "cf_zero_pattern", "zero_pattern_of", "growth_exponent",
]
