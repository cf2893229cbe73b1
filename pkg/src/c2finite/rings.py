"""Exact coefficient domains: rationals, sparse multivariate polynomials and
rational functions over Q.

Rationals are plain :class:`fractions.Fraction` values.  :class:`MPoly` keeps a
sparse ``{exponent tuple: Fraction}`` map; :class:`RatFunc` is a reduced
quotient of two :class:`MPoly` with a monic denominator.  Multivariate gcds
are delegated to sympy's sparse polynomial rings.

Domain descriptors (:data:`QQ`, :class:`PolyRing`, :class:`RatFuncField`)
carry the zero/one elements, conversion, text parsing and formatting so that
generic code (matrices, sequences) never has to inspect element types.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exp = Tuple[int, ...]


class VariableMismatch(ValueError):
    pass


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not a rational number: {c!r}")


def _deglex_key(e: Exp):
    return (sum(e), e)


class MPoly:
    """Sparse polynomial over Q in a fixed, ordered list of variables.

    >>> x = MPoly.var(("x",), "x")
    >>> str((1 + x) * (1 + x))
    '1 + 2*x + x^2'
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exp, object] = ()):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: Dict[Exp, Fraction] = {}
        for e, c in dict(terms).items():
            c = _frac(c)
            if c:
                e = tuple(e)
                if len(e) != n:
                    raise VariableMismatch(f"exponent {e} does not match variables {self.vars}")
                clean[e] = c
        self.terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, vars: Sequence[str], c) -> "MPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "MPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def _raw(cls, vars, terms) -> "MPoly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def leading(self) -> Tuple[Exp, Fraction]:
        e = max(self.terms, key=_deglex_key)
        return e, self.terms[e]

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Rational)):
            return MPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = _frac(other)
            if not c:
                return MPoly._raw(self.vars, {})
            return MPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        t: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return MPoly._raw(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, other: "MPoly"):
        """Multivariate division by the deglex leading term of ``other``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        le, lc = other.leading()
        q: Dict[Exp, Fraction] = {}
        rem: Dict[Exp, Fraction] = {}
        p = dict(self.terms)
        while p:
            e = max(p, key=_deglex_key)
            c = p[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                q[qe] = q.get(qe, 0) + qc
                for oe, oc in other.terms.items():
                    te = tuple(a + b for a, b in zip(qe, oe))
                    s = p.get(te, 0) - qc * oc
                    if s:
                        p[te] = s
                    else:
                        p.pop(te, None)
            else:
                rem[e] = c
                del p[e]
        return MPoly(self.vars, q), MPoly(self.vars, rem)

    def exact_div(self, other) -> "MPoly":
        if isinstance(other, (int, Rational)):
            c = _frac(other)
            if not c:
                raise ZeroDivisionError("polynomial division by zero")
            return MPoly._raw(self.vars, {e: v / c for e, v in self.terms.items()})
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"inexact polynomial division: ({self}) / ({other})")
        return q

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.exact_div(other)
        return RatFunc(self, other)

    # evaluation / substitution -----------------------------------------
    def _point(self, point) -> Tuple[Fraction, ...]:
        if isinstance(point, Mapping):
            missing = [v for v in self.vars if v not in point]
            if missing:
                raise VariableMismatch(f"no value for {missing}")
            return tuple(_frac(point[v]) for v in self.vars)
        vals = tuple(_frac(v) for v in point)
        if len(vals) != len(self.vars):
            raise VariableMismatch(f"expected {len(self.vars)} values, got {len(vals)}")
        return vals

    def eval(self, point) -> Fraction:
        vals = self._point(point)
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for v, k in zip(vals, e):
                if k:
                    m *= v ** k
            total += m
        return total

    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute polynomials (or numbers) for some variables."""
        result = MPoly._raw(self.vars, {})
        idx = [(i, mapping[v]) for i, v in enumerate(self.vars) if v in mapping]
        powcache: Dict[Tuple[int, int], MPoly] = {}
        for e, c in self.terms.items():
            keep = list(e)
            term = MPoly._raw(self.vars, {})
            factor: Union[MPoly, Fraction] = c
            for i, val in idx:
                k = e[i]
                keep[i] = 0
                if k:
                    key = (i, k)
                    if key not in powcache:
                        base = val if isinstance(val, MPoly) else MPoly.const(self.vars, val)
                        powcache[key] = base ** k
                    factor = powcache[key] * factor
            term = MPoly._raw(self.vars, {tuple(keep): Fraction(1)}) * factor
            result = result + term
        return result

    # comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        # ascending degree; within a degree, earlier variables first
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MPoly({str(self)!r}, vars={self.vars})"


# --------------------------------------------------------------------------
# gcd support (sympy sparse rings)

@lru_cache(maxsize=None)
def _sympy_ring(vars: Tuple[str, ...]):
    from sympy.polys.domains import QQ as SQQ
    from sympy.polys.rings import ring

    R = ring(",".join(vars), SQQ)[0]
    return R, SQQ


def _to_sympy(p: MPoly):
    R, SQQ = _sympy_ring(p.vars)
    return R.from_dict({e: SQQ(c.numerator, c.denominator) for e, c in p.terms.items()})


def _from_sympy(vars, q) -> MPoly:
    return MPoly._raw(
        vars, {tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in q.items()}
    )


def _monomial_gcd(a: MPoly, b: MPoly) -> MPoly:
    """gcd when one side is a monomial: a power product of variables."""
    mono, other = (a, b) if a.is_monomial() else (b, a)
    e = list(next(iter(mono.terms)))
    for oe in other.terms:
        e = [min(x, y) for x, y in zip(e, oe)]
    return MPoly._raw(a.vars, {tuple(e): Fraction(1)})


def poly_cofactors(a: MPoly, b: MPoly):
    """Return ``(g, a/g, b/g)`` with ``g`` a gcd of ``a`` and ``b``."""
    if a.is_zero() or b.is_zero() or a.is_monomial() or b.is_monomial():
        if a.is_zero():
            return b, MPoly._raw(a.vars, {}), MPoly.const(a.vars, 1)
        if b.is_zero():
            return a, MPoly.const(a.vars, 1), MPoly._raw(a.vars, {})
        g = _monomial_gcd(a, b)
        if not any(next(iter(g.terms))):
            return g, a, b
        return g, a.exact_div(g), b.exact_div(g)
    h, ca, cb = _to_sympy(a).cofactors(_to_sympy(b))
    return _from_sympy(a.vars, h), _from_sympy(a.vars, ca), _from_sympy(a.vars, cb)


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    return poly_cofactors(a, b)[0]


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials over Q with monic ``den``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1, _reduced: bool = False):
        if not isinstance(num, MPoly):
            if isinstance(den, MPoly):
                num = MPoly.const(den.vars, num)
            else:
                raise TypeError("RatFunc needs at least one MPoly to fix the variables")
        if not isinstance(den, MPoly):
            den = MPoly.const(num.vars, den)
        if num.vars != den.vars:
            raise VariableMismatch(f"{num.vars} vs {den.vars}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _reduce(num: MPoly, den: MPoly):
        if num.is_zero():
            return num, MPoly.const(num.vars, 1)
        if not den.is_constant():
            _, num, den = poly_cofactors(num, den)
        lc = den.leading()[1]
        if lc != 1:
            num = num.exact_div(lc)
            den = den.exact_div(lc)
        return num, den

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def as_poly(self) -> MPoly:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return RatFunc._raw(other, MPoly.const(self.vars, 1))
        if isinstance(other, (int, Rational)):
            return RatFunc._raw(MPoly.const(self.vars, other), MPoly.const(self.vars, 1))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        one_a = self.den.is_constant()
        one_b = o.den.is_constant()
        if one_a and one_b:
            return RatFunc._raw(self.num + o.num, self.den)
        if one_b:
            return RatFunc._raw(self.num + o.num * self.den, self.den)
        if one_a:
            return RatFunc._raw(self.num * o.den + o.num, o.den)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return RatFunc._raw(MPoly._raw(self.vars, {}), MPoly.const(self.vars, 1))
            return RatFunc._raw(self.num * other, self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.num.is_constant():
            if self.den.is_constant():
                return RatFunc._raw(o.num * self.num.constant_value(), o.den) if self.num else self * 0
        if o.num.is_constant() and o.den.is_constant():
            return o * self
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc._raw(self.num * o.num, self.den)
        _, a, d = poly_cofactors(self.num, o.den)
        _, c, b = poly_cofactors(o.num, self.den)
        num, den = a * c, b * d
        lc = den.leading()[1]
        if lc != 1:
            num, den = num.exact_div(lc), den.exact_div(lc)
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        lc = den.leading()[1]
        return RatFunc._raw(num.exact_div(lc), den.exact_div(lc))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def eval(self, point) -> Fraction:
        d = self.den.eval(point)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at {point}")
        return self.num.eval(point) / d

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.vars == other.vars and self.num == other.num and self.den == other.den
        if isinstance(other, MPoly):
            return self.den.is_constant() and self.num == other
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.num.constant_value() == other if self.num else other == 0
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.den.is_constant():
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r}, vars={self.vars})"


# --------------------------------------------------------------------------
# domain descriptors

class RationalField:
    name = "Q"
    is_field = True
    vars: Tuple[str, ...] = ()

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def convert(self, x) -> Fraction:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, RatFunc) and x.is_constant():
            return x.num.constant_value()
        if isinstance(x, MPoly) and x.is_constant():
            return x.constant_value()
        return _frac(x)

    def exact_div(self, a, b):
        return a / b

    def parse(self, text: str) -> Fraction:
        return self.convert(parse_expr(text, ()))

    def format(self, x) -> str:
        return str(Fraction(x))

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PolyRing:
    """Q[vars]; a ring without general division (used for determinants)."""

    is_field = False

    def __init__(self, vars: Iterable[str]):
        self.vars = tuple(vars)

    @property
    def zero(self):
        return MPoly._raw(self.vars, {})

    @property
    def one(self):
        return MPoly.const(self.vars, 1)

    def gen(self, name):
        return MPoly.var(self.vars, name)

    def convert(self, x) -> MPoly:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, MPoly):
            if x.vars != self.vars:
                raise VariableMismatch(f"{x.vars} vs {self.vars}")
            return x
        if isinstance(x, RatFunc):
            return x.as_poly()
        return MPoly.const(self.vars, x)

    def exact_div(self, a, b):
        return a.exact_div(b)

    def parse(self, text: str) -> MPoly:
        v = parse_expr(text, self.vars)
        return self.convert(v)

    def format(self, x) -> str:
        return str(x)

    def to_json(self):
        return {"poly": list(self.vars)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.vars == self.vars

    def __hash__(self):
        return hash(("poly", self.vars))

    def __repr__(self):
        return f"PolyRing({list(self.vars)})"


class RatFuncField:
    """Q(vars), the fraction field used for symbolic recurrence coefficients."""

    is_field = True

    def __init__(self, vars: Iterable[str]):
        self.vars = tuple(vars)
        if not self.vars:
            raise ValueError("RatFuncField needs at least one variable; use QQ")
        self._one = RatFunc._raw(MPoly.const(self.vars, 1), MPoly.const(self.vars, 1))
        self._zero = RatFunc._raw(MPoly._raw(self.vars, {}), MPoly.const(self.vars, 1))

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def gen(self, name) -> RatFunc:
        return RatFunc._raw(MPoly.var(self.vars, name), MPoly.const(self.vars, 1))

    def convert(self, x) -> RatFunc:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, RatFunc):
            if x.vars != self.vars:
                raise VariableMismatch(f"{x.vars} vs {self.vars}")
            return x
        if isinstance(x, MPoly):
            if x.vars != self.vars:
                raise VariableMismatch(f"{x.vars} vs {self.vars}")
            return RatFunc._raw(x, MPoly.const(self.vars, 1))
        return RatFunc._raw(MPoly.const(self.vars, x), MPoly.const(self.vars, 1))

    def exact_div(self, a, b):
        return a / b

    def parse(self, text: str) -> RatFunc:
        return self.convert(parse_expr(text, self.vars))

    def format(self, x) -> str:
        return str(self.convert(x))

    def to_json(self):
        return {"ratfunc": list(self.vars)}

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and other.vars == self.vars

    def __hash__(self):
        return hash(("ratfunc", self.vars))

    def __repr__(self):
        return f"RatFuncField({list(self.vars)})"


def domain_from_json(obj):
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and "ratfunc" in obj:
        return RatFuncField(obj["ratfunc"])
    if isinstance(obj, dict) and "poly" in obj:
        return PolyRing(obj["poly"])
    raise ValueError(f"unknown domain {obj!r}")


# --------------------------------------------------------------------------
# text parsing: a small recursive-descent evaluator over +, -, *, /, ^, ()

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_expr(text: str, vars: Sequence[str]):
    """Evaluate an arithmetic expression exactly.

    Returns a Fraction when ``vars`` is empty, otherwise a RatFunc over
    ``vars`` (callers convert to their domain).
    """
    vars = tuple(vars)
    toks = _tokenize(text)
    if not toks:
        raise ValueError("empty expression")
    pos = 0

    def lift(c):
        if not vars:
            return Fraction(c)
        return RatFunc._raw(MPoly.const(vars, c), MPoly.const(vars, 1))

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return lift(val)
        if kind == "var":
            take()
            if val not in vars:
                raise VariableMismatch(f"unknown variable {val!r}; expected one of {vars}")
            return RatFunc._raw(MPoly.var(vars, val), MPoly.const(vars, 1))
        if (kind, val) == ("op", "("):
            take()
            v = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return v
        if (kind, val) == ("op", "-"):
            take()
            return -power()
        if (kind, val) == ("op", "+"):
            take()
            return power()
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            neg = False
            if (kind, val) == ("op", "-"):
                neg = True
                kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be an integer literal")
            base = base ** (-val if neg else val)
        return base

    def term():
        v = power()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = power()
            if op == "*":
                v = v * rhs
            else:
                if not rhs:
                    raise ZeroDivisionError(f"division by zero in {text!r}")
                v = v / rhs
        return v

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            v = v + rhs if op == "+" else v - rhs
        return v

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result
