"""Exact dense linear algebra over the domains of :mod:`c2finite.rings`."""
from __future__ import annotations

from itertools import permutations
from typing import Callable, List, Optional, Sequence

from .rings import QQ, MPoly, PolyRing, RatFunc, RatFuncField, poly_cofactors


class RingMatrix:
    """Immutable dense matrix whose entries share one domain."""

    __slots__ = ("domain", "rows", "cols", "entries")

    def __init__(self, domain, rows: Sequence[Sequence] | None = None, *, shape=None, flat=None):
        self.domain = domain
        if rows is not None:
            rows = [list(r) for r in rows]
            self.rows = len(rows)
            self.cols = len(rows[0]) if rows else 0
            if any(len(r) != self.cols for r in rows):
                raise ValueError("ragged matrix rows")
            self.entries = tuple(domain.convert(x) for r in rows for x in r)
        else:
            self.rows, self.cols = shape
            flat = tuple(flat)
            if len(flat) != self.rows * self.cols:
                raise ValueError("entry count does not match shape")
            self.entries = flat

    @classmethod
    def identity(cls, domain, n: int) -> "RingMatrix":
        z, o = domain.zero, domain.one
        return cls(domain, shape=(n, n), flat=[o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, domain, r: int, c: int) -> "RingMatrix":
        return cls(domain, shape=(r, c), flat=[domain.zero] * (r * c))

    @classmethod
    def from_columns(cls, domain, cols: Sequence[Sequence]) -> "RingMatrix":
        n = len(cols[0]) if cols else 0
        return cls(domain, shape=(n, len(cols)), flat=[cols[j][i] for i in range(n) for j in range(len(cols))])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> List[list]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def map(self, fn: Callable, domain=None) -> "RingMatrix":
        return RingMatrix(domain or self.domain, shape=(self.rows, self.cols), flat=[fn(x) for x in self.entries])

    def transpose(self) -> "RingMatrix":
        # all supported domains have trivial conjugation, so M* is the plain transpose
        return RingMatrix(self.domain, shape=(self.cols, self.rows),
                          flat=[self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)])

    T = property(transpose)

    def vec(self) -> list:
        """Row-major flattening."""
        return list(self.entries)

    def _check(self, other):
        if not isinstance(other, RingMatrix):
            raise TypeError("expected a RingMatrix")
        if other.domain != self.domain:
            raise ValueError(f"domain mismatch: {self.domain} vs {other.domain}")

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RingMatrix(self.domain, shape=(self.rows, self.cols),
                          flat=[a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RingMatrix(self.domain, shape=(self.rows, self.cols),
                          flat=[a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "RingMatrix":
        c = self.domain.convert(c)
        return self.map(lambda x: x * c)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        z = self.domain.zero
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return RingMatrix(self.domain, shape=(self.rows, other.cols), flat=out)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        z = self.domain.zero
        out = []
        for i in range(self.rows):
            acc = z
            for a, b in zip(self.row(i), v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __pow__(self, k: int) -> "RingMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = RingMatrix.identity(self.domain, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def kron(self, other) -> "RingMatrix":
        self._check(other)
        r, c = self.rows * other.rows, self.cols * other.cols
        flat = []
        for i1 in range(self.rows):
            for i2 in range(other.rows):
                for j1 in range(self.cols):
                    a = self[i1, j1]
                    for j2 in range(other.cols):
                        flat.append(a * other[i2, j2])
        return RingMatrix(self.domain, shape=(r, c), flat=flat)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        return (isinstance(other, RingMatrix) and self.domain == other.domain
                and (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(self.domain.format(x) for x in self.row(i)) for i in range(self.rows))
        return f"RingMatrix[{body}]"


def companion(domain, coeffs: Sequence) -> RingMatrix:
    """Companion of a_{n+s} = sum c_i a_{n+i}, acting on (a_{n+s-1}, ..., a_n)."""
    s = len(coeffs)
    z, o = domain.zero, domain.one
    rows = [[domain.convert(coeffs[s - 1 - j]) for j in range(s)]]
    for i in range(1, s):
        rows.append([o if j == i - 1 else z for j in range(s)])
    return RingMatrix(domain, rows) if s else RingMatrix(domain, shape=(0, 0), flat=[])


# --------------------------------------------------------------------------
# determinants

def _det_cofactor(m: List[list], zero):
    n = len(m)
    if n == 0:
        return None
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = zero
    for j in range(n):
        a = m[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in m[1:]]
        t = a * _det_cofactor(minor, zero)
        total = total + t if j % 2 == 0 else total - t
    return total


def _bareiss(m: List[list], one, exact_div):
    n = len(m)
    m = [list(r) for r in m]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return None
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def _clear_denominators(A: RingMatrix):
    """Scale rows of a RatFunc matrix to polynomials; return rows and the scale."""
    vars = A.domain.vars
    rows = []
    scale = MPoly.const(vars, 1)
    for i in range(A.rows):
        lcm = MPoly.const(vars, 1)
        for x in A.row(i):
            if not x.den.is_constant():
                g, _, b = poly_cofactors(lcm, x.den)
                lcm = lcm * b
        rows.append([(x.num * lcm.exact_div(x.den)) if x else MPoly._raw(vars, {}) for x in A.row(i)])
        scale = scale * lcm
    return rows, scale


def mat_det(A: RingMatrix):
    """Exact determinant (fraction-free elimination; cofactors for n <= 3)."""
    if not A.is_square:
        raise ValueError(f"determinant of non-square {A.rows}x{A.cols} matrix")
    dom = A.domain
    n = A.rows
    if n == 0:
        return dom.one
    if n <= 3:
        return _det_cofactor(A.tolist(), dom.zero)
    if isinstance(dom, RatFuncField):
        rows, scale = _clear_denominators(A)
        d = _bareiss(rows, MPoly.const(dom.vars, 1), lambda a, b: a.exact_div(b))
        if d is None:
            return dom.zero
        return RatFunc(d, scale)
    d = _bareiss(A.tolist(), dom.one, dom.exact_div)
    return dom.zero if d is None else d


def mat_det_bruteforce(A: RingMatrix):
    """Leibniz expansion; an oracle for small sizes."""
    n = A.rows
    total = A.domain.zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        t = A.domain.one
        for i in range(n):
            t = t * A[i, perm[i]]
        total = total - t if inv % 2 else total + t
    return total


def minor_matrix(A: RingMatrix, i: int, j: int) -> RingMatrix:
    rows = [r[:j] + r[j + 1:] for k, r in enumerate(A.tolist()) if k != i]
    n = A.rows - 1
    return RingMatrix(A.domain, shape=(n, n), flat=[x for r in rows for x in r])


def mat_adjugate(A: RingMatrix) -> RingMatrix:
    if not A.is_square:
        raise ValueError("adjugate of a non-square matrix")
    n = A.rows
    dom = A.domain
    if n == 1:
        return RingMatrix(dom, shape=(1, 1), flat=[dom.one])
    flat = []
    for i in range(n):
        for j in range(n):
            # adj[i][j] = (-1)^{i+j} det(minor(A, j, i))
            c = mat_det(minor_matrix(A, j, i))
            flat.append(-c if (i + j) % 2 else c)
    return RingMatrix(dom, shape=(n, n), flat=flat)


def char_poly(A: RingMatrix) -> list:
    """Coefficients e_0..e_r of det(lambda*I - A), monic; Berkowitz, division-free."""
    if not A.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    dom = A.domain
    n = A.rows
    zero, one = dom.zero, dom.one
    # Berkowitz: build the vector for the leading k x k principal block
    poly = [one]  # high-to-low coefficients of char poly of empty matrix
    for k in range(n):
        # partition leading (k+1)x(k+1) block: [[a, R], [C, B]] with a at (k,k)
        a = A[k, k]
        R = [A[k, j] for j in range(k)]
        C = [A[i, k] for i in range(k)]
        B = [[A[i, j] for j in range(k)] for i in range(k)]
        # Toeplitz column: 1, -a, -R C, -R B C, ..., -R B^{k-1} C
        col = [one, -a]
        v = C
        for _ in range(k):
            s = zero
            for x, y in zip(R, v):
                if x and y:
                    s = s + x * y
            col.append(-s)
            v = [sum((B[i][j] * v[j] for j in range(k) if B[i][j] and v[j]), zero) for i in range(k)]
        # multiply the (k+2)x(k+1) lower-triangular Toeplitz matrix by poly
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i + 1, len(poly))):
                t = col[i - j] if i - j < len(col) else zero
                if t and poly[j]:
                    s = s + t * poly[j]
            new.append(s)
        poly = new
    return list(reversed(poly))


def poly_eval_matrix(coeffs: Sequence, A: RingMatrix) -> RingMatrix:
    """Evaluate sum coeffs[t] * A^t by Horner."""
    n = A.rows
    acc = RingMatrix.zeros(A.domain, n, n)
    I = RingMatrix.identity(A.domain, n)
    for c in reversed(coeffs):
        acc = acc @ A + I.scale(c)
    return acc


# --------------------------------------------------------------------------
# field-only routines (Gaussian elimination)

def _require_field(dom):
    if not dom.is_field:
        raise ValueError(f"{dom!r} is not a field")


def row_echelon(A: RingMatrix):
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    _require_field(A.domain)
    m = A.tolist()
    piv = []
    r = 0
    for c in range(A.cols):
        p = next((i for i in range(r, A.rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = A.domain.one / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(A.rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == A.rows:
            break
    return m, piv


def rank(A: RingMatrix) -> int:
    return len(row_echelon(A)[1])


def nullspace(A: RingMatrix) -> List[list]:
    """Basis of {x : A x = 0} over the field."""
    m, piv = row_echelon(A)
    dom = A.domain
    free = [c for c in range(A.cols) if c not in piv]
    basis = []
    for f in free:
        x = [dom.zero] * A.cols
        x[f] = dom.one
        for r, pc in enumerate(piv):
            x[pc] = -m[r][f]
        basis.append(x)
    return basis


def solve(A: RingMatrix, b: Sequence) -> Optional[list]:
    """One solution of A x = b over the field, or None when inconsistent."""
    dom = A.domain
    aug = RingMatrix(dom, shape=(A.rows, A.cols + 1),
                     flat=[x for i in range(A.rows) for x in A.row(i) + [dom.convert(b[i])]])
    m, piv = row_echelon(aug)
    if A.cols in piv:
        return None
    x = [dom.zero] * A.cols
    for r, pc in enumerate(piv):
        x[pc] = m[r][A.cols]
    return x


def in_span(columns: Sequence[Sequence], target: Sequence, domain) -> bool:
    if not columns:
        return not any(target)
    A = RingMatrix.from_columns(domain, columns)
    return solve(A, target) is not None


__all__ = [
    "RingMatrix", "companion", "mat_det", "mat_det_bruteforce", "mat_adjugate", "char_poly",
    "poly_eval_matrix", "row_echelon", "rank", "nullspace", "solve", "in_span", "minor_matrix",
    "QQ", "PolyRing",
]
