"""Matrices whose entries are C-finite sequences."""
from __future__ import annotations

from typing import Dict, FrozenSet, List, Sequence, Tuple

from .cfinite import (CFiniteSeq, cf_add, cf_const, cf_is_zero, cf_minimize, cf_mul, cf_neg,
                      cf_shift, cf_subseq, cf_zero)
from .errors import DomainMismatch, ExtractionError
from .linalg import RingMatrix, char_poly


class CFMatrixSeq:
    __slots__ = ("domain", "rows", "cols", "entries")

    def __init__(self, domain, entries: Sequence[Sequence[CFiniteSeq]]):
        self.domain = domain
        self.entries = tuple(tuple(r) for r in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("ragged entries")
            for e in r:
                if e.domain != domain:
                    raise DomainMismatch(f"entry over {e.domain!r}, matrix over {domain!r}")

    @classmethod
    def constant(cls, M: RingMatrix) -> "CFMatrixSeq":
        return cls(M.domain, [[cf_const(M.domain, M[i, j]) for j in range(M.cols)] for i in range(M.rows)])

    @classmethod
    def identity(cls, domain, n: int) -> "CFMatrixSeq":
        return cls.constant(RingMatrix.identity(domain, n))

    def __getitem__(self, ij) -> CFiniteSeq:
        return self.entries[ij[0]][ij[1]]

    def at(self, n: int) -> RingMatrix:
        return RingMatrix(self.domain, shape=(self.rows, self.cols),
                          flat=[e.term(n) for r in self.entries for e in r])

    def max_order(self) -> int:
        return max((e.order for r in self.entries for e in r), default=0)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[e.to_json() for e in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "CFMatrixSeq":
        ents = [[CFiniteSeq.from_json(e) for e in r] for r in obj["entries"]]
        if len(ents) != obj.get("rows", len(ents)):
            raise ValueError("row count mismatch")
        dom = ents[0][0].domain if ents and ents[0] else None
        return cls(dom, ents)

    def __repr__(self):
        return f"CFMatrixSeq({self.rows}x{self.cols}, max_order={self.max_order()})"


def cfm_at(M: CFMatrixSeq, n: int) -> RingMatrix:
    if n < 0:
        raise IndexError("negative index")
    return M.at(n)


def cfm_map(M: CFMatrixSeq, fn) -> CFMatrixSeq:
    return CFMatrixSeq(M.domain, [[fn(e) for e in r] for r in M.entries])


def cfm_transpose(M: CFMatrixSeq) -> CFMatrixSeq:
    return CFMatrixSeq(M.domain, [[M.entries[i][j] for i in range(M.rows)] for j in range(M.cols)])


def cfm_shift(M: CFMatrixSeq, k: int) -> CFMatrixSeq:
    return cfm_map(M, lambda e: cf_shift(e, k))


def cfm_subseq(M: CFMatrixSeq, t: int, r: int) -> CFMatrixSeq:
    return cfm_map(M, lambda e: cf_subseq(e, t, r))


def cfm_scale(M: CFMatrixSeq, s: CFiniteSeq) -> CFMatrixSeq:
    """Entrywise product with a scalar C-finite sequence."""
    return cfm_map(M, lambda e: cf_minimize(cf_mul(e, s)))


def cfm_vec(M: CFMatrixSeq) -> List[CFiniteSeq]:
    """Row-major vectorisation."""
    return [e for r in M.entries for e in r]


def _sum(domain, terms: List[CFiniteSeq]) -> CFiniteSeq:
    acc = cf_zero(domain)
    for t in terms:
        if not cf_is_zero(t):
            acc = cf_minimize(cf_add(acc, t))
    return acc


def cf_dot(domain, xs: Sequence[CFiniteSeq], ys: Sequence[CFiniteSeq]) -> CFiniteSeq:
    prods = []
    for x, y in zip(xs, ys):
        if cf_is_zero(x) or cf_is_zero(y):
            continue
        prods.append(cf_minimize(cf_mul(x, y)))
    return _sum(domain, prods)


def cfm_mul(A: CFMatrixSeq, B: CFMatrixSeq) -> CFMatrixSeq:
    if A.domain != B.domain:
        raise DomainMismatch(f"{A.domain!r} vs {B.domain!r}")
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    dom = A.domain
    bcols = [[B.entries[k][j] for k in range(B.rows)] for j in range(B.cols)]
    return CFMatrixSeq(dom, [[cf_dot(dom, A.entries[i], bcols[j]) for j in range(B.cols)]
                             for i in range(A.rows)])


def cfm_apply(A: CFMatrixSeq, v: Sequence[CFiniteSeq]) -> List[CFiniteSeq]:
    return [cf_dot(A.domain, A.entries[i], v) for i in range(A.rows)]


class _MinorCache:
    """Determinants of submatrices keyed by (row set, column set)."""

    def __init__(self, A: CFMatrixSeq):
        self.A = A
        self.memo: Dict[Tuple[FrozenSet[int], FrozenSet[int]], CFiniteSeq] = {}

    def det(self, rows: Tuple[int, ...], cols: Tuple[int, ...]) -> CFiniteSeq:
        key = (frozenset(rows), frozenset(cols))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        dom = self.A.domain
        if not rows:
            out = cf_const(dom, dom.one)
        elif len(rows) == 1:
            out = self.A.entries[rows[0]][cols[0]]
        else:
            r0, rest = rows[0], rows[1:]
            parts = []
            for k, c in enumerate(cols):
                a = self.A.entries[r0][c]
                if cf_is_zero(a):
                    continue
                sub = self.det(rest, cols[:k] + cols[k + 1:])
                if cf_is_zero(sub):
                    continue
                t = cf_minimize(cf_mul(a, sub))
                parts.append(cf_neg(t) if k % 2 else t)
            out = _sum(dom, parts)
        self.memo[key] = out
        return out


def cfm_det(A: CFMatrixSeq) -> CFiniteSeq:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix sequence")
    idx = tuple(range(A.rows))
    return _MinorCache(A).det(idx, idx)


def cfm_det_adjugate(A: CFMatrixSeq) -> Tuple[CFiniteSeq, CFMatrixSeq]:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix sequence")
    n = A.rows
    dom = A.domain
    cache = _MinorCache(A)
    idx = tuple(range(n))
    det = cache.det(idx, idx)
    if n == 0:
        return det, CFMatrixSeq(dom, [])
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            # adj[i][j] = (-1)^{i+j} det(A without row j, column i)
            m = cache.det(tuple(k for k in idx if k != j), tuple(k for k in idx if k != i))
            row.append(cf_neg(m) if (i + j) % 2 else m)
        adj.append(row)
    return det, CFMatrixSeq(dom, adj)


def const_power_seq(M: RingMatrix, c: int, d: int) -> CFMatrixSeq:
    """n -> M^{cn+d} when cn+d >= 0, else the zero matrix."""
    if c < 1:
        raise ValueError("c must be at least 1")
    if not M.is_square:
        raise ValueError("M must be square")
    dom = M.domain
    r = M.rows
    Mc = M ** c
    chi = char_poly(Mc)  # full characteristic polynomial, constant term included
    coeffs = [-e for e in chi[:-1]]
    n0 = max(0, -(d // c))  # ceil(-d/c)
    Z = RingMatrix.zeros(dom, r, r)
    mats = [Z] * n0
    P = M ** (c * n0 + d)
    for _ in range(r):
        mats.append(P)
        P = P @ Mc
    return CFMatrixSeq(dom, [[CFiniteSeq(dom, coeffs, [X[i, j] for X in mats], n0) for j in range(r)]
                             for i in range(r)])


def cfm_inverse_on_residue(A: CFMatrixSeq, p: int, i: int, n1: int = 0,
                           horizon: int = 32) -> Tuple[CFMatrixSeq, CFiniteSeq]:
    """(adjugate, determinant) of n -> A_{pn+i+n1}, checked invertible on the horizon."""
    if p < 1 or not 0 <= i < p:
        raise ValueError("need p >= 1 and 0 <= i < p")
    sub = cfm_subseq(A, p, i + n1)
    det, adj = cfm_det_adjugate(sub)
    for n, x in enumerate(det.terms(horizon + 1)):
        if not x:
            raise ExtractionError(f"determinant vanishes at re-indexed n={n} (A index {p * n + i + n1})")
    return adj, det


__all__ = [
    "CFMatrixSeq", "cfm_at", "cfm_map", "cfm_transpose", "cfm_shift", "cfm_subseq", "cfm_scale",
    "cfm_vec", "cfm_mul", "cfm_apply", "cfm_det", "cfm_det_adjugate", "const_power_seq",
    "cfm_inverse_on_residue", "cf_dot",
]
