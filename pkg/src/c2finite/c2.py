"""C^2-finite recurrences: extraction from vector recurrences, quadratic
subsequences, closure under sums and products, verification and guessing.

A :class:`C2Recurrence` of order r stores C-finite coefficient sequences
q_0..q_r and the relation

    q_r(n) b_{n+r} = q_0(n) b_n + ... + q_{r-1}(n) b_{n+r-1}      (n >= valid_from)

certified exactly on ``[valid_from, certified_horizon]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .cfinite import (CFiniteSeq, cf_add, cf_const, cf_delay, cf_fibonacci, cf_is_zero,
                      cf_minimize, cf_mul, cf_shift, cf_subseq, cf_sub, cf_zero, growth_exponent)
from .cfmatrix import (CFMatrixSeq, cf_dot, cfm_det_adjugate, cfm_mul, cfm_scale, cfm_shift,
                       cfm_vec, const_power_seq)
from .errors import CertificationError, DomainMismatch, ExtractionError, PatternNotFound
from .linalg import RingMatrix, companion, nullspace, rank, in_span
from .rings import QQ

PROOF_STATUS = "certified-horizon"


@dataclass(frozen=True)
class ExtractionParams:
    n1_max: int = 8
    p_max: int = 6
    horizon: int = 64

    def check(self, dim: int) -> None:
        if self.n1_max < 0 or self.p_max < 1:
            raise ValueError("need n1_max >= 0 and p_max >= 1")
        if not self.horizon > self.n1_max + 2 * self.p_max + dim * dim:
            raise ValueError(
                f"horizon {self.horizon} must exceed n1_max + 2*p_max + dim^2 "
                f"= {self.n1_max + 2 * self.p_max + dim * dim}"
            )

    @classmethod
    def parse(cls, text: str) -> "ExtractionParams":
        parts = [int(x) for x in text.split(",")]
        if len(parts) != 3:
            raise ValueError("expected n1_max,p_max,horizon")
        return cls(*parts)


class C2Recurrence:
    __slots__ = ("domain", "coeffs", "valid_from", "initials", "certified_horizon",
                 "proof_status", "index_shift", "_cache")

    def __init__(self, domain, coeffs: Sequence[CFiniteSeq], valid_from: int, initials: Sequence,
                 certified_horizon: int = -1, proof_status: str = PROOF_STATUS, index_shift: int = 0):
        if not coeffs:
            raise ValueError("need at least the leading coefficient sequence")
        for q in coeffs:
            if q.domain != domain:
                raise DomainMismatch(f"coefficient over {q.domain!r}, recurrence over {domain!r}")
        self.domain = domain
        self.coeffs = tuple(coeffs)
        self.valid_from = int(valid_from)
        self.initials = tuple(domain.convert(x) for x in initials)
        if len(self.initials) != self.valid_from + self.order:
            raise ValueError(f"need {self.valid_from + self.order} initial terms, got {len(self.initials)}")
        self.certified_horizon = certified_horizon
        self.proof_status = proof_status
        self.index_shift = index_shift
        self._cache = list(self.initials)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> CFiniteSeq:
        return self.coeffs[-1]

    def term(self, n: int):
        cache = self._cache
        r = self.order
        while len(cache) <= n:
            m = len(cache) - r
            lead = self.lead.term(m)
            if not lead:
                raise ZeroDivisionError(f"leading coefficient vanishes at n={m}")
            acc = self.domain.zero
            for t in range(r):
                q = self.coeffs[t].term(m)
                if q:
                    acc = acc + q * cache[m + t]
            cache.append(acc / lead)
        return cache[n]

    def terms(self, count: int) -> list:
        if count > 0:
            self.term(count - 1)
        return list(self._cache[:count])

    def residual(self, b: Callable[[int], object], n: int):
        """q_r(n) b_{n+r} - sum_t q_t(n) b_{n+t}."""
        r = self.order
        acc = self.lead.term(n) * b(n + r)
        for t in range(r):
            q = self.coeffs[t].term(n)
            if q:
                acc = acc - q * b(n + t)
        return acc

    def to_json(self) -> dict:
        out = {
            "order": self.order,
            "coeffs": [q.to_json() for q in self.coeffs],
            "valid_from": self.valid_from,
            "initials": [self.domain.format(x) for x in self.initials],
            "certified_horizon": self.certified_horizon,
            "proof_status": self.proof_status,
        }
        if self.index_shift:
            out["index_shift"] = self.index_shift
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "C2Recurrence":
        coeffs = [CFiniteSeq.from_json(q) for q in obj["coeffs"]]
        dom = coeffs[0].domain
        if "order" in obj and obj["order"] != len(coeffs) - 1:
            raise ValueError("order does not match coefficient count")
        return cls(dom, coeffs, obj.get("valid_from", 0), [dom.convert(x) for x in obj["initials"]],
                   obj.get("certified_horizon", -1), obj.get("proof_status", PROOF_STATUS),
                   obj.get("index_shift", 0))

    def __repr__(self):
        return (f"C2Recurrence(order={self.order}, valid_from={self.valid_from}, "
                f"coeff_orders={[q.order for q in self.coeffs]}, "
                f"certified_horizon={self.certified_horizon})")


# --------------------------------------------------------------------------
# verification

@dataclass
class VerifyReport:
    ok: bool
    checked: int
    first_violation: Optional[int] = None
    lead_zero_at: Optional[int] = None
    initials_mismatch_at: Optional[int] = None
    vacuous: bool = False

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _as_oracle(oracle) -> Callable[[int], object]:
    if callable(oracle):
        return oracle
    seq = list(oracle)
    return lambda n: seq[n]


def c2_verify(rec: C2Recurrence, oracle, upto: int) -> VerifyReport:
    """Check the relation for valid_from <= n <= upto against oracle terms."""
    b = _as_oracle(oracle)
    dom = rec.domain
    mism = None
    for n, x in enumerate(rec.initials):
        if n > upto + rec.order:
            break
        if dom.convert(b(n)) != x:
            mism = n
            break
    if upto < rec.valid_from:
        return VerifyReport(ok=mism is None, checked=0, initials_mismatch_at=mism, vacuous=True)
    lead_zero = None
    violation = None
    checked = 0
    for n in range(rec.valid_from, upto + 1):
        if not rec.lead.term(n):
            lead_zero = n
            break
        if rec.residual(lambda k: dom.convert(b(k)), n):
            violation = n
            break
        checked += 1
    ok = violation is None and lead_zero is None and mism is None
    return VerifyReport(ok, checked, violation, lead_zero, mism)


# --------------------------------------------------------------------------
# extraction

def cf_spread(y: CFiniteSeq, p: int, o: int) -> CFiniteSeq:
    """z_{o + p m} = y_m, and z_n = 0 off that progression."""
    dom = y.domain
    if p == 1:
        return cf_delay(y, o)
    s = y.order
    coeffs = [dom.zero] * (p * s)
    for i, c in enumerate(y.coeffs):
        coeffs[p * i] = c
    vf = o + p * y.valid_from

    def z(n):
        if n < o or (n - o) % p:
            return dom.zero
        return y.term((n - o) // p)

    return CFiniteSeq(dom, coeffs, [z(n) for n in range(vf + p * s)], vf)


def _running_products(M: CFMatrixSeq, w: CFiniteSeq, R: int) -> List[CFMatrixSeq]:
    """Q^{(i)}_n = (w_{n+i} ... w_{n+R-1}) M_{n+i-1} ... M_n for i = 0..R."""
    dom = M.domain
    P = [CFMatrixSeq.identity(dom, M.rows)]
    for i in range(R):
        P.append(cfm_mul(cfm_shift(M, i), P[-1]))
    one = cf_const(dom, dom.one)
    trivial_w = w.order == 1 and w.coeffs[0] == dom.one and w.initials == (dom.one,)
    if trivial_w:
        return P
    weights = [one] * (R + 1)
    for i in range(R - 1, -1, -1):
        weights[i] = cf_minimize(cf_mul(weights[i + 1], cf_shift(w, i)))
    return [P[i] if i == R else cfm_scale(P[i], weights[i]) for i in range(R + 1)]


def _basis_pattern(cols: List[list], R: int, dom) -> Tuple[int, ...]:
    """Columns of cols[0..R-1] kept by a right-to-left greedy rank scan.

    When cols[t..R-1] is independent for the smallest possible t this is just
    that suffix; degenerate (e.g. periodic) products skip repeated columns.
    """
    keep: List[int] = []
    for i in range(R - 1, -1, -1):
        cand = [cols[j] for j in keep] + [cols[i]]
        if rank(RingMatrix.from_columns(dom, cand)) == len(cand):
            keep.append(i)
    return tuple(sorted(keep))


def _find_period(s: list, n1_max: int, p_max: int) -> Tuple[int, int]:
    H = len(s) - 1
    for n1 in range(n1_max + 1):
        for p in range(1, p_max + 1):
            if all(s[n] == s[n + p] for n in range(n1, H - p + 1)):
                return n1, p
    raise PatternNotFound(f"s_n not eventually periodic within n1 <= {n1_max}, p <= {p_max}: {s}")


def _iterate_vectors(M: CFMatrixSeq, w: CFiniteSeq, v0: Sequence, upto: int) -> List[list]:
    dom = M.domain
    vs = [[dom.convert(x) for x in v0]]
    for n in range(upto):
        wn = w.term(n)
        if not wn:
            raise ExtractionError(f"w vanishes at n={n}")
        nxt = M.at(n).apply(vs[-1])
        vs.append([x / wn for x in nxt])
    return vs


def _output_weights(output, r: int, dom) -> list:
    if output is None:
        output = 0
    if isinstance(output, int):
        if not 0 <= output < r:
            raise ValueError("output component out of range")
        return [dom.one if k == output else dom.zero for k in range(r)]
    if len(output) != r:
        raise ValueError("output weight vector has wrong length")
    return [dom.convert(x) for x in output]


def _functional_rows(M: CFMatrixSeq, w: CFiniteSeq, weights: Sequence, R: int) -> List[List[CFiniteSeq]]:
    """u^{(i)}_n = (w_{n+i} ... w_{n+R-1}) e^T M_{n+i-1} ... M_n for i = 0..R."""
    dom = M.domain
    r = M.rows
    rows = [[cf_const(dom, x) for x in weights]]
    for i in range(R):
        prev = [cf_shift(u, 1) for u in rows[-1]]
        rows.append([cf_dot(dom, prev, [M.entries[k][j] for k in range(r)]) for j in range(r)])
    trivial_w = w.order == 1 and w.coeffs[0] == dom.one and w.initials == (dom.one,)
    if trivial_w:
        return rows
    weight = [cf_const(dom, dom.one)] * (R + 1)
    for i in range(R - 1, -1, -1):
        weight[i] = cf_minimize(cf_mul(weight[i + 1], cf_shift(w, i)))
    return [[cf_minimize(cf_mul(u, weight[i])) for u in rows[i]] for i in range(R + 1)]


def extract_recurrence(M: CFMatrixSeq, w: CFiniteSeq, v0: Sequence,
                       params: ExtractionParams = ExtractionParams(),
                       order: Optional[int] = None, output=None,
                       mode: str = "matrix") -> C2Recurrence:
    """C^2 relation for the vector recurrence v_{n+1} = M_n v_n / w_n.

    ``mode="matrix"`` relates the running products M_{n+i-1}...M_n themselves,
    so every component of v satisfies the result; ``order`` defaults to r^2.
    ``mode="functional"`` relates only the rows e^T M_{n+i-1}...M_n for the
    output functional e, so only that combination is covered; ``order``
    defaults to r.  ``output`` is a component index or a weight vector.
    """
    dom = M.domain
    if not dom.is_field:
        raise ValueError("extraction needs a field domain")
    if M.rows != M.cols:
        raise ValueError("transfer matrix must be square")
    if w.domain != dom:
        raise DomainMismatch("w and M live over different domains")
    if mode not in ("matrix", "functional"):
        raise ValueError("mode must be 'matrix' or 'functional'")
    r = M.rows
    dim = r * r if mode == "matrix" else r
    R = dim if order is None else order
    if R < 1:
        raise ValueError("order must be positive")
    params.check(r)
    H = params.horizon
    weights = _output_weights(output, r, dom)

    for n in range(H + R + 1):
        if not w.term(n):
            raise ExtractionError(f"w vanishes at n={n}")
    vs = _iterate_vectors(M, w, v0, H + R)

    if mode == "matrix":
        N = [cfm_vec(q) for q in _running_products(M, w, R)]
    else:
        N = _functional_rows(M, w, weights, R)

    # rank thresholds per index
    s = []
    for n in range(H + 1):
        cols = [[e.term(n) for e in N[i]] for i in range(R + 1)]
        keep = _basis_pattern(cols, R, dom)
        if not in_span([cols[i] for i in keep], cols[R], dom):
            raise ExtractionError(f"N^({R}) not in the span of the earlier columns at n={n}")
        s.append(keep)
    n1, p = _find_period(s, params.n1_max, params.p_max)

    coeff_parts: List[List[CFiniteSeq]] = [[] for _ in range(R + 1)]
    for j in range(p):
        o = n1 + j
        sj = s[o]
        target = [cf_subseq(e, p, o) for e in N[R]]
        if not sj:
            lead = cf_const(dom, dom.one)
            ys = []
        else:
            cols = [[cf_subseq(e, p, o) for e in N[t]] for t in sj]
            if len(sj) == R == dim:
                # square fast path: y' = adj(N) N^{(R)}, lead = det(N)
                Nmat = CFMatrixSeq(dom, [[cols[t][k] for t in range(R)] for k in range(dim)])
                lead, adj = cfm_det_adjugate(Nmat)
                ys = [cf_dot(dom, adj.entries[a], target) for a in range(R)]
            else:
                m = len(cols)
                G = CFMatrixSeq(dom, [[cf_dot(dom, cols[a], cols[b]) for b in range(m)] for a in range(m)])
                rhs = [cf_dot(dom, cols[a], target) for a in range(m)]
                lead, adj = cfm_det_adjugate(G)
                ys = [cf_dot(dom, adj.entries[a], rhs) for a in range(m)]
        for m_, x in enumerate(lead.terms((H - o) // p + 1)):
            if not x:
                raise ExtractionError(f"leading coefficient vanishes at n={o + p * m_}")
        coeff_parts[R].append(cf_spread(lead, p, o))
        for t, y in zip(sj, ys):
            coeff_parts[t].append(cf_spread(y, p, o))

    coeffs = []
    for parts in coeff_parts:
        acc = cf_zero(dom)
        for x in parts:
            if not cf_is_zero(x):
                acc = cf_add(acc, x)
        coeffs.append(cf_minimize(acc))

    def b(n):
        acc = dom.zero
        for wk, x in zip(weights, vs[n]):
            if wk:
                acc = acc + wk * x
        return acc

    # certify against direct iteration: all components (matrix) or the output (functional)
    checks = [(lambda n, k=k: vs[n][k]) for k in range(r)] if mode == "matrix" else [b]
    for n in range(n1, H + 1):
        if not coeffs[R].term(n):
            raise CertificationError(f"leading coefficient vanishes at n={n}")
        qs = [c.term(n) for c in coeffs]
        for get in checks:
            rhs = dom.zero
            for t in range(R):
                if qs[t]:
                    rhs = rhs + qs[t] * get(n + t)
            if qs[R] * get(n + R) != rhs:
                raise CertificationError(f"relation fails at n={n}")

    return C2Recurrence(dom, coeffs, n1, [b(n) for n in range(n1 + R)], H)


def c2_reduce(rec: C2Recurrence) -> C2Recurrence:
    """Drop identically-zero q_0..q_{k-1} by re-indexing; re-certified."""
    k = 0
    while k < rec.order and cf_is_zero(rec.coeffs[k]):
        k += 1
    if k == 0:
        return rec
    new = [cf_minimize(cf_delay(q, k)) for q in rec.coeffs[k:]]
    vf = rec.valid_from + k
    H = rec.certified_horizon + k if rec.certified_horizon >= 0 else -1
    ref = rec.terms(vf + (rec.order - k) + max(H, vf) + 1)
    out = C2Recurrence(rec.domain, new, vf, ref[:vf + rec.order - k], H, rec.proof_status, rec.index_shift)
    if H >= vf:
        rep = c2_verify(out, ref, H)
        if not rep.ok:
            raise CertificationError(f"reduced recurrence failed re-certification: {rep}")
    return out


def c2_reembed(rec: C2Recurrence, shift: int, oracle: Callable[[int], object]) -> C2Recurrence:
    """Turn a recurrence for n -> b_{n+shift} into one for b_n (prefix from oracle)."""
    if shift == 0:
        return rec
    dom = rec.domain
    coeffs = [cf_minimize(cf_delay(q, shift)) for q in rec.coeffs]
    vf = rec.valid_from + shift
    inits = [dom.convert(oracle(n)) for n in range(vf + rec.order)]
    H = rec.certified_horizon + shift
    return C2Recurrence(dom, coeffs, vf, inits, H, rec.proof_status)


# --------------------------------------------------------------------------
# quadratic subsequences

def zeta(c: int, d: int, e: int, n: int) -> int:
    return c * (n * (n - 1) // 2) + d * n + e


def quadratic_subseq(a: CFiniteSeq, c: int, d: int, e: int,
                     params: ExtractionParams = ExtractionParams()) -> C2Recurrence:
    """Recurrence for b_n = a_{c*binom(n,2) + d*n + e}.

    The consecutive index gaps are zeta(n+1) - zeta(n) = c*n + d, so the state
    u_m = (a_{m+s-1}, ..., a_m) advances by companion(a)^{c n + d}.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if a.order < 1:
        raise ValueError("sequence must have positive order")
    dom = a.domain
    s = a.order
    n0 = max(0, -(d // c))
    while zeta(c, d, e, n0) < a.valid_from:
        n0 += 1
    C = companion(dom, a.coeffs)
    M = const_power_seq(C, c, c * n0 + d)
    z0 = zeta(c, d, e, n0)
    v0 = [a.term(z0 + s - 1 - k) for k in range(s)]
    rec = extract_recurrence(M, cf_const(dom, dom.one), v0, params, output=s - 1)
    rec = c2_reduce(rec)
    prefix_ok = all(zeta(c, d, e, n) >= 0 for n in range(n0))
    if n0 and prefix_ok:
        rec = c2_reembed(rec, n0, lambda n: a.term(zeta(c, d, e, n)))
    elif n0:
        rec.index_shift = n0

    shift = rec.index_shift
    rep = c2_verify(rec, lambda n: a.term(zeta(c, d, e, n + shift)), rec.certified_horizon)
    if not rep.ok:
        raise CertificationError(f"quadratic subsequence recurrence failed verification: {rep}")
    return rec


# --------------------------------------------------------------------------
# closure

def _state_matrix(rec: C2Recurrence, start: int) -> CFMatrixSeq:
    """Unnormalised companion A_n with q_r(n) x_{n+1} = A_n x_n, x_n = (b_{n+r-1}..b_n)."""
    dom = rec.domain
    r = rec.order
    qs = [cf_shift(q, start) for q in rec.coeffs]
    z = cf_zero(dom)
    rows = [[qs[r - 1 - j] for j in range(r)]]
    for i in range(1, r):
        rows.append([qs[r] if j == i - 1 else z for j in range(r)])
    return CFMatrixSeq(dom, rows)


def _same_relation(a: C2Recurrence, b: C2Recurrence) -> bool:
    if a.order != b.order or a.valid_from != b.valid_from:
        return False
    return all(json.dumps(x.to_json(), sort_keys=True) == json.dumps(y.to_json(), sort_keys=True)
               for x, y in zip(a.coeffs, b.coeffs))


def _blockdiag(dom, A: CFMatrixSeq, B: CFMatrixSeq) -> CFMatrixSeq:
    z = cf_zero(dom)
    rows = [list(r) + [z] * B.cols for r in A.entries]
    rows += [[z] * A.cols + list(r) for r in B.entries]
    return CFMatrixSeq(dom, rows)


def _kron(dom, A: CFMatrixSeq, B: CFMatrixSeq) -> CFMatrixSeq:
    rows = []
    for i1 in range(A.rows):
        for i2 in range(B.rows):
            rows.append([cf_minimize(cf_mul(A.entries[i1][j1], B.entries[i2][j2]))
                         for j1 in range(A.cols) for j2 in range(B.cols)])
    return CFMatrixSeq(dom, rows)


def c2_combine(a: C2Recurrence, b: C2Recurrence, op: str,
               params: ExtractionParams = ExtractionParams(),
               max_order: Optional[int] = None) -> C2Recurrence:
    """Recurrence for a_n + b_n (op='add') or a_n * b_n (op='mul')."""
    if a.domain != b.domain:
        raise DomainMismatch(f"{a.domain!r} vs {b.domain!r}")
    if op not in ("add", "mul"):
        raise ValueError("op must be 'add' or 'mul'")
    dom = a.domain
    f = (lambda n: a.term(n) + b.term(n)) if op == "add" else (lambda n: a.term(n) * b.term(n))

    if op == "add" and _same_relation(a, b):
        H = min(a.certified_horizon, b.certified_horizon)
        out = C2Recurrence(dom, a.coeffs, a.valid_from,
                           [x + y for x, y in zip(a.initials, b.initials)], H)
        return out

    n0 = max(a.valid_from, b.valid_from)
    A, B = _state_matrix(a, n0), _state_matrix(b, n0)
    la, lb = cf_shift(a.lead, n0), cf_shift(b.lead, n0)
    w = cf_minimize(cf_mul(la, lb))
    xa = [a.term(n0 + a.order - 1 - k) for k in range(a.order)]
    xb = [b.term(n0 + b.order - 1 - k) for k in range(b.order)]
    if op == "add":
        M = _blockdiag(dom, cfm_scale(A, lb), cfm_scale(B, la))
        v0 = xa + xb
        weights = [dom.zero] * len(v0)
        weights[a.order - 1] = dom.one
        weights[-1] = dom.one
    else:
        M = _kron(dom, A, B)
        v0 = [x * y for x in xa for y in xb]
        weights = [dom.zero] * len(v0)
        weights[-1] = dom.one
    dim = M.rows
    top = dim if max_order is None else min(max_order, dim)
    last_err: Exception | None = None
    for K in range(1, top + 1):
        try:
            rec = extract_recurrence(M, w, v0, params, order=K, output=weights, mode="functional")
        except (ExtractionError, CertificationError, PatternNotFound) as exc:
            last_err = exc
            continue
        rec = c2_reduce(rec)
        rec = c2_reembed(rec, n0, f)
        rep = c2_verify(rec, f, rec.certified_horizon)
        if not rep.ok:
            raise CertificationError(f"combined recurrence failed verification: {rep}")
        return rec
    raise ExtractionError(f"no relation of order <= {top} found: {last_err}")


# --------------------------------------------------------------------------
# guessing

def c2_guess(terms: Sequence, order: int, ansatz: Sequence[CFiniteSeq], holdout: int,
             domain=None) -> C2Recurrence:
    """Fit sum_t sum_k alpha_{t,k} basis_k(n) b_{n+t} = 0 exactly, then test the holdout."""
    if not ansatz:
        raise ValueError("empty ansatz")
    dom = domain or ansatz[0].domain
    b = [dom.convert(x) for x in terms]
    r = order
    K = len(ansatz)
    unknowns = (r + 1) * K
    need = unknowns + holdout + r
    if len(b) < need:
        raise ValueError(f"need at least {need} terms, got {len(b)}")
    fit_rows = len(b) - holdout - r
    rows = []
    for n in range(fit_rows):
        rows.append([ansatz[k].term(n) * b[n + t] for t in range(r + 1) for k in range(K)])
    A = RingMatrix(dom, shape=(fit_rows, unknowns), flat=[x for row in rows for x in row])
    ns = nullspace(A)
    if not ns:
        raise ExtractionError("no relation of this shape fits the terms")
    if len(ns) > 1:
        raise ExtractionError(f"underdetermined: {len(ns)}-dimensional solution space")
    x = ns[0]

    def combo(t, sign):
        acc = cf_zero(dom)
        for k in range(K):
            c = x[t * K + k]
            if c:
                acc = cf_add(acc, cf_mul(cf_const(dom, c * sign), ansatz[k]))
        return cf_minimize(acc)

    lead = combo(r, 1)
    # normalise so the first nonzero lead term is 1 over Q
    first = next((v for v in lead.terms(len(b)) if v), None)
    if first is None:
        raise ExtractionError("leading coefficient is identically zero on the data")
    scale = dom.one / first
    coeffs = [combo(t, -1) for t in range(r)] + [lead]
    coeffs = [cf_minimize(cf_mul(cf_const(dom, scale), q)) if not cf_is_zero(q) else q for q in coeffs]
    vf = 0
    while vf < len(b) - r and not coeffs[-1].term(vf):
        vf += 1
    H = len(b) - r - 1
    rec = C2Recurrence(dom, coeffs, vf, b[:vf + r], H, "guessed-holdout")
    rep = c2_verify(rec, b, H)
    if not rep.ok:
        raise CertificationError(f"holdout check failed: {rep}")
    return rec


# --------------------------------------------------------------------------
# explicit Fibonacci identities

def fib(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1 (negative n via F_{-n} = (-1)^{n+1} F_n)."""
    if n < 0:
        v = fib(-n)
        return v if n % 2 else -v

    def pair(k):
        if k == 0:
            return 0, 1
        a, b = pair(k >> 1)
        c = a * (2 * b - a)
        d = a * a + b * b
        return (d, c + d) if k & 1 else (c, d)

    return pair(n)[0]


def fib_identity_recurrences(horizon: int = 30) -> Tuple[C2Recurrence, C2Recurrence]:
    """The square (F_{n^2}) and triangle (F_{binom(n,2)}) recurrences, re-indexed to start at 0."""
    F = cf_fibonacci(QQ)
    mul, add, sub = (lambda x, y: cf_minimize(cf_mul(x, y))), \
        (lambda x, y: cf_minimize(cf_add(x, y))), (lambda x, y: cf_minimize(cf_sub(x, y)))

    # square: F_{2n+1} b_{n+2} = F_{2n+2}(F_{2n+3}+F_{2n+1}) b_{n+1}
    #                            + F_{2n+3}(F_{2n+1}F_{2n+3} - F_{2n+2}^2) b_n
    f1, f2, f3 = cf_subseq(F, 2, 1), cf_subseq(F, 2, 2), cf_subseq(F, 2, 3)
    q2 = f1
    q1 = mul(f2, add(f3, f1))
    q0 = mul(f3, sub(mul(f1, f3), mul(f2, f2)))
    sq_terms = lambda n: fib(n * n)
    square = C2Recurrence(QQ, [q0, q1, q2], 0, [sq_terms(0), sq_terms(1)], horizon)

    # triangle: F_n b_{n+2} = (F_n F_{n+2} + F_{n+1} F_{n-1}) b_{n+1}
    #                         + (F_{n+1} F_n^2 - F_{n-1} F_{n+1}^2) b_n,  n >= 1
    g0, g1, g2, gm = F, cf_shift(F, 1), cf_shift(F, 2), cf_shift(F, -1)
    t2 = g0
    t1 = add(mul(g0, g2), mul(g1, gm))
    t0 = sub(mul(g1, mul(g0, g0)), mul(gm, mul(g1, g1)))
    tri_terms = lambda n: fib(n * (n - 1) // 2)
    triangle = C2Recurrence(QQ, [t0, t1, t2], 1, [tri_terms(n) for n in range(3)], horizon)

    for rec, oracle in ((square, sq_terms), (triangle, tri_terms)):
        rep = c2_verify(rec, oracle, horizon)
        if not rep.ok:
            raise CertificationError(f"Fibonacci identity failed: {rep}")
    return square, triangle


def fib_square_identity_holds(n: int) -> bool:
    """F_{2n-1} F_{(n+1)^2} = F_{2n}(F_{2n+1}+F_{2n-1}) F_{n^2} + F_{2n+1}(F_{2n-1}F_{2n+1}-F_{2n}^2) F_{(n-1)^2}."""
    F = fib
    lhs = F(2 * n - 1) * F((n + 1) ** 2)
    rhs = (F(2 * n) * (F(2 * n + 1) + F(2 * n - 1)) * F(n * n)
           + F(2 * n + 1) * (F(2 * n - 1) * F(2 * n + 1) - F(2 * n) ** 2) * F((n - 1) ** 2))
    return lhs == rhs


def fib_triangle_identity_holds(n: int) -> bool:
    """F_{n-1} F_{C(n+1,2)} = (F_{n-1}F_{n+1} + F_n F_{n-2}) F_{C(n,2)} + (F_n F_{n-1}^2 - F_{n-2} F_n^2) F_{C(n-1,2)}."""
    F = fib
    C2 = lambda m: m * (m - 1) // 2
    lhs = F(n - 1) * F(C2(n + 1))
    rhs = ((F(n - 1) * F(n + 1) + F(n) * F(n - 2)) * F(C2(n))
           + (F(n) * F(n - 1) ** 2 - F(n - 2) * F(n) ** 2) * F(C2(n - 1)))
    return lhs == rhs


def fib_word_identity(m: int, k: int) -> Tuple[int, int]:
    """(F_{m+k+2}, F_{k+1} F_{m+2} + F_k F_{m+1})."""
    return fib(m + k + 2), fib(k + 1) * fib(m + 2) + fib(k) * fib(m + 1)


def c2_growth(rec: C2Recurrence, count: int) -> float:
    """Fitted alpha with |b_n| <= alpha^{n^2} on the first ``count`` terms."""
    return growth_exponent(rec.terms(count), power=lambda n: n * n)


__all__ = [
    "ExtractionParams", "C2Recurrence", "VerifyReport", "c2_verify", "cf_spread",
    "extract_recurrence", "c2_reduce", "c2_reembed", "zeta", "quadratic_subseq", "c2_combine",
    "c2_guess", "fib", "fib_identity_recurrences", "fib_square_identity_holds",
    "fib_triangle_identity_holds", "fib_word_identity", "c2_growth",
]
