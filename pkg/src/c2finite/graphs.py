"""Labeled graphs (k-graphs), the basic operations on them, and family specs.

A k-graph is a simple graph whose vertex set is partitioned by labels
1..k.  Vertices are the integers ``0..V-1`` in creation order.  Families
are described by elementary operations (lists of basic operations):

* iterative:     G_{n+1} = F(G_n)
* bi-iterative:  G_{n+1} = H(F^n(L(G_n)))
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union


class LabelError(ValueError):
    """A label argument lies outside 1..k."""


@dataclass(frozen=True)
class KGraph:
    k: int
    labels: Tuple[int, ...]
    edges: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        for lab in self.labels:
            if not 1 <= lab <= self.k:
                raise LabelError(f"label {lab} outside 1..{self.k}")
        n = len(self.labels)
        for u, v in self.edges:
            if not (0 <= u < v < n):
                raise ValueError(f"bad edge {(u, v)} for {n} vertices")

    @classmethod
    def empty(cls, k: int) -> "KGraph":
        return cls(k, ())

    @classmethod
    def build(cls, k: int, labels: Sequence[int], edges: Iterable[Tuple[int, int]] = ()) -> "KGraph":
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            es.add((min(u, v), max(u, v)))
        return cls(k, tuple(labels), frozenset(es))

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(len(self.labels))

    def label_class(self, i: int) -> List[int]:
        return [v for v, lab in enumerate(self.labels) if lab == i]

    def adjacency(self) -> List[set]:
        adj = [set() for _ in self.labels]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)

    def underlying(self) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
        """The graph with labels forgotten: (vertex count, sorted edges)."""
        return self.num_vertices, tuple(self.sorted_edges())

    def relabel_all(self, mapping: Dict[int, int], k: Optional[int] = None) -> "KGraph":
        return KGraph(k if k is not None else self.k,
                      tuple(mapping.get(x, x) for x in self.labels), self.edges)

    def to_json(self) -> dict:
        return {"k": self.k, "labels": list(self.labels), "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, obj) -> "KGraph":
        return cls.build(int(obj["k"]), [int(x) for x in obj["labels"]],
                         [tuple(e) for e in obj.get("edges", [])])


# --------------------------------------------------------------------------
# basic operations

@dataclass(frozen=True)
class Add:
    i: int

    def labels(self):
        return (self.i,)


@dataclass(frozen=True)
class Relabel:
    i: int
    j: int

    def labels(self):
        return (self.i, self.j)


@dataclass(frozen=True)
class Connect:
    i: int
    j: int

    def labels(self):
        return (self.i, self.j)


@dataclass(frozen=True)
class ConnectBounded:
    i: int
    j: int
    b: int

    def labels(self):
        return (self.i, self.j)


@dataclass(frozen=True)
class Disconnect:
    i: int
    j: int

    def labels(self):
        return (self.i, self.j)


BasicOp = Union[Add, Relabel, Connect, ConnectBounded, Disconnect]
ElementaryOp = Tuple[BasicOp, ...]

_OP_NAMES = {Add: "add", Relabel: "relabel", Connect: "connect",
             ConnectBounded: "connect_bounded", Disconnect: "disconnect"}


def op_to_json(op: BasicOp) -> dict:
    if isinstance(op, Add):
        return {"op": "add", "i": op.i}
    if isinstance(op, ConnectBounded):
        return {"op": "connect_bounded", "i": op.i, "j": op.j, "b": op.b}
    return {"op": _OP_NAMES[type(op)], "i": op.i, "j": op.j}


def op_from_json(obj) -> BasicOp:
    name = obj["op"]
    if name == "add":
        return Add(int(obj["i"]))
    if name == "relabel":
        return Relabel(int(obj["i"]), int(obj["j"]))
    if name == "connect":
        return Connect(int(obj["i"]), int(obj["j"]))
    if name == "connect_bounded":
        return ConnectBounded(int(obj["i"]), int(obj["j"]), int(obj["b"]))
    if name == "disconnect":
        return Disconnect(int(obj["i"]), int(obj["j"]))
    raise ValueError(f"unknown operation {name!r}")


def op_str(op: BasicOp) -> str:
    if isinstance(op, Add):
        return f"Add_{op.i}"
    if isinstance(op, Relabel):
        return f"rho_{op.i}->{op.j}"
    if isinstance(op, Connect):
        return f"eta_{op.i},{op.j}"
    if isinstance(op, ConnectBounded):
        return f"eta^{op.b}_{op.i},{op.j}"
    return f"delta_{op.i},{op.j}"


class _Builder:
    """Mutable working copy used while applying long operation scripts."""

    __slots__ = ("k", "labels", "edges", "classes")

    def __init__(self, g: KGraph):
        self.k = g.k
        self.labels = list(g.labels)
        self.edges = set(g.edges)
        self.classes: Dict[int, List[int]] = {i: [] for i in range(1, g.k + 1)}
        for v, lab in enumerate(g.labels):
            self.classes[lab].append(v)

    def check(self, op: BasicOp):
        for lab in op.labels():
            if not 1 <= lab <= self.k:
                raise LabelError(f"{op_str(op)}: label {lab} outside 1..{self.k}")

    def apply(self, op: BasicOp):
        self.check(op)
        if isinstance(op, Add):
            v = len(self.labels)
            self.labels.append(op.i)
            self.classes[op.i].append(v)
        elif isinstance(op, Relabel):
            if op.i == op.j:
                return
            moved = self.classes[op.i]
            for v in moved:
                self.labels[v] = op.j
            self.classes[op.j].extend(moved)
            self.classes[op.i] = []
        elif isinstance(op, (Connect, ConnectBounded)):
            if isinstance(op, ConnectBounded):
                size = len(self.classes[op.i]) + (len(self.classes[op.j]) if op.i != op.j else 0)
                if size > op.b:
                    return
            for u in self.classes[op.i]:
                for v in self.classes[op.j]:
                    if u != v:
                        self.edges.add((min(u, v), max(u, v)))
        elif isinstance(op, Disconnect):
            ci, cj = set(self.classes[op.i]), set(self.classes[op.j])
            self.edges = {(u, v) for (u, v) in self.edges
                          if not ((u in ci and v in cj) or (u in cj and v in ci))}
        else:
            raise TypeError(f"not a basic operation: {op!r}")

    def freeze(self) -> KGraph:
        return KGraph(self.k, tuple(self.labels), frozenset(self.edges))


def apply_elementary(g: KGraph, ops: Iterable[BasicOp]) -> KGraph:
    """Apply basic operations left to right."""
    b = _Builder(g)
    for op in ops:
        b.apply(op)
    return b.freeze()


# --------------------------------------------------------------------------
# family specifications

@dataclass(frozen=True)
class FamilySpec:
    kind: str  # "iterative" or "bi"
    k: int
    g0: KGraph
    f: ElementaryOp
    h: ElementaryOp = ()
    l: ElementaryOp = ()
    name: str = ""
    # closed forms used as sanity checks; not serialized
    vertex_count: Optional[object] = field(default=None, compare=False, repr=False)
    edge_count: Optional[object] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("iterative", "bi"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "iterative" and (self.h or self.l):
            raise ValueError("iterative families take a single operation F")
        if self.g0.k != self.k:
            raise ValueError(f"g0 has k={self.g0.k}, spec declares k={self.k}")
        for op in self.all_ops():
            for lab in op.labels():
                if not 1 <= lab <= self.k:
                    raise LabelError(f"{op_str(op)}: label {lab} outside 1..{self.k}")

    def all_ops(self) -> Tuple[BasicOp, ...]:
        return tuple(self.l) + tuple(self.f) + tuple(self.h)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "k": self.k, "name": self.name, "g0": self.g0.to_json(),
               "f": [op_to_json(o) for o in self.f]}
        if self.kind == "bi":
            out["h"] = [op_to_json(o) for o in self.h]
            out["l"] = [op_to_json(o) for o in self.l]
        return out

    @classmethod
    def from_json(cls, obj) -> "FamilySpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ops = lambda key: tuple(op_from_json(o) for o in obj.get(key, []))  # noqa: E731
        return cls(obj["kind"], int(obj["k"]), KGraph.from_json(obj["g0"]), ops("f"),
                   ops("h"), ops("l"), obj.get("name", ""))


def materialize(spec: FamilySpec, n: int) -> KGraph:
    """The n-th member of the family (labels kept)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    b = _Builder(spec.g0)
    for m in range(n):
        if spec.kind == "iterative":
            for op in spec.f:
                b.apply(op)
        else:
            for op in spec.l:
                b.apply(op)
            for _ in range(m):
                for op in spec.f:
                    b.apply(op)
            for op in spec.h:
                b.apply(op)
    return b.freeze()


def materialize_all(spec: FamilySpec, upto: int) -> List[KGraph]:
    """Members 0..upto, sharing the work of the incremental construction."""
    b = _Builder(spec.g0)
    out = [b.freeze()]
    for m in range(upto):
        if spec.kind == "iterative":
            for op in spec.f:
                b.apply(op)
        else:
            for op in spec.l:
                b.apply(op)
            for _ in range(m):
                for op in spec.f:
                    b.apply(op)
            for op in spec.h:
                b.apply(op)
        out.append(b.freeze())
    return out


@dataclass(frozen=True)
class SpecAnalysis:
    bounded: bool
    cliquewidth_bound: int
    unbounded_ops: Tuple[str, ...]
    witness: str

    def to_json(self) -> dict:
        return {"bounded": self.bounded, "cliquewidth_bound": self.cliquewidth_bound,
                "unbounded_ops": list(self.unbounded_ops), "witness": self.witness}


def analyze_spec(spec: FamilySpec) -> SpecAnalysis:
    """Boundedness (no plain Connect anywhere) and the clique-width bound k.

    The bound holds because every member is produced from g0 by the script
    itself, where each bounded connect is either a plain connect or nothing.
    """
    bad = tuple(op_str(o) for o in spec.all_ops() if isinstance(o, Connect))
    if spec.g0.num_vertices and spec.g0.edges:
        g0_note = f"g0 ({spec.g0.num_vertices} vertices) built by Add/Connect on {spec.k} labels, then "
    else:
        g0_note = ""
    if spec.kind == "iterative":
        scheme = f"G_n = F^n(g0) with F = [{', '.join(op_str(o) for o in spec.f)}]"
    else:
        scheme = ("G_{n+1} = H(F^n(L(G_n))) with "
                  f"L = [{', '.join(op_str(o) for o in spec.l)}], "
                  f"F = [{', '.join(op_str(o) for o in spec.f)}], "
                  f"H = [{', '.join(op_str(o) for o in spec.h)}]")
    witness = (g0_note + scheme + "; each bounded connect is replaced by a plain connect or dropped, "
               f"so every member is a {spec.k}-expression")
    return SpecAnalysis(not bad, spec.k, bad, witness)


# --------------------------------------------------------------------------
# combinators

def _shift_op(op: BasicOp, s: int) -> BasicOp:
    if isinstance(op, Add):
        return Add(op.i + s)
    if isinstance(op, ConnectBounded):
        return ConnectBounded(op.i + s, op.j + s, op.b)
    return type(op)(op.i + s, op.j + s)


def iterative_to_bi(spec: FamilySpec) -> FamilySpec:
    """An iterative F-family is the (H, F, L) = (F, id, id) bi-iterative family."""
    if spec.kind != "iterative":
        raise ValueError("expected an iterative family")
    return FamilySpec("bi", spec.k, spec.g0, f=(), h=tuple(spec.f), l=(), name=spec.name + "-bi",
                      vertex_count=spec.vertex_count, edge_count=spec.edge_count)


def disjoint_union(a: FamilySpec, b: FamilySpec) -> FamilySpec:
    """Member-wise disjoint union; b's labels are moved past a's."""
    s = a.k
    k = a.k + b.k
    g0 = KGraph(k, a.g0.labels + tuple(x + s for x in b.g0.labels),
                a.g0.edges | frozenset((u + a.g0.num_vertices, v + a.g0.num_vertices)
                                       for u, v in b.g0.edges))
    sh = lambda ops: tuple(_shift_op(o, s) for o in ops)  # noqa: E731
    vc = ec = None
    if a.vertex_count and b.vertex_count:
        vc = lambda n: a.vertex_count(n) + b.vertex_count(n)  # noqa: E731
    if a.edge_count and b.edge_count:
        ec = lambda n: a.edge_count(n) + b.edge_count(n)  # noqa: E731
    name = f"{a.name}+{b.name}"
    if a.kind == b.kind == "iterative":
        return FamilySpec("iterative", k, g0, tuple(a.f) + sh(b.f), name=name,
                          vertex_count=vc, edge_count=ec)
    if a.kind == "iterative":
        a = iterative_to_bi(a)
    if b.kind == "iterative":
        b = iterative_to_bi(b)
    return FamilySpec("bi", k, g0, f=tuple(a.f) + sh(b.f), h=tuple(a.h) + sh(b.h),
                      l=tuple(a.l) + sh(b.l), name=name, vertex_count=vc, edge_count=ec)


def quadratic_reindex(spec: FamilySpec, c: int, d: int, e: int) -> FamilySpec:
    """The family n -> G_{c*C(n,2) + d*n + e} of an iterative family.

    The step from index n to n+1 applies F exactly c*n + d times, which is
    the bi-iterative family (id, F^c, F^d) started from F^e(g0).
    """
    if spec.kind != "iterative":
        raise ValueError("quadratic re-indexing needs an iterative family")
    if c < 0 or d < 0 or e < 0:
        raise ValueError("c, d, e must be non-negative")
    g0 = apply_elementary(spec.g0, tuple(spec.f) * e)
    zeta = lambda n: c * n * (n - 1) // 2 + d * n + e  # noqa: E731
    vc = (lambda n: spec.vertex_count(zeta(n))) if spec.vertex_count else None
    ec = (lambda n: spec.edge_count(zeta(n))) if spec.edge_count else None
    return FamilySpec("bi", spec.k, g0, f=tuple(spec.f) * c, h=(), l=tuple(spec.f) * d,
                      name=f"{spec.name}[{c},{d},{e}]", vertex_count=vc, edge_count=ec)


# --------------------------------------------------------------------------
# export

def export_graph(g: KGraph, fmt: str = "edge_list") -> str:
    if fmt == "edge_list":
        lines = [f"# vertices {g.num_vertices} edges {g.num_edges}"]
        lines += [f"{u} {v}" for u, v in g.sorted_edges()]
        return "\n".join(lines) + "\n"
    if fmt == "dot":
        lines = ["graph G {"]
        lines += [f'  {v} [label="{v}", klabel={lab}];' for v, lab in enumerate(g.labels)]
        lines += [f"  {u} -- {v};" for u, v in g.sorted_edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


__all__ = [
    "KGraph", "LabelError", "Add", "Relabel", "Connect", "ConnectBounded", "Disconnect",
    "BasicOp", "ElementaryOp", "op_to_json", "op_from_json", "op_str", "apply_elementary",
    "FamilySpec", "materialize", "materialize_all", "SpecAnalysis", "analyze_spec",
    "iterative_to_bi", "disjoint_union", "quadratic_reindex", "export_graph",
]
