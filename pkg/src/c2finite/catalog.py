"""Built-in graph families with closed-form vertex and edge counts.

Label 1 is the "finished" label throughout; higher labels mark the
vertices a script still needs to touch.
"""
from __future__ import annotations

from typing import Dict, List

from .graphs import (Add, Connect, ConnectBounded as CB, Disconnect, FamilySpec, KGraph,
                     Relabel as R)


def _tri(n):
    return n * (n + 1) // 2


def path_family() -> FamilySpec:
    g0 = KGraph.build(3, [2])
    f = (Add(3), CB(2, 3, 2), R(2, 1), R(3, 2))
    return FamilySpec("iterative", 3, g0, f, name="path",
                      vertex_count=lambda n: n + 1, edge_count=lambda n: n)


def cycle_family() -> FamilySpec:
    """C_{n+3}: a path with ends labeled 2 and 3 plus the closing edge."""
    g0 = KGraph.build(4, [2, 1, 3], [(0, 1), (1, 2), (0, 2)])
    f = (Disconnect(2, 3), Add(4), CB(3, 4, 2), R(3, 1), R(4, 3), CB(2, 3, 2))
    return FamilySpec("iterative", 4, g0, f, name="cycle",
                      vertex_count=lambda n: n + 3, edge_count=lambda n: n + 3)


def clique_family() -> FamilySpec:
    g0 = KGraph.build(2, [1])
    f = (Add(2), Connect(1, 2), R(2, 1))
    return FamilySpec("iterative", 2, g0, f, name="clique",
                      vertex_count=lambda n: n + 1, edge_count=lambda n: _tri(n))


def wheel_family() -> FamilySpec:
    """Hub (label 5) joined to every vertex of C_{n+3}."""
    g0 = KGraph.build(5, [2, 1, 3, 5], [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)])
    f = (Disconnect(2, 3), Add(4), CB(3, 4, 2), CB(4, 5, 2), R(3, 1), R(4, 3), CB(2, 3, 2))
    return FamilySpec("iterative", 5, g0, f, name="wheel",
                      vertex_count=lambda n: n + 4, edge_count=lambda n: 2 * (n + 3))


def complete_bipartite_family() -> FamilySpec:
    """K_{n+1,n+1} with sides labeled 1 and 2."""
    g0 = KGraph.build(4, [1, 2], [(0, 1)])
    f = (Add(3), Add(4), Connect(1, 4), Connect(2, 3), Connect(3, 4), R(3, 1), R(4, 2))
    return FamilySpec("iterative", 4, g0, f, name="complete_bipartite",
                      vertex_count=lambda n: 2 * n + 2, edge_count=lambda n: (n + 1) ** 2)


def prism_family() -> FamilySpec:
    """C_{n+3} x K_2: two cycles (ends 2,3 and 4,5) with a perfect matching."""
    g0 = KGraph.build(7, [2, 1, 3, 4, 1, 5],
                      [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    f = (Disconnect(2, 3), Disconnect(4, 5),
         Add(6), CB(3, 6, 2), Add(7), CB(5, 7, 2), CB(6, 7, 2),
         R(3, 1), R(5, 1), R(6, 3), R(7, 5), CB(2, 3, 2), CB(4, 5, 2))
    return FamilySpec("iterative", 7, g0, f, name="prism",
                      vertex_count=lambda n: 2 * (n + 3), edge_count=lambda n: 3 * (n + 3))


def g1_family() -> FamilySpec:
    """Cycles of sizes 3, 4, ... sharing the hub vertex (label 2)."""
    g0 = KGraph.build(4, [2])
    l = (Add(3), CB(2, 3, 2))
    f = (Add(4), CB(3, 4, 2), R(3, 1), R(4, 3))
    h = (Add(4), CB(3, 4, 2), CB(2, 4, 2), R(3, 1), R(4, 1))
    return FamilySpec("bi", 4, g0, f, h, l, name="G1",
                      vertex_count=lambda n: 1 + sum(m + 1 for m in range(1, n + 1)),
                      edge_count=lambda n: sum(m + 2 for m in range(1, n + 1)))


def g2_family() -> FamilySpec:
    """Path on n+1 vertices; vertex i carries a clique of size i.

    Label 2 is the current path end, 5 collects the clique under
    construction.
    """
    g0 = KGraph.build(5, [2])
    l = (Add(3), CB(2, 3, 2), R(2, 1), R(3, 2))
    f = (Add(4), Connect(4, 5), CB(2, 4, 2), R(4, 5))
    h = f + (R(5, 1),)
    return FamilySpec("bi", 5, g0, f, h, l, name="G2",
                      vertex_count=lambda n: (n + 1) * (n + 2) // 2,
                      edge_count=lambda n: n + (n + 2) * (n + 1) * n // 6)


def g3_family() -> FamilySpec:
    """Step n adds n+1 vertices joined to all vertices added in step n-1."""
    g0 = KGraph.build(3, [2])
    l = (Add(3),)
    f = (Add(3),)
    h = (Add(3), Connect(2, 3), R(2, 1), R(3, 2))
    return FamilySpec("bi", 3, g0, f, h, l, name="G3",
                      vertex_count=lambda n: 1 + sum(m + 1 for m in range(1, n + 1)),
                      edge_count=lambda n: sum(m * (m + 1) for m in range(1, n + 1)))


def g4_family() -> FamilySpec:
    """Triangle, then at step m a path P_{m+2} joined to the ends 2 and 3."""
    g0 = KGraph.build(6, [1, 2, 3], [(0, 1), (1, 2), (0, 2)])
    l = (Add(4), CB(2, 4, 2), R(2, 1), Add(5), CB(4, 5, 2))
    f = (Add(6), CB(5, 6, 2), R(5, 1), R(6, 5))
    h = (Add(6), CB(5, 6, 2), R(5, 1), CB(3, 6, 2), R(3, 1), R(4, 2), R(6, 3))
    return FamilySpec("bi", 6, g0, f, h, l, name="G4",
                      vertex_count=lambda n: 3 + sum(m + 2 for m in range(1, n + 1)),
                      edge_count=lambda n: 3 + sum(m + 3 for m in range(1, n + 1)))


def g5_family() -> FamilySpec:
    """Two G4-style chains grown from two triangles glued along an edge.

    Chain A keeps its ends on labels 2,3 and chain B on 4,5.  At the first
    step B has no ends of its own yet and must attach to the shared edge;
    the bounded connects after merging B's end label into A's only fire
    when the merged class is a single vertex, which happens exactly then.
    """
    g0 = KGraph.build(11, [2, 3, 1, 1], [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    l = (Add(6), CB(2, 6, 2),
         Add(8), CB(4, 8, 2), R(4, 2), CB(2, 8, 2), R(2, 1),
         Add(7), CB(6, 7, 2), Add(9), CB(8, 9, 2))
    f = (Add(10), CB(7, 10, 2), R(7, 1), R(10, 7),
         Add(10), CB(9, 10, 2), R(9, 1), R(10, 9))
    h = (Add(10), CB(7, 10, 2), R(7, 1), CB(3, 10, 2),
         Add(11), CB(9, 11, 2), R(9, 1), CB(5, 11, 2), R(5, 3), CB(3, 11, 2), R(3, 1),
         R(6, 2), R(10, 3), R(8, 4), R(11, 5))
    return FamilySpec("bi", 11, g0, f, h, l, name="G5",
                      vertex_count=lambda n: 4 + sum(2 * (m + 2) for m in range(1, n + 1)),
                      edge_count=lambda n: 5 + sum(2 * (m + 3) for m in range(1, n + 1)))


def g6_family() -> FamilySpec:
    """Triangle 2,3,4; step m adds C_{3m+3} whose corners 5,6,7 are
    m apart and joined to 2,3,4."""
    g0 = KGraph.build(11, [2, 3, 4], [(0, 1), (1, 2), (0, 2)])
    old, new, tail = (2, 3, 4), (5, 6, 7), (8, 9, 10)
    return _corner_ring("G6", 11, g0, old, new, tail, 11, per_f=1, h_adds=False,
                        vc=lambda n: 3 + sum(3 * m + 3 for m in range(1, n + 1)),
                        ec=lambda n: 3 + sum(3 * m + 6 for m in range(1, n + 1)))


def g7_family() -> FamilySpec:
    """4-cycle 2,3,4,5; step m adds C_{8m+4} whose corners are 2m apart."""
    g0 = KGraph.build(14, [2, 3, 4, 5], [(0, 1), (1, 2), (2, 3), (0, 3)])
    old, new, tail = (2, 3, 4, 5), (6, 7, 8, 9), (10, 11, 12, 13)
    return _corner_ring("G7", 14, g0, old, new, tail, 14, per_f=2, h_adds=True,
                        vc=lambda n: 4 + sum(8 * m + 4 for m in range(1, n + 1)),
                        ec=lambda n: 4 + sum(8 * m + 8 for m in range(1, n + 1)))


def _corner_ring(name, k, g0, old, new, tail, scratch, per_f, h_adds, vc, ec) -> FamilySpec:
    """New cycle whose corners `new` are joined to the previous corners `old`.

    Each gap between consecutive corners grows from a tail vertex: L adds
    one vertex, every F adds `per_f`, and H adds one more if `h_adds`.
    """
    c = len(old)
    l = []
    for o, w in zip(old, new):
        l += [Add(w), CB(o, w, 2)]
    l += [R(o, 1) for o in old]
    for i in range(c):
        l += [Add(tail[i]), CB(new[i], tail[i], 2)]
    f = []
    for _ in range(per_f):
        for t in tail:
            f += [Add(scratch), CB(t, scratch, 2), R(t, 1), R(scratch, t)]
    h = []
    for i, t in enumerate(tail):
        if h_adds:
            h += [Add(scratch), CB(t, scratch, 2), R(t, 1), R(scratch, t)]
        h += [CB(t, new[(i + 1) % c], 2), R(t, 1)]
    h += [R(w, o) for o, w in zip(old, new)]
    return FamilySpec("bi", k, g0, tuple(f), tuple(h), tuple(l), name=name,
                      vertex_count=vc, edge_count=ec)


def grid_graph(rows: int, cols: int) -> KGraph:
    """Plain rows x cols grid.  Not bi-iterative (unbounded clique-width)."""
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    return KGraph.build(1, [1] * (rows * cols), edges)


_BUILDERS = {
    "path": path_family, "cycle": cycle_family, "clique": clique_family,
    "wheel": wheel_family, "complete_bipartite": complete_bipartite_family,
    "prism": prism_family,
    "G1": g1_family, "G2": g2_family, "G3": g3_family, "G4": g4_family,
    "G5": g5_family, "G6": g6_family, "G7": g7_family,
}

# members of the catalog that are not bi-iterative
NON_BI_ITERATIVE = {"grid": "square grid n x n; unbounded clique-width"}


def builtin_catalog() -> Dict[str, FamilySpec]:
    return {name: fn() for name, fn in _BUILDERS.items()}


def get_family(name: str) -> FamilySpec:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(_BUILDERS)}") from None


def family_names() -> List[str]:
    return list(_BUILDERS)


__all__ = ["builtin_catalog", "get_family", "family_names", "grid_graph", "NON_BI_ITERATIVE"] + \
    [fn.__name__ for fn in _BUILDERS.values()]
