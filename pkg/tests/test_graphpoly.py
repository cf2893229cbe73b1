from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from c2finite.catalog import get_family
from c2finite.graphpoly import (OracleTooLarge, XY, chromatic_eval, count_acyclic_orientations,
                                count_colorings, dichromatic, dichromatic_bruteforce,
                                independence_poly, independence_poly_bruteforce, num_components,
                                path_graph, path_Z_split, poly_to_json, spanning_trees,
                                split_dichromatic_bruteforce, tutte)
from c2finite.graphs import materialize
from c2finite.rings import MPoly

X = MPoly.var(XY, "X")
Y = MPoly.var(XY, "Y")
x = MPoly.var(("x",), "x")


@st.composite
def graphs(draw, max_n=7, max_e=14):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_e)) if pairs else []
    return n, edges


def relabel(g, perm):
    n, edges = g
    return n, [(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges]


# --- small examples ---------------------------------------------------------

def test_small_examples():
    k2 = (2, [(0, 1)])
    k3 = (3, [(0, 1), (1, 2), (0, 2)])
    assert dichromatic(k2) == X * X + X * Y
    assert dichromatic(k3) == X ** 3 + 3 * X * X * Y + 3 * X * Y * Y + X * Y ** 3
    assert dichromatic((3, [])) == X ** 3
    assert tutte(k2) == X
    assert tutte(k3) == X * X + X + Y
    assert independence_poly(k3) == 1 + 3 * x
    assert independence_poly((3, [])) == (1 + x) ** 3
    assert spanning_trees(k3) == 3 and spanning_trees((4, [(0, 1), (1, 2), (2, 3), (0, 3)])) == 4


def test_empty_graph():
    assert dichromatic((0, [])) == MPoly.const(XY, 1)
    assert independence_poly((0, [])) == MPoly.const(("x",), 1)
    assert num_components((0, [])) == 0


def test_unknown_method():
    with pytest.raises(ValueError):
        dichromatic((2, [(0, 1)]), method="magic")


def test_oracle_limits():
    big = (25, [])
    with pytest.raises(OracleTooLarge):
        independence_poly_bruteforce(big)
    with pytest.raises(OracleTooLarge):
        count_colorings(big, 2)


# --- properties against brute force -----------------------------------------

@given(graphs())
def test_deletion_contraction_matches_subset_expansion(g):
    assert dichromatic(g) == dichromatic_bruteforce(g)


@given(graphs(max_n=10, max_e=20))
def test_independence_matches_bruteforce(g):
    assert independence_poly(g) == independence_poly_bruteforce(g)


@given(graphs(max_n=9, max_e=20))
def test_independence_invariants(g):
    n, edges = g
    p = independence_poly(g)
    assert p.eval({"x": 0}) == 1
    assert p.eval({"x": 1}) >= 1
    coeff1 = p.terms.get((1,), 0) if n else 0
    assert coeff1 == n
    coeff2 = p.terms.get((2,), 0)
    assert coeff2 == n * (n - 1) // 2 - len(edges)


@given(graphs(max_n=5), graphs(max_n=5))
def test_independence_multiplicative_over_disjoint_union(a, b):
    na, ea = a
    nb, eb = b
    u = (na + nb, ea + [(p + na, q + na) for p, q in eb])
    assert independence_poly(u) == independence_poly(a) * independence_poly(b)
    assert dichromatic(u) == dichromatic(a) * dichromatic(b)


@given(graphs())
def test_dichromatic_specializations(g):
    n, edges = g
    Z = dichromatic(g)
    assert Z.eval({"X": 1, "Y": 1}) == 2 ** len(edges)
    assert Z.eval({"X": 5, "Y": 0}) == 5 ** n
    assert Z.degree("X") == n


@settings(max_examples=30)
@given(graphs(max_n=6), st.integers(1, 3))
def test_chromatic_counts_colorings(g, q):
    assert chromatic_eval(g, q) == count_colorings(g, q)


@settings(max_examples=30)
@given(graphs(max_n=7, max_e=10))
def test_tutte_evaluations(g):
    T = tutte(g)
    n, edges = g
    comps = num_components(g)
    if comps <= 1:
        assert T.eval({"X": 1, "Y": 1}) == spanning_trees(g)
    assert T.eval({"X": 2, "Y": 1}) >= 1
    # |chi(-1)| counts acyclic orientations
    assert abs(chromatic_eval(g, -1)) == count_acyclic_orientations(g)


@given(graphs(), st.randoms(use_true_random=False))
def test_invariant_under_vertex_permutation(g, rnd):
    perm = list(range(g[0]))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    assert dichromatic(h) == dichromatic(g)
    assert independence_poly(h) == independence_poly(g)


# --- split polynomials ------------------------------------------------------

@pytest.mark.parametrize("m", range(1, 7))
def test_path_split_matches_bruteforce(m):
    z0, z1 = path_Z_split(m)
    assert (z0, z1) == split_dichromatic_bruteforce(path_graph(m), 0, m - 1)
    assert z0 + z1 == dichromatic(path_graph(m))


def test_path_split_rejects_empty():
    with pytest.raises(ValueError):
        path_Z_split(0)


def test_family_members_agree_across_methods():
    for name in ("G1", "G4", "G5", "wheel"):
        spec = get_family(name)
        for n in range(3):
            g = materialize(spec, n)
            if g.num_edges <= 16:
                assert dichromatic(g) == dichromatic_bruteforce(g), (name, n)


def test_poly_json():
    d = poly_to_json(X * X + 2 * X * Y)
    assert d["vars"] == list(XY)
