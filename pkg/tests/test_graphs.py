import json
from math import comb

import pytest
from hypothesis import given, strategies as st

from c2finite.catalog import NON_BI_ITERATIVE, builtin_catalog, family_names, get_family, grid_graph
from c2finite.graphpoly import dichromatic_bruteforce, independence_poly_bruteforce
from c2finite.graphs import (Add, Connect, ConnectBounded, Disconnect, FamilySpec, KGraph, LabelError,
                             Relabel, analyze_spec, apply_elementary, disjoint_union, export_graph,
                             iterative_to_bi, materialize, materialize_all, op_from_json, op_to_json,
                             quadratic_reindex)


def degrees(n, edges):
    d = [0] * n
    for u, v in edges:
        d[u] += 1
        d[v] += 1
    return sorted(d)


def direct_g2(n):
    """Path v_0..v_n where v_i sits in a clique with i extra vertices."""
    edges, nv = [], n + 1
    for i in range(n):
        edges.append((i, i + 1))
    for i in range(n + 1):
        members = [i] + list(range(nv, nv + i))
        nv += i
        edges += [(a, b) for x, a in enumerate(members) for b in members[x + 1:]]
    return nv, edges


def direct_g4(n):
    """Triangle; step m glues a path on m+2 vertices between the two current ends."""
    edges = [(0, 1), (1, 2), (0, 2)]
    s, t, nv = 1, 2, 3
    for m in range(1, n + 1):
        p = list(range(nv, nv + m + 2))
        nv += m + 2
        edges += [(s, p[0]), (p[-1], t)] + list(zip(p, p[1:]))
        s, t = p[0], p[-1]
    return nv, edges


# --- basic operations -------------------------------------------------------

def test_basic_operation_semantics():
    g = apply_elementary(KGraph.empty(3), [Add(1), Add(2), Add(2), Connect(1, 2)])
    assert g.labels == (1, 2, 2) and g.sorted_edges() == [(0, 1), (0, 2)]
    g2 = apply_elementary(g, [Relabel(2, 3)])
    assert g2.label_class(2) == [] and g2.label_class(3) == [1, 2]
    g3 = apply_elementary(g2, [Disconnect(1, 3)])
    assert g3.num_edges == 0 and g3.labels == g2.labels


def test_connect_within_one_label_makes_a_clique():
    g = apply_elementary(KGraph.empty(1), [Add(1)] * 4 + [Connect(1, 1)])
    assert g.num_edges == 6


def test_bounded_connect_is_noop_above_bound():
    base = apply_elementary(KGraph.empty(2), [Add(1), Add(1), Add(2)])
    assert apply_elementary(base, [ConnectBounded(1, 2, 2)]).num_edges == 0
    assert apply_elementary(base, [ConnectBounded(1, 2, 3)]).num_edges == 2
    assert apply_elementary(base, [Connect(1, 2)]).num_edges == 2


def test_label_errors():
    with pytest.raises(LabelError):
        apply_elementary(KGraph.empty(2), [Add(3)])
    with pytest.raises(LabelError):
        KGraph.build(2, [0])
    with pytest.raises(LabelError):
        FamilySpec("iterative", 2, KGraph.empty(2), (Connect(1, 5),))
    with pytest.raises(ValueError):
        KGraph.build(2, [1], [(0, 0)])


@given(st.sampled_from([Add(2), Relabel(1, 3), Connect(2, 2), ConnectBounded(1, 3, 4), Disconnect(3, 1)]))
def test_op_json_round_trip(op):
    assert op_from_json(json.loads(json.dumps(op_to_json(op)))) == op


# --- catalog ----------------------------------------------------------------

@pytest.mark.parametrize("name", family_names())
def test_catalog_counts(name):
    spec = get_family(name)
    for n, g in enumerate(materialize_all(spec, 8)):
        assert g.num_vertices == spec.vertex_count(n), (name, n)
        assert g.num_edges == spec.edge_count(n), (name, n)


@pytest.mark.parametrize("name", family_names())
def test_materialize_deterministic_and_incremental(name):
    spec = get_family(name)
    all_ = materialize_all(spec, 5)
    assert [materialize(spec, n) for n in range(6)] == all_
    assert materialize(spec, 4) == materialize(spec, 4)


@pytest.mark.parametrize("n", range(6))
def test_g2_matches_direct_construction(n):
    g = materialize(get_family("G2"), n)
    nv, edges = direct_g2(n)
    assert degrees(*g.underlying()) == degrees(nv, edges)
    assert independence_poly_bruteforce(g) == independence_poly_bruteforce((nv, edges))


@pytest.mark.parametrize("n", range(4))
def test_g4_matches_direct_construction(n):
    g = materialize(get_family("G4"), n)
    nv, edges = direct_g4(n)
    assert degrees(*g.underlying()) == degrees(nv, edges)
    if len(edges) <= 16:
        assert dichromatic_bruteforce(g) == dichromatic_bruteforce((nv, edges))


@pytest.mark.parametrize("n", range(8))
def test_simple_families_shape(n):
    path = materialize(get_family("path"), n)
    assert degrees(*path.underlying()) == ([0] if n == 0 else sorted([1, 1] + [2] * (n - 1)))
    cyc = materialize(get_family("cycle"), n)
    assert degrees(*cyc.underlying()) == [2] * (n + 3)
    cl = materialize(get_family("clique"), n)
    assert cl.num_edges == comb(n + 1, 2)


def test_analyze_spec_classification():
    bounded = {"path", "cycle", "wheel", "prism", "G1", "G4", "G5", "G6", "G7"}
    for name, spec in builtin_catalog().items():
        a = analyze_spec(spec)
        assert a.bounded == (name in bounded), name
        assert a.cliquewidth_bound == spec.k
        assert a.bounded == (not a.unbounded_ops)
        assert "G_" in a.witness


def test_grid_is_listed_as_not_bi_iterative():
    assert "grid" in NON_BI_ITERATIVE
    g = grid_graph(3, 4)
    assert g.num_vertices == 12 and g.num_edges == 17


# --- combinators ------------------------------------------------------------

@pytest.mark.parametrize("name", ["path", "cycle", "clique", "wheel"])
def test_iterative_to_bi_agrees(name):
    spec = get_family(name)
    bi = iterative_to_bi(spec)
    assert bi.kind == "bi"
    assert materialize_all(bi, 10) == materialize_all(spec, 10)


def test_quadratic_reindex_matches_direct_index():
    spec = get_family("path")
    q = quadratic_reindex(spec, 1, 0, 0)
    for n in range(7):
        assert materialize(q, n) == materialize(spec, comb(n, 2))
    q2 = quadratic_reindex(spec, 2, 1, 3)
    for n in range(5):
        assert materialize(q2, n) == materialize(spec, 2 * comb(n, 2) + n + 3)


def test_quadratic_reindex_rejects_bi():
    with pytest.raises(ValueError):
        quadratic_reindex(get_family("G4"), 1, 0, 0)


def test_disjoint_union():
    u = disjoint_union(get_family("path"), get_family("G4"))
    a, b = get_family("path"), get_family("G4")
    for n in range(5):
        g = materialize(u, n)
        assert g.num_vertices == materialize(a, n).num_vertices + materialize(b, n).num_vertices
        assert g.num_edges == materialize(a, n).num_edges + materialize(b, n).num_edges


# --- serialization ----------------------------------------------------------

@pytest.mark.parametrize("name", family_names())
def test_spec_json_round_trip(name):
    spec = get_family(name)
    back = FamilySpec.from_json(json.dumps(spec.to_json()))
    assert back == spec
    assert materialize(back, 3) == materialize(spec, 3)


def test_graph_json_and_export():
    g = materialize(get_family("G4"), 1)
    assert KGraph.from_json(g.to_json()) == g
    el = export_graph(g, "edge_list").splitlines()
    assert el[0] == "# vertices 6 edges 7" and len(el) == 8
    dot = export_graph(g, "dot")
    assert dot.startswith("graph G {") and dot.count("--") == 7 and "klabel=" in dot
    with pytest.raises(ValueError):
        export_graph(g, "svg")
