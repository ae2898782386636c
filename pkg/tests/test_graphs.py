"""Encodings, the quadratic-extension lift, isomorphism, canonical forms,
and the graph file format."""

import random

import numpy as np
import pytest

from rankw.cutrank import CutFunction
from rankw.fields import (field_extend_quadratic, field_make,
                          sigma_frobenius_conj, sigma_identity)
from rankw.graphs import (ColoredGraph, GraphError, SigmaGraph, digraph_gf2,
                          emit_dot, emit_graph, encode_directed,
                          encode_oriented, encode_undirected,
                          is_sigma_symmetric, isomorphic, parse_graph, tilde)
from rankw.selfcheck import random_colored_graph, random_sigma_graph


def c5():
    return encode_undirected([(i, (i + 1) % 5) for i in range(5)])


def test_encode_undirected():
    K3 = encode_undirected([(0, 1), (1, 2), (0, 2)])
    assert K3.adj.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    empty = encode_undirected([], vertices=range(4))
    assert not empty.adj.any()
    C = c5()
    deg = (C.adj != 0).sum(axis=0)
    assert list(deg) == [2] * 5
    with pytest.raises(GraphError):
        encode_undirected([(0, 0)])


def test_encode_directed():
    D = encode_directed([("x", "y")])
    assert D.field.q == 4
    assert D.adj.tolist() == [[0, 2], [3, 0]]     # a forward, a^2 back
    B = encode_directed([("x", "y"), ("y", "x")])
    assert B.adj.tolist() == [[0, 1], [1, 0]]
    with pytest.raises(GraphError):
        encode_directed([("x", "x")])


def test_encode_oriented():
    T = encode_oriented([(0, 1), (1, 2), (2, 0)])
    assert T.field.q == 3
    assert T.adj.tolist() == [[0, 1, 2], [2, 0, 1], [1, 2, 0]]
    assert not encode_oriented([], vertices=range(3)).adj.any()
    with pytest.raises(GraphError):
        encode_oriented([(0, 1), (1, 0)])


def test_sigma_symmetry_checks():
    G = c5()
    assert is_sigma_symmetric(G, sigma_identity(field_make(2, 1)))
    F4 = field_make(2, 2)
    s4 = sigma_frobenius_conj(F4)
    ok = ColoredGraph(F4, "xy", [[0, 2], [3, 0]])
    assert is_sigma_symmetric(ok, s4)
    bad = ColoredGraph(F4, "xy", [[0, 2], [2, 0]])
    assert not is_sigma_symmetric(bad, s4)
    with pytest.raises(GraphError):
        SigmaGraph(F4, "xy", [[0, 2], [2, 0]], s4)


def test_tilde_single_arc():
    G = digraph_gf2([("x", "y")])
    T = tilde(G)
    e = field_extend_quadratic(field_make(2, 1))
    assert T.adj[0, 1] == e.gamma and T.adj[1, 0] == e.tau
    B = tilde(digraph_gf2([("x", "y"), ("y", "x")]))
    assert B.adj.tolist() == [[0, 1], [1, 0]]


def test_tilde_symmetric_input_stays_binary():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randrange(1, 7)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        G = encode_undirected(edges, vertices=range(n))
        T = tilde(G.drop_sigma())
        assert set(np.unique(T.adj)) <= {0, 1}
        assert np.array_equal(T.adj, G.adj)


def test_tilde_sigma_symmetric_random():
    rng = random.Random(1)
    for _ in range(200):
        F = field_make(*rng.choice([(2, 1), (3, 1)]))
        G = random_colored_graph(rng, F, rng.randrange(1, 9))
        T = tilde(G)
        assert is_sigma_symmetric(T, field_extend_quadratic(F).sigma_tilde)


def test_tilde_bijective_and_iso_preserving():
    rng = random.Random(2)
    F3 = field_make(3, 1)
    seen = {}
    for _ in range(60):
        G = random_colored_graph(rng, F3, 4)
        T = tilde(G)
        key = T.adj.tobytes()
        if key in seen:
            assert np.array_equal(seen[key].adj, G.adj)
        seen[key] = G
    for _ in range(30):
        G = random_colored_graph(rng, F3, rng.randrange(1, 6))
        perm = list(range(G.n))
        rng.shuffle(perm)
        H = G.permuted([G.vertices[i] for i in perm]).relabel(
            {v: f"w{v}" for v in G.vertices})
        assert (isomorphic(G, H) is not None) == \
            (isomorphic(tilde(G), tilde(H)) is not None)


def test_directed_encoding_is_tilde_conjugate():
    """Section-3.4 table output = entrywise a <-> a^2 image of the lift;
    cut-ranks agree on every cut."""
    rng = random.Random(3)
    s4 = sigma_frobenius_conj(field_make(2, 2))
    for _ in range(30):
        n = rng.randrange(2, 7)
        arcs = [(i, j) for i in range(n) for j in range(n)
                if i != j and rng.random() < 0.4]
        T = tilde(digraph_gf2(arcs, vertices=range(n)))
        D = encode_directed(arcs, vertices=range(n))
        assert np.array_equal(s4.np_table[T.adj], D.adj)
        fT, fD = CutFunction(T, "cutrk"), CutFunction(D, "cutrk")
        assert all(fT(X) == fD(X) for X in range(1 << n))


def test_bidirected_embedding_preserves_rankwidth():
    """An undirected graph embedded as a bidirected digraph has the same
    rank-width over GF(4) as over GF(2) (binary entries, rank is
    field-extension invariant)."""
    from rankw.layouts import rankwidth
    rng = random.Random(7)
    for _ in range(15):
        n = rng.randrange(2, 6)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        G = encode_undirected(edges, vertices=range(n))
        arcs = [(u, v) for u, v in edges] + [(v, u) for u, v in edges]
        D = encode_directed(arcs, vertices=range(n))
        assert set(np.unique(D.adj)) <= {0, 1}
        assert rankwidth(D).width == rankwidth(G).width


def test_induced_subgraph():
    K4 = encode_undirected([(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert K4.induced_subgraph(K4.vertices) == K4
    assert K4.induced_subgraph([]).n == 0
    K3 = K4.induced_subgraph([0, 1, 2])
    assert K3.adj.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert isinstance(K3, SigmaGraph)
    with pytest.raises(GraphError):
        K4.induced_subgraph([9])


def test_isomorphic_examples():
    C = c5()
    assert isomorphic(C, C) is not None
    P5 = encode_undirected([(i, i + 1) for i in range(4)], vertices=range(5))
    assert isomorphic(C, P5) is None
    D1 = encode_directed([("x", "y")])
    D2 = encode_directed([("y", "x")], vertices=("x", "y"))
    m = isomorphic(D1, D2)
    assert m == {"x": "y", "y": "x"}
    with pytest.raises(GraphError):
        isomorphic(C, encode_oriented([(0, 1)]))


def test_isomorphic_preserves_colors():
    rng = random.Random(4)
    for _ in range(60):
        F = field_make(*rng.choice([(2, 1), (3, 1), (2, 2)]))
        G = random_colored_graph(rng, F, rng.randrange(1, 7))
        perm = list(G.vertices)
        rng.shuffle(perm)
        H = G.permuted(perm).relabel({v: f"w{v}" for v in G.vertices})
        m = isomorphic(G, H)
        assert m is not None
        for u in G.vertices:
            for v in G.vertices:
                if u != v:
                    assert G.color(u, v) == H.color(m[u], m[v])


def test_canonical_form():
    rng = random.Random(5)
    C = c5()
    P5 = encode_undirected([(i, i + 1) for i in range(4)], vertices=range(5))
    assert C.canonical_form() != P5.canonical_form()
    assert C.canonical_form() == c5().canonical_form()  # stable across builds
    for _ in range(100):
        F = field_make(*rng.choice([(2, 1), (3, 1), (2, 2)]))
        G = random_colored_graph(rng, F, rng.randrange(1, 8))
        perm = list(G.vertices)
        rng.shuffle(perm)
        assert G.permuted(perm).canonical_form() == G.canonical_form()


def test_canonical_form_larger_graphs_use_refinement():
    rng = random.Random(6)
    for _ in range(10):
        n = 8
        F = field_make(2, 1)
        s = sigma_identity(F)
        G = random_sigma_graph(rng, F, s, n)
        perm = list(G.vertices)
        rng.shuffle(perm)
        assert G.permuted(perm).canonical_form() == G.canonical_form()


def test_canonical_size_bound():
    G = encode_undirected([(i, (i + 1) % 13) for i in range(13)])
    with pytest.raises(GraphError):
        G.canonical_form()


def test_components():
    G = encode_undirected([(0, 1), (2, 3), (3, 4)], vertices=range(6))
    assert G.components() == [(0, 1), (2, 3, 4), (5,)]
    assert not G.is_connected()
    assert digraph_gf2([(0, 1)], vertices=range(2)).is_connected()


def test_graph_file_roundtrip():
    for G in (c5(), encode_directed([("x", "y"), ("y", "z")]),
              encode_oriented([(0, 1), (1, 2)]),
              digraph_gf2([("a", "b")])):
        H = parse_graph(emit_graph(G))
        assert tuple(map(str, G.vertices)) == H.vertices
        assert np.array_equal(G.adj, H.adj)
        assert isinstance(H, SigmaGraph) == isinstance(G, SigmaGraph)


def test_graph_file_features_and_errors():
    text = """
    # a two-vertex GF(4) graph
    field 2 2
    sigma frob-inv
    vertices x y
    edge x y 2   # overwritten below
    edge x y 1
    edge y x 1
    """
    G = parse_graph(text)
    assert G.adj.tolist() == [[0, 1], [1, 0]]
    with pytest.raises(GraphError):
        parse_graph("vertices a b")
    with pytest.raises(GraphError):
        parse_graph("field 2 1\nvertices a b\nedge a c 1")
    with pytest.raises(GraphError):
        parse_graph("field 2 1\nvertices a b\nedge a a 1")
    with pytest.raises(GraphError):
        # missing back edge of color -1: not sigma-symmetric
        parse_graph("field 3 1\nsigma neg\nvertices a b\nedge a b 1\n")


def test_emit_dot():
    dot = emit_dot(encode_directed([("x", "y")]))
    assert '"x" -> "y" [label="2"]' in dot
    assert dot.startswith("digraph")
